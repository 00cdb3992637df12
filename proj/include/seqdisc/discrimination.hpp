#pragma once

#include <utility>
#include <vector>

#include "seqdisc/channels.hpp"
#include "seqdisc/instruments.hpp"
#include "seqdisc/states.hpp"

namespace seqdisc {

/// Chain of N receivers measuring one after another. All receivers share the
/// outcome set {0, ..., r-1}; a run is conclusive when every receiver
/// announces the same hypothesis index. Optionally a noise channel precedes
/// each receiver (channels empty = noiseless, else one per receiver).
class Protocol {
 public:
  explicit Protocol(std::vector<Instrument> receivers);
  Protocol(std::vector<Instrument> receivers, std::vector<Channel> channels);

  const std::vector<Instrument>& receivers() const { return receivers_; }
  const std::vector<Channel>& channels() const { return channels_; }
  bool noisy() const { return !channels_.empty(); }
  int num_receivers() const { return static_cast<int>(receivers_.size()); }
  int dim() const { return receivers_[0].dim(); }
  int num_outcomes() const { return receivers_[0].num_outcomes(); }

 private:
  std::vector<Instrument> receivers_;
  std::vector<Channel> channels_;
};

/// Success probability together with its per-receiver factorization.
struct DiscriminationResult {
  double success_probability = 0.0;
  /// Stage factors whose product is the success probability.
  std::vector<double> stage_factors;
  /// Hypothesis weights before each receiver (row 0 = initial priors);
  /// each row sums to one unless the run dies out earlier.
  std::vector<std::vector<double>> updated_priors;
};

/// Success probability from the nested composite maps: sum over hypotheses j
/// of q_j times the probability that every receiver announces j.
double success_direct(const Protocol& protocol, const Ensemble& ensemble);

/// Same value computed as a chain of normalized posteriors; branches whose
/// probability falls to the floor contribute zero.
double success_chain(const Protocol& protocol, const Ensemble& ensemble);

/// Same value computed as a product of per-stage success factors with
/// explicitly updated hypothesis weights.
DiscriminationResult success_product(const Protocol& protocol,
                                     const Ensemble& ensemble);

/// Optimal two-hypothesis single-shot success
/// (1 + ||q_1 rho_1 - q_2 rho_2||_1) / 2.
double helstrom_bound(const Ensemble& ensemble);

/// Upper bound for r >= 2 hypotheses:
/// (1 + sum_{i<j} ||q_i rho_i - q_j rho_j||_1) / r.
double multi_state_upper_bound(const Ensemble& ensemble);

/// Spectral projector pair of q_1 rho_1 - q_2 rho_2: first onto the strictly
/// positive part, second its complement.
std::pair<CMatrix, CMatrix> optimal_projectors(const Ensemble& ensemble);

/// N-receiver protocol saturating the two-hypothesis bound: every receiver
/// measures the projector pair of optimal_projectors.
Protocol optimal_two_state_protocol(const Ensemble& ensemble, int n_receivers);

/// Rotated variant: the first receiver uses the rank-one Kraus operators
/// sum_i |phi_i(j)><v_i(j)| built from the supplied orthonormal basis (the
/// columns of `basis`, split by the rank of the positive projector), and
/// later receivers measure the rotated projector pair. Requires both
/// spectral projectors to be nonzero.
Protocol optimal_two_state_protocol(const Ensemble& ensemble, int n_receivers,
                                    const CMatrix& basis);

/// Builds the N-receiver protocol from first-receiver Kraus operators K(j)
/// and a projector family P(j) for the later receivers, after verifying the
/// repeatability condition K(j)^dag P(j) K(j) = K(j)^dag K(j): every
/// announced outcome is confirmed with certainty downstream, which makes the
/// success independent of N.
Protocol repeatable_receiver_protocol(const std::vector<CMatrix>& kraus,
                           const std::vector<CMatrix>& projectors,
                           int n_receivers);

/// Indirect-measurement realization of the projective optimal receiver: a
/// qubit ancilla prepared in |b>, measured in {|b><b|, I - |b><b|}, coupled
/// by the controlled flip U = P1 (x) I + P2 (x) (|b_perp><b| + |b><b_perp|).
StatisticalRealization indirect_realization_for_optimal(const CMatrix& p1,
                                                        const CMatrix& p2);
StatisticalRealization indirect_realization_for_optimal(
    const CMatrix& p1, const CMatrix& p2, const CVector& ancilla_ket);

}  // namespace seqdisc
