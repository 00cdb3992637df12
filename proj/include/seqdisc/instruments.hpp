#pragma once

#include <span>
#include <vector>

#include "seqdisc/linalg.hpp"
#include "seqdisc/states.hpp"

namespace seqdisc {

/// Quantum instrument in Kraus form. Outcome omega in {0, ..., r-1} acts as
/// the (trace non-increasing) map T -> sum_l K_l(omega) T K_l(omega)^dagger,
/// with the completeness relation sum_{omega,l} K^dagger K = I.
class Instrument {
 public:
  Instrument(int dim, std::vector<std::vector<CMatrix>> kraus);

  /// Single-outcome instrument whose only operation is the identity map.
  static Instrument identity(int dim);

  int dim() const { return dim_; }
  int num_outcomes() const { return static_cast<int>(kraus_.size()); }
  const std::vector<CMatrix>& kraus(int outcome) const;

  /// Unnormalized outcome map sum_l K_l(outcome) T K_l(outcome)^dagger,
  /// defined on arbitrary operators.
  CMatrix apply(int outcome, const CMatrix& operand) const;

 private:
  int dim_;
  std::vector<std::vector<CMatrix>> kraus_;
};

/// Positive operator-valued measure induced by an instrument,
/// M(omega) = sum_l K_l(omega)^dagger K_l(omega).
struct POVM {
  int dim = 0;
  std::vector<CMatrix> elements;
};

POVM povm_of(const Instrument& instrument);

/// Outcome probability tr(rho M(omega)).
double outcome_probability(const Instrument& instrument, int outcome,
                           const DensityOperator& rho);

/// Normalized post-measurement state for the given outcome. Throws
/// ZeroProbabilityOutcome when the outcome probability is <= kProbFloor.
DensityOperator posterior(const Instrument& instrument, int outcome,
                          const DensityOperator& rho);

/// Projective (Lueders) instrument T -> P(omega) T P(omega) built from a
/// complete family of mutually orthogonal projectors.
Instrument luders_from_projectors(const std::vector<CMatrix>& projectors);

/// Chain of instruments applied in order, addressed by outcome tuples.
/// Stage n acts on the (unnormalized) output of stage n-1.
class SequentialInstrument {
 public:
  explicit SequentialInstrument(std::vector<Instrument> stages);

  int num_stages() const { return static_cast<int>(stages_.size()); }
  int dim() const { return stages_[0].dim(); }
  int num_outcomes() const { return stages_[0].num_outcomes(); }
  const std::vector<Instrument>& stages() const { return stages_; }

  /// Unnormalized composite map for one outcome tuple (one entry per stage).
  CMatrix apply(std::span<const int> outcomes, const CMatrix& operand) const;

  /// Probability of the outcome tuple, tr of the composite map output.
  double probability(std::span<const int> outcomes,
                     const DensityOperator& rho) const;

 private:
  std::vector<Instrument> stages_;
};

SequentialInstrument compose_sequential(std::vector<Instrument> stages);

/// Indirect-measurement realization of an instrument: ancilla space with
/// initial state sigma, a complete family of mutually orthogonal ancilla
/// projections P(omega), and a unitary U on system (x) ancilla. The induced
/// instrument is
///   M(omega)[rho] = tr_anc{ (I (x) P(omega)) U (rho (x) sigma) U^dag
///                           (I (x) P(omega)) }.
class StatisticalRealization {
 public:
  StatisticalRealization(int system_dim, DensityOperator ancilla_state,
                         std::vector<CMatrix> projections, CMatrix unitary);

  int system_dim() const { return system_dim_; }
  int ancilla_dim() const { return ancilla_state_.dim(); }
  int num_outcomes() const { return static_cast<int>(projections_.size()); }
  const DensityOperator& ancilla_state() const { return ancilla_state_; }
  const std::vector<CMatrix>& projections() const { return projections_; }
  const CMatrix& unitary() const { return unitary_; }

 private:
  int system_dim_;
  DensityOperator ancilla_state_;
  std::vector<CMatrix> projections_;
  CMatrix unitary_;
};

/// Kraus form of the instrument induced by a realization, via
/// K_{k,m}(omega) = sqrt(s_m) (I (x) <e_k|) (I (x) P(omega)) U (I (x) |u_m>)
/// over the spectral decomposition sigma = sum_m s_m |u_m><u_m|.
Instrument instrument_from_realization(const StatisticalRealization& xi);

/// Rank-one Kraus extraction K(omega) = <xi_omega| U |b> for realizations
/// with a pure ancilla state |b> and rank-one projections |xi_omega><xi_omega|.
/// Throws NotPureDilation otherwise.
std::vector<CMatrix> kraus_from_dilation(const StatisticalRealization& xi);

}  // namespace seqdisc
