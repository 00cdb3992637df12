#pragma once

#include <vector>

#include "seqdisc/channels.hpp"
#include "seqdisc/discrimination.hpp"

namespace seqdisc {

/// Extreme point of the set of two-outcome qubit instruments: either a
/// projective spin measurement along a direction (sign +1 assigns the +n
/// projector to outcome 0) or the trivial instrument that always announces
/// one fixed outcome and leaves the state untouched.
struct ExtremeInstrument {
  enum class Kind { kSpin, kTrivial };

  Kind kind = Kind::kSpin;
  RVector3 direction{0.0, 0.0, 1.0};  // spin only
  int sign = 1;                       // spin only, +1 or -1
  int outcome = 0;                    // trivial only

  Instrument to_instrument() const;
};

/// Result of the two-receiver optimization under depolarizing noise.
struct NoisyOptimum {
  /// Which branch of the maximum wins: the rescaled distinguishability term
  /// or the best blind guess.
  enum class Regime { kHelstromLike, kTrivial };

  double value = 0.0;
  ExtremeInstrument maximizer;
  Regime regime = Regime::kHelstromLike;
  /// Second-stage noise level at which the winning regime flips.
  double gamma2_regime_threshold = 0.0;
  /// Second-stage noise level at which the two branch values cross;
  /// never exceeds gamma2_regime_threshold.
  double gamma2_value_threshold = 0.0;
};

/// Success probability of a (possibly noisy) protocol, evaluated through all
/// three representations; throws if they disagree beyond 1e-10.
double noisy_success(const Protocol& protocol, const Ensemble& ensemble);

/// Upper bound on the success of any two-receiver protocol with first
/// receiver m1, noise l1 before it and l2 before the second receiver:
/// (P_1 + sum_{i<j} ||l2[q_i m1(i)[l1[rho_i]] - q_j m1(j)[l1[rho_j]]]||_1)/r
/// where P_1 is the first-stage success. Tight for r = 2.
double noisy_two_seq_upper_bound(const Ensemble& ensemble, const Channel& l1,
                                 const Channel& l2, const Instrument& m1);

/// Best single-receiver success for two qubit hypotheses seen through a
/// depolarizing channel of strength gamma1:
/// max(1/2 + (1 - gamma1) ||q_1 r_1 - q_2 r_2|| / 2, max q).
double one_receiver_depolarizing_optimum(const Ensemble& ensemble,
                                         double gamma1);

/// Closed-form optimum over all two-receiver protocols for two qubit
/// hypotheses with depolarizing strengths gamma1 (before receiver 1) and
/// gamma2 (before receiver 2):
/// max((1 - gamma2/2)(1/2 + (1 - gamma1) ||q_1 r_1 - q_2 r_2|| / 2), max q).
NoisyOptimum two_seq_depolarizing_closed(const Ensemble& ensemble,
                                         double gamma1, double gamma2);

/// Brute-force counterpart of the closed form: maximizes the two-receiver
/// objective over the trivial instruments and spin instruments on a
/// Fibonacci-sphere grid of the given size, optionally augmented with the
/// analytically optimal directions +-n_plus.
NoisyOptimum two_seq_depolarizing_numeric(const Ensemble& ensemble,
                                          double gamma1, double gamma2,
                                          int grid_size,
                                          bool include_analytic = true);

/// Deterministic quasi-uniform unit directions (Fibonacci spiral), n >= 2.
std::vector<RVector3> fibonacci_sphere(int n);

}  // namespace seqdisc
