#include "seqdisc/noisy_opt.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "seqdisc/errors.hpp"

namespace seqdisc {

namespace {

void check_qubit_pair(const Ensemble& ensemble, const char* what) {
  if (ensemble.size() != 2) {
    throw WrongArity(std::string(what) + " requires exactly two hypotheses");
  }
  if (ensemble.dim() != 2) {
    throw DimensionError(std::string(what) + " requires qubit hypotheses");
  }
}

void check_strength(double gamma, const char* name) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw InvalidParameter(std::string(name) + " = " + std::to_string(gamma) +
                           " outside [0, 1]");
  }
}

/// Scalars of the two-qubit-hypothesis problem under first-stage noise.
struct PairGeometry {
  RVector3 n_plus{0.0, 0.0, 1.0};  // direction of q_0 r_0 - q_1 r_1
  double p_plus = 0.0;             // first-stage success along n_plus
  double a_plus = 0.0;             // q_0-term of p_plus
  double b_plus = 0.0;             // q_1-term of p_plus
};

PairGeometry pair_geometry(const Ensemble& ensemble, double gamma1) {
  const RVector3 r0 = bloch_from_qubit(ensemble.states()[0]);
  const RVector3 r1 = bloch_from_qubit(ensemble.states()[1]);
  const double q0 = ensemble.priors()[0];
  const double q1 = ensemble.priors()[1];
  const RVector3 w = q0 * r0 - q1 * r1;

  PairGeometry g;
  if (w.norm() > kTolFloor) g.n_plus = w / w.norm();
  const double shrink = 1.0 - gamma1;
  g.a_plus = q0 * 0.5 * (1.0 + shrink * r0.dot(g.n_plus));
  g.b_plus = q1 * 0.5 * (1.0 - shrink * r1.dot(g.n_plus));
  g.p_plus = g.a_plus + g.b_plus;
  return g;
}

void fill_thresholds(const PairGeometry& g, double q_max, NoisyOptimum* out) {
  out->gamma2_regime_threshold =
      2.0 * (1.0 - std::max(g.a_plus, g.b_plus) / g.p_plus);
  out->gamma2_value_threshold = 2.0 * (1.0 - q_max / g.p_plus);
}

/// Allocation-free evaluator of the two-receiver objective
/// (P_1 + ||l2[q_0 M(0)[l1[rho_0]] - q_1 M(1)[l1[rho_1]]]||_1) / 2
/// for extreme first-receiver instruments on qubits.
class TwoReceiverObjective {
 public:
  TwoReceiverObjective(const Ensemble& ensemble, double gamma1, double gamma2)
      : gamma2_(gamma2) {
    const Channel l1 = Channel::depolarizing(gamma1);
    w_[0] = ensemble.priors()[0] *
            l1.apply(ensemble.states()[0].matrix()).eval();
    w_[1] = ensemble.priors()[1] *
            l1.apply(ensemble.states()[1].matrix()).eval();
  }

  double spin(const RVector3& n, int sign) const {
    Eigen::Matrix2cd e0;
    const double s = static_cast<double>(sign);
    e0 << 0.5 * (1.0 + s * n(2)), 0.5 * s * Complex(n(0), -n(1)),
        0.5 * s * Complex(n(0), n(1)), 0.5 * (1.0 - s * n(2));
    const Eigen::Matrix2cd e1 = Eigen::Matrix2cd::Identity() - e0;
    return evaluate(e0, e1);
  }

  double trivial(int outcome) const {
    Eigen::Matrix2cd e0 = Eigen::Matrix2cd::Zero();
    if (outcome == 0) e0 = Eigen::Matrix2cd::Identity();
    const Eigen::Matrix2cd e1 = Eigen::Matrix2cd::Identity() - e0;
    return evaluate(e0, e1);
  }

  double operator()(const ExtremeInstrument& m1) const {
    return m1.kind == ExtremeInstrument::Kind::kSpin
               ? spin(m1.direction, m1.sign)
               : trivial(m1.outcome);
  }

 private:
  double evaluate(const Eigen::Matrix2cd& e0,
                  const Eigen::Matrix2cd& e1) const {
    const double p1 = ((w_[0] * e0).trace() + (w_[1] * e1).trace()).real();
    Eigen::Matrix2cd m = e0 * w_[0] * e0 - e1 * w_[1] * e1;
    const Complex tr = m.trace();
    m *= 1.0 - gamma2_;
    m(0, 0) += 0.5 * gamma2_ * tr;
    m(1, 1) += 0.5 * gamma2_ * tr;
    // Trace norm of the Hermitian 2x2 operator m.
    const double mean = 0.5 * m.trace().real();
    const double half_gap = 0.5 * (m(0, 0) - m(1, 1)).real();
    const double radius =
        std::sqrt(half_gap * half_gap + std::norm(m(0, 1)));
    const double tn = std::abs(mean + radius) + std::abs(mean - radius);
    return 0.5 * (p1 + tn);
  }

  Eigen::Matrix2cd w_[2];
  double gamma2_;
};

}  // namespace

Instrument ExtremeInstrument::to_instrument() const {
  if (kind == Kind::kSpin) {
    const CMatrix e_first = spin_projector(direction, sign);
    const CMatrix e_second = spin_projector(direction, -sign);
    return Instrument(2, {{e_first}, {e_second}});
  }
  if (outcome != 0 && outcome != 1) {
    throw InvalidParameter("trivial instrument outcome must be 0 or 1");
  }
  std::vector<std::vector<CMatrix>> kraus(2);
  kraus[outcome] = {CMatrix::Identity(2, 2)};
  kraus[1 - outcome] = {CMatrix::Zero(2, 2)};
  return Instrument(2, std::move(kraus));
}

double noisy_success(const Protocol& protocol, const Ensemble& ensemble) {
  const double direct = success_direct(protocol, ensemble);
  const double chain = success_chain(protocol, ensemble);
  const double product = success_product(protocol, ensemble).success_probability;
  const double spread = std::max(std::abs(direct - chain),
                                 std::abs(direct - product));
  if (spread > 1e-10) {
    throw Error("success representations disagree by " +
                std::to_string(spread));
  }
  return direct;
}

double noisy_two_seq_upper_bound(const Ensemble& ensemble, const Channel& l1,
                                 const Channel& l2, const Instrument& m1) {
  const int r = ensemble.size();
  if (m1.num_outcomes() != r) {
    throw WrongArity("first receiver announces " +
                     std::to_string(m1.num_outcomes()) +
                     " outcomes but the ensemble has " + std::to_string(r) +
                     " hypotheses");
  }
  if (m1.dim() != ensemble.dim() || l1.dim() != ensemble.dim() ||
      l2.dim() != ensemble.dim()) {
    throw DimensionError("ensemble, channels and first receiver must share "
                         "one dimension");
  }

  std::vector<CMatrix> weighted;  // q_j l1[rho_j]
  weighted.reserve(r);
  for (int j = 0; j < r; ++j) {
    weighted.push_back(ensemble.priors()[j] *
                       l1.apply(ensemble.states()[j].matrix()));
  }

  const POVM povm = povm_of(m1);
  double first_stage = 0.0;
  for (int j = 0; j < r; ++j) {
    const double p = (weighted[j] * povm.elements[j]).trace().real();
    first_stage += p < 0.0 ? 0.0 : p;
  }

  double pair_sum = 0.0;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      const CMatrix diff =
          l2.apply(m1.apply(i, weighted[i]) - m1.apply(j, weighted[j]));
      pair_sum += trace_norm(0.5 * (diff + diff.adjoint()));
    }
  }
  return (first_stage + pair_sum) / r;
}

double one_receiver_depolarizing_optimum(const Ensemble& ensemble,
                                         double gamma1) {
  check_qubit_pair(ensemble, "one_receiver_depolarizing_optimum");
  check_strength(gamma1, "gamma1");
  const PairGeometry g = pair_geometry(ensemble, gamma1);
  const double q_max =
      std::max(ensemble.priors()[0], ensemble.priors()[1]);
  return std::max(g.p_plus, q_max);
}

NoisyOptimum two_seq_depolarizing_closed(const Ensemble& ensemble,
                                         double gamma1, double gamma2) {
  check_qubit_pair(ensemble, "two_seq_depolarizing_closed");
  check_strength(gamma1, "gamma1");
  check_strength(gamma2, "gamma2");
  const PairGeometry g = pair_geometry(ensemble, gamma1);
  const double q_max =
      std::max(ensemble.priors()[0], ensemble.priors()[1]);
  const int best_guess = ensemble.priors()[0] >= ensemble.priors()[1] ? 0 : 1;
  const double rescaled = (1.0 - 0.5 * gamma2) * g.p_plus;

  NoisyOptimum out;
  fill_thresholds(g, q_max, &out);
  if (rescaled >= q_max) {
    out.value = rescaled;
    out.regime = NoisyOptimum::Regime::kHelstromLike;
    out.maximizer = ExtremeInstrument{ExtremeInstrument::Kind::kSpin,
                                      g.n_plus, 1, 0};
  } else {
    out.value = q_max;
    out.regime = NoisyOptimum::Regime::kTrivial;
    out.maximizer = ExtremeInstrument{ExtremeInstrument::Kind::kTrivial,
                                      RVector3(0, 0, 1), 1, best_guess};
  }
  return out;
}

NoisyOptimum two_seq_depolarizing_numeric(const Ensemble& ensemble,
                                          double gamma1, double gamma2,
                                          int grid_size,
                                          bool include_analytic) {
  check_qubit_pair(ensemble, "two_seq_depolarizing_numeric");
  check_strength(gamma1, "gamma1");
  check_strength(gamma2, "gamma2");
  if (grid_size < 2) {
    throw InvalidParameter("grid size must be at least 2");
  }

  const TwoReceiverObjective objective(ensemble, gamma1, gamma2);
  const PairGeometry g = pair_geometry(ensemble, gamma1);

  NoisyOptimum out;
  fill_thresholds(g, std::max(ensemble.priors()[0], ensemble.priors()[1]),
                  &out);
  out.value = -1.0;

  const auto consider = [&](const ExtremeInstrument& candidate) {
    const double value = objective(candidate);
    if (value > out.value) {
      out.value = value;
      out.maximizer = candidate;
      out.regime = candidate.kind == ExtremeInstrument::Kind::kSpin
                       ? NoisyOptimum::Regime::kHelstromLike
                       : NoisyOptimum::Regime::kTrivial;
    }
  };

  for (int j = 0; j < 2; ++j) {
    consider({ExtremeInstrument::Kind::kTrivial, RVector3(0, 0, 1), 1, j});
  }
  for (const RVector3& n : fibonacci_sphere(grid_size)) {
    for (int sign : {1, -1}) {
      consider({ExtremeInstrument::Kind::kSpin, n, sign, 0});
    }
  }
  if (include_analytic) {
    for (int sign : {1, -1}) {
      consider({ExtremeInstrument::Kind::kSpin, g.n_plus, sign, 0});
      consider({ExtremeInstrument::Kind::kSpin, RVector3(-g.n_plus), sign, 0});
    }
  }
  return out;
}

std::vector<RVector3> fibonacci_sphere(int n) {
  if (n < 2) {
    throw InvalidParameter("sphere grid needs at least 2 points");
  }
  std::vector<RVector3> points;
  points.reserve(n);
  const double dz = 2.0 / n;
  const double dtheta = std::numbers::pi * (1.0 + std::sqrt(5.0));
  double z = -1.0 + 0.5 * dz;
  double theta = 0.0;
  for (int i = 0; i < n; ++i) {
    const double radius = std::sqrt(std::max(0.0, 1.0 - z * z));
    points.emplace_back(radius * std::cos(theta), radius * std::sin(theta), z);
    points.back().normalize();
    z += dz;
    theta += dtheta;
  }
  return points;
}

}  // namespace seqdisc
