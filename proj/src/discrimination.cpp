#include "seqdisc/discrimination.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "seqdisc/errors.hpp"

namespace seqdisc {

namespace {

constexpr double kOpTol = 1e-10;

void check_compatible(const Protocol& protocol, const Ensemble& ensemble) {
  if (protocol.dim() != ensemble.dim()) {
    throw DimensionError("protocol acts on dimension " +
                         std::to_string(protocol.dim()) +
                         " but ensemble lives on " +
                         std::to_string(ensemble.dim()));
  }
  if (protocol.num_outcomes() != ensemble.size()) {
    throw WrongArity("protocol announces " +
                     std::to_string(protocol.num_outcomes()) +
                     " outcomes but the ensemble has " +
                     std::to_string(ensemble.size()) + " hypotheses");
  }
}

void check_two_hypotheses(const Ensemble& ensemble, const char* what) {
  if (ensemble.size() != 2) {
    throw WrongArity(std::string(what) + " requires exactly two hypotheses, got " +
                     std::to_string(ensemble.size()));
  }
}

}  // namespace

Protocol::Protocol(std::vector<Instrument> receivers)
    : Protocol(std::move(receivers), {}) {}

Protocol::Protocol(std::vector<Instrument> receivers,
                   std::vector<Channel> channels)
    : receivers_(std::move(receivers)), channels_(std::move(channels)) {
  if (receivers_.empty()) {
    throw InvalidParameter("protocol needs at least one receiver");
  }
  for (const auto& m : receivers_) {
    if (m.dim() != receivers_[0].dim()) {
      throw DimensionError("receivers act on different spaces");
    }
    if (m.num_outcomes() != receivers_[0].num_outcomes()) {
      throw DimensionError("receivers have different outcome sets");
    }
  }
  if (!channels_.empty()) {
    if (channels_.size() != receivers_.size()) {
      throw DimensionError("expected one channel per receiver, got " +
                           std::to_string(channels_.size()) + " channels for " +
                           std::to_string(receivers_.size()) + " receivers");
    }
    for (const auto& c : channels_) {
      if (c.dim() != receivers_[0].dim()) {
        throw DimensionError("channel dimension differs from receiver dimension");
      }
    }
  }
}

double success_direct(const Protocol& protocol, const Ensemble& ensemble) {
  check_compatible(protocol, ensemble);
  double total = 0.0;
  for (int j = 0; j < ensemble.size(); ++j) {
    CMatrix current = ensemble.states()[j].matrix();
    for (int n = 0; n < protocol.num_receivers(); ++n) {
      if (protocol.noisy()) current = protocol.channels()[n].apply(current);
      current = protocol.receivers()[n].apply(j, current);
    }
    const double p = current.trace().real();
    total += ensemble.priors()[j] * (p < 0.0 ? 0.0 : p);
  }
  return total;
}

double success_chain(const Protocol& protocol, const Ensemble& ensemble) {
  check_compatible(protocol, ensemble);
  double total = 0.0;
  for (int j = 0; j < ensemble.size(); ++j) {
    double branch = ensemble.priors()[j];
    CMatrix state = ensemble.states()[j].matrix();
    for (int n = 0; n < protocol.num_receivers(); ++n) {
      CMatrix input = protocol.noisy() ? protocol.channels()[n].apply(state)
                                       : std::move(state);
      CMatrix mapped = protocol.receivers()[n].apply(j, input);
      const double p = mapped.trace().real();
      if (p <= kProbFloor) {
        branch = 0.0;
        break;
      }
      branch *= p;
      state = mapped / p;
    }
    total += branch;
  }
  return total;
}

DiscriminationResult success_product(const Protocol& protocol,
                                     const Ensemble& ensemble) {
  check_compatible(protocol, ensemble);
  const int r = ensemble.size();
  const int n_stages = protocol.num_receivers();

  DiscriminationResult result;
  std::vector<double> weights = ensemble.priors();
  std::vector<CMatrix> states;
  states.reserve(r);
  for (const auto& s : ensemble.states()) states.push_back(s.matrix());
  result.updated_priors.push_back(weights);

  double success = 1.0;
  for (int n = 0; n < n_stages; ++n) {
    std::vector<CMatrix> mapped(r);
    std::vector<double> conditional(r, 0.0);
    double factor = 0.0;
    for (int j = 0; j < r; ++j) {
      if (weights[j] <= 0.0) continue;
      const CMatrix input = protocol.noisy()
                                ? protocol.channels()[n].apply(states[j])
                                : states[j];
      mapped[j] = protocol.receivers()[n].apply(j, input);
      const double p = mapped[j].trace().real();
      conditional[j] = p < 0.0 ? 0.0 : p;
      factor += weights[j] * conditional[j];
    }
    result.stage_factors.push_back(factor);
    success *= factor;
    if (factor <= kProbFloor) {
      // The run dies out here: remaining stage factors are zero and no
      // further weight rows are defined.
      success = 0.0;
      for (int m = n + 1; m < n_stages; ++m) result.stage_factors.push_back(0.0);
      break;
    }
    for (int j = 0; j < r; ++j) {
      if (conditional[j] > kProbFloor) {
        states[j] = mapped[j] / conditional[j];
      }
      weights[j] = weights[j] * conditional[j] / factor;
    }
    if (n + 1 < n_stages) result.updated_priors.push_back(weights);
  }
  result.success_probability = success;
  return result;
}

double helstrom_bound(const Ensemble& ensemble) {
  check_two_hypotheses(ensemble, "helstrom_bound");
  const CMatrix diff = ensemble.priors()[0] * ensemble.states()[0].matrix() -
                       ensemble.priors()[1] * ensemble.states()[1].matrix();
  return 0.5 * (1.0 + trace_norm(diff));
}

double multi_state_upper_bound(const Ensemble& ensemble) {
  const int r = ensemble.size();
  double sum = 0.0;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      sum += trace_norm(ensemble.priors()[i] * ensemble.states()[i].matrix() -
                        ensemble.priors()[j] * ensemble.states()[j].matrix());
    }
  }
  return (1.0 + sum) / r;
}

std::pair<CMatrix, CMatrix> optimal_projectors(const Ensemble& ensemble) {
  check_two_hypotheses(ensemble, "optimal_projectors");
  const CMatrix diff = ensemble.priors()[0] * ensemble.states()[0].matrix() -
                       ensemble.priors()[1] * ensemble.states()[1].matrix();
  const CMatrix p1 = positive_projector(diff);
  const CMatrix p2 = CMatrix::Identity(p1.rows(), p1.cols()) - p1;
  return {p1, p2};
}

Protocol optimal_two_state_protocol(const Ensemble& ensemble,
                                    int n_receivers) {
  if (n_receivers < 1) {
    throw InvalidParameter("receiver count must be at least 1");
  }
  const auto [p1, p2] = optimal_projectors(ensemble);
  const Instrument receiver = luders_from_projectors({p1, p2});
  return Protocol(std::vector<Instrument>(n_receivers, receiver));
}

Protocol optimal_two_state_protocol(const Ensemble& ensemble, int n_receivers,
                                    const CMatrix& basis) {
  if (n_receivers < 1) {
    throw InvalidParameter("receiver count must be at least 1");
  }
  check_two_hypotheses(ensemble, "optimal_two_state_protocol");
  const int d = ensemble.dim();
  if (basis.rows() != d || basis.cols() != d) {
    throw DimensionError("rotation basis is not " + std::to_string(d) + "x" +
                         std::to_string(d));
  }
  check_finite(basis, "rotation basis");
  if (max_abs(basis.adjoint() * basis - CMatrix::Identity(d, d)) > kOpTol) {
    throw InvalidOperator("rotation basis columns are not orthonormal");
  }

  const CMatrix diff = ensemble.priors()[0] * ensemble.states()[0].matrix() -
                       ensemble.priors()[1] * ensemble.states()[1].matrix();
  const HermitianEig eig = eig_hermitian(diff);
  const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  const double eps = std::max(1e-10 * scale, kTolFloor);
  int rank_pos = 0;
  while (rank_pos < d && eig.eigenvalues(rank_pos) > eps) ++rank_pos;
  if (rank_pos == 0 || rank_pos == d) {
    throw DegenerateSpectrum(
        "rotated variant needs both spectral projectors nonzero (positive "
        "rank " +
        std::to_string(rank_pos) + " of " + std::to_string(d) + ")");
  }

  CMatrix k1 = CMatrix::Zero(d, d);
  CMatrix k2 = CMatrix::Zero(d, d);
  CMatrix proj1 = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const CMatrix term = basis.col(i) * eig.eigenvectors.col(i).adjoint();
    if (i < rank_pos) {
      k1 += term;
      proj1 += basis.col(i) * basis.col(i).adjoint();
    } else {
      k2 += term;
    }
  }
  const CMatrix proj2 = CMatrix::Identity(d, d) - proj1;

  std::vector<Instrument> receivers;
  receivers.emplace_back(d, std::vector<std::vector<CMatrix>>{{k1}, {k2}});
  const Instrument later = luders_from_projectors({proj1, proj2});
  for (int n = 1; n < n_receivers; ++n) receivers.push_back(later);
  return Protocol(std::move(receivers));
}

Protocol repeatable_receiver_protocol(const std::vector<CMatrix>& kraus,
                           const std::vector<CMatrix>& projectors,
                           int n_receivers) {
  if (n_receivers < 1) {
    throw InvalidParameter("receiver count must be at least 1");
  }
  if (kraus.size() != projectors.size() || kraus.size() < 2) {
    throw InvalidParameter("need matching Kraus/projector lists for at least "
                           "two hypotheses");
  }
  const int d = static_cast<int>(kraus[0].rows());
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) {
      throw DimensionError("first-receiver Kraus operators differ in shape");
    }
    check_finite(k, "first-receiver Kraus operator");
  }
  const Instrument later = luders_from_projectors(projectors);

  // Sufficiency check: the announced-outcome effects of the later projective
  // receivers must reproduce the first receiver's measurement exactly,
  // K(j)^dag P(j) K(j) = K(j)^dag K(j), and those effects must be complete.
  CMatrix sum = CMatrix::Zero(d, d);
  for (size_t j = 0; j < kraus.size(); ++j) {
    const CMatrix m_opt = kraus[j].adjoint() * kraus[j];
    const CMatrix lhs = kraus[j].adjoint() * projectors[j] * kraus[j];
    if (max_abs(lhs - m_opt) > kOpTol) {
      throw ConditionNotSatisfied(
          "K(j)^dag P(j) K(j) deviates from K(j)^dag K(j) by " +
          std::to_string(max_abs(lhs - m_opt)) + " for hypothesis " +
          std::to_string(j));
    }
    sum += m_opt;
  }
  if (max_abs(sum - CMatrix::Identity(d, d)) > kOpTol) {
    throw ConditionNotSatisfied(
        "first-receiver effects K(j)^dag K(j) do not sum to the identity");
  }

  std::vector<std::vector<CMatrix>> first;
  for (const auto& k : kraus) first.push_back({k});
  std::vector<Instrument> receivers;
  receivers.emplace_back(d, std::move(first));
  for (int n = 1; n < n_receivers; ++n) receivers.push_back(later);
  return Protocol(std::move(receivers));
}

namespace {

void check_projector_pair(const CMatrix& p1, const CMatrix& p2) {
  const int d = static_cast<int>(p1.rows());
  for (const CMatrix* p : {&p1, &p2}) {
    if (p->rows() != d || p->cols() != d) {
      throw InvalidOperator("projector pair has mismatched shapes");
    }
    check_finite(*p, "projector");
    if (!is_hermitian(*p) || max_abs((*p) * (*p) - (*p)) > kOpTol) {
      throw InvalidOperator("matrix is not an orthogonal projector");
    }
  }
  if (max_abs(p1 + p2 - CMatrix::Identity(d, d)) > kOpTol) {
    throw InvalidOperator("projector pair does not resolve the identity");
  }
}

}  // namespace

StatisticalRealization indirect_realization_for_optimal(const CMatrix& p1,
                                                        const CMatrix& p2) {
  CVector b(2);
  b << 1.0, 0.0;
  return indirect_realization_for_optimal(p1, p2, b);
}

StatisticalRealization indirect_realization_for_optimal(
    const CMatrix& p1, const CMatrix& p2, const CVector& ancilla_ket) {
  check_projector_pair(p1, p2);
  if (ancilla_ket.size() != 2) {
    throw InvalidParameter("ancilla ket must be a qubit vector");
  }
  if (std::abs(ancilla_ket.norm() - 1.0) > 1e-10) {
    throw InvalidParameter("ancilla ket must be normalized");
  }
  const int d = static_cast<int>(p1.rows());
  CVector b_perp(2);
  b_perp << -std::conj(ancilla_ket(1)), std::conj(ancilla_ket(0));

  const CMatrix bb = ancilla_ket * ancilla_ket.adjoint();
  const CMatrix flip =
      b_perp * ancilla_ket.adjoint() + ancilla_ket * b_perp.adjoint();
  const CMatrix unitary =
      tensor(p1, CMatrix::Identity(2, 2)) + tensor(p2, flip);

  return StatisticalRealization(
      d, DensityOperator(bb), {bb, CMatrix::Identity(2, 2) - bb}, unitary);
}

}  // namespace seqdisc
