#include "seqdisc/states.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "seqdisc/errors.hpp"

namespace seqdisc {

namespace {

constexpr double kPsdTol = 1e-10;
constexpr double kTraceTol = 1e-10;

}  // namespace

DensityOperator::DensityOperator(CMatrix matrix) : m_(std::move(matrix)) {
  if (m_.rows() != m_.cols()) {
    throw InvalidOperator("density operator must be square");
  }
  if (m_.rows() < 1 || m_.rows() > kMaxDim) {
    throw DimensionError("density operator dimension " +
                         std::to_string(m_.rows()) + " outside [1, " +
                         std::to_string(kMaxDim) + "]");
  }
  check_finite(m_, "density operator");
  if (!is_hermitian(m_)) {
    throw InvalidOperator("density operator must be Hermitian");
  }
  const double tr_dev = std::abs(m_.trace() - Complex(1.0, 0.0));
  if (tr_dev > kTraceTol) {
    throw InvalidOperator("density operator trace deviates from 1 by " +
                          std::to_string(tr_dev));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (m_ + m_.adjoint()));
  if (solver.eigenvalues().minCoeff() < -kPsdTol) {
    throw InvalidOperator("density operator has eigenvalue " +
                          std::to_string(solver.eigenvalues().minCoeff()) +
                          " below -1e-10");
  }
}

CMatrix pauli(int k) {
  CMatrix s(2, 2);
  switch (k) {
    case 1:
      s << 0, 1, 1, 0;
      break;
    case 2:
      s << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case 3:
      s << 1, 0, 0, -1;
      break;
    default:
      throw InvalidParameter("pauli index must be 1, 2 or 3");
  }
  return s;
}

DensityOperator qubit_from_bloch(const RVector3& r) {
  if (!r.allFinite()) {
    throw InvalidBlochVector("Bloch vector has non-finite entries");
  }
  if (r.norm() > 1.0 + 1e-12) {
    throw InvalidBlochVector("Bloch vector norm " + std::to_string(r.norm()) +
                             " exceeds 1");
  }
  CMatrix m = 0.5 * CMatrix::Identity(2, 2);
  for (int k = 1; k <= 3; ++k) m += 0.5 * r(k - 1) * pauli(k);
  return DensityOperator(m);
}

RVector3 bloch_from_qubit(const DensityOperator& rho) {
  if (rho.dim() != 2) {
    throw DimensionError("Bloch extraction requires a qubit state");
  }
  RVector3 r;
  for (int k = 1; k <= 3; ++k) {
    r(k - 1) = (rho.matrix() * pauli(k)).trace().real();
  }
  return r;
}

CMatrix spin_projector(const RVector3& n, int sign) {
  if (sign != 1 && sign != -1) {
    throw InvalidParameter("spin projector sign must be +1 or -1");
  }
  if (std::abs(n.norm() - 1.0) > 1e-10) {
    throw InvalidBlochVector("spin direction must be a unit vector");
  }
  CMatrix p = 0.5 * CMatrix::Identity(2, 2);
  for (int k = 1; k <= 3; ++k) p += 0.5 * sign * n(k - 1) * pauli(k);
  return p;
}

Ensemble::Ensemble(std::vector<DensityOperator> states,
                   std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
  if (states_.size() < 2) {
    throw InvalidParameter("ensemble needs at least two hypotheses");
  }
  if (priors_.size() != states_.size()) {
    throw InvalidParameter("ensemble has " + std::to_string(states_.size()) +
                           " states but " + std::to_string(priors_.size()) +
                           " priors");
  }
  const int d = states_[0].dim();
  for (const auto& s : states_) {
    if (s.dim() != d) {
      throw DimensionError("ensemble states live on different spaces");
    }
  }
  double sum = 0.0;
  for (double q : priors_) {
    if (!(q > 0.0)) {
      throw InvalidParameter("prior weights must be strictly positive");
    }
    sum += q;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw InvalidParameter("prior weights sum to " + std::to_string(sum));
  }
}

DensityOperator mixture(const Ensemble& ensemble) {
  CMatrix m = CMatrix::Zero(ensemble.dim(), ensemble.dim());
  for (int j = 0; j < ensemble.size(); ++j) {
    m += ensemble.priors()[j] * ensemble.states()[j].matrix();
  }
  return DensityOperator(m);
}

}  // namespace seqdisc
