#include "seqdisc/linalg.hpp"

#include <cmath>
#include <random>
#include <string>

#include "seqdisc/errors.hpp"

namespace seqdisc {

void check_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw InvalidOperator(std::string(what) + " has non-finite entries");
  }
}

bool is_hermitian(const CMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double dev = (m - m.adjoint()).norm();
  return dev <= rel_tol * m.norm() + kTolFloor;
}

double operator_norm(const CMatrix& m) {
  check_finite(m, "operator");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double max_abs(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

namespace {

void check_spectral_input(const CMatrix& h) {
  if (h.rows() != h.cols()) {
    throw InvalidOperator("spectral decomposition requires a square matrix");
  }
  if (h.rows() < 1 || h.rows() > kMaxDim) {
    throw DimensionError("dimension " + std::to_string(h.rows()) +
                         " outside supported range [1, " +
                         std::to_string(kMaxDim) + "]");
  }
  check_finite(h, "spectral input");
  if (!is_hermitian(h)) {
    throw InvalidOperator("spectral decomposition requires a Hermitian matrix");
  }
}

/// Rescale a unit column so its first significant entry is real positive.
void fix_phase(Eigen::Ref<CVector> v) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale <= 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a >= 1e-6 * scale) {
      v *= std::conj(v(i)) / a;
      return;
    }
  }
}

}  // namespace

HermitianEig eig_hermitian(const CMatrix& h) {
  check_spectral_input(h);
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw InvalidOperator("eigensolver failed to converge");
  }
  const Eigen::Index d = h.rows();
  HermitianEig out;
  out.eigenvalues.resize(d);
  out.eigenvectors.resize(d, d);
  // Eigen returns ascending order; present descending with fixed phases.
  for (Eigen::Index i = 0; i < d; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(d - 1 - i);
    out.eigenvectors.col(i) = solver.eigenvectors().col(d - 1 - i);
    fix_phase(out.eigenvectors.col(i));
  }
  return out;
}

double trace_norm(const CMatrix& h) {
  const HermitianEig eig = eig_hermitian(h);
  return eig.eigenvalues.cwiseAbs().sum();
}

CMatrix positive_projector(const CMatrix& h, double eps) {
  const HermitianEig eig = eig_hermitian(h);
  const Eigen::Index d = h.rows();
  CMatrix p = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (eig.eigenvalues(i) > eps) {
      p += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
    }
  }
  return 0.5 * (p + p.adjoint());
}

CMatrix positive_projector(const CMatrix& h) {
  const HermitianEig eig = eig_hermitian(h);
  const double scale =
      eig.eigenvalues.size() ? eig.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  const double eps = std::max(1e-10 * scale, kTolFloor);
  const Eigen::Index d = h.rows();
  CMatrix p = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (eig.eigenvalues(i) > eps) {
      p += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
    }
  }
  return 0.5 * (p + p.adjoint());
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix haar_unitary(int dim, std::uint64_t seed) {
  if (dim < 1 || dim > 2 * kMaxDim) {
    throw DimensionError("unitary dimension " + std::to_string(dim) +
                         " outside [1, " + std::to_string(2 * kMaxDim) + "]");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      g(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

CMatrix partial_trace_second(const CMatrix& m, int dim_second) {
  if (m.rows() != m.cols()) {
    throw DimensionError("partial trace requires a square matrix");
  }
  if (dim_second < 1 || m.rows() % dim_second != 0) {
    throw DimensionError("matrix dimension not divisible by the traced factor");
  }
  const Eigen::Index d = m.rows() / dim_second;
  CMatrix out = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      Complex sum = 0.0;
      for (Eigen::Index s = 0; s < dim_second; ++s) {
        sum += m(i * dim_second + s, j * dim_second + s);
      }
      out(i, j) = sum;
    }
  }
  return out;
}

}  // namespace seqdisc
