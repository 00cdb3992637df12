#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace seqdisc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector3 = Eigen::Vector3d;

/// Largest Hilbert-space dimension accepted by the dense spectral kernels
/// and the domain types built on them.
inline constexpr int kMaxDim = 16;

/// Absolute floor added to every relative tolerance so that zero operators
/// are handled gracefully.
inline constexpr double kTolFloor = 1e-14;

/// Outcome probabilities at or below this value are treated as exactly zero.
inline constexpr double kProbFloor = 1e-12;

/// Throws InvalidOperator if the matrix contains NaN or infinite entries.
void check_finite(const CMatrix& m, const char* what = "matrix");

/// True if m is square and ||m - m^\dagger||_F <= rel_tol * ||m||_F + floor.
bool is_hermitian(const CMatrix& m, double rel_tol = 1e-10);

/// Largest singular value.
double operator_norm(const CMatrix& m);

/// Largest absolute entry; the "within tol" metric used by the validators.
double max_abs(const CMatrix& m);

/// Spectral decomposition of a Hermitian matrix with a deterministic
/// presentation: eigenvalues descending, each eigenvector rescaled so its
/// first significant component is real and positive.
struct HermitianEig {
  Eigen::VectorXd eigenvalues;  ///< descending
  CMatrix eigenvectors;         ///< orthonormal columns, phase-fixed
};

/// Decomposes a Hermitian matrix (checked; InvalidOperator on failure,
/// DimensionError above kMaxDim). Reconstruction V diag(lambda) V^\dagger
/// matches the input to ~1e-10 relative accuracy.
HermitianEig eig_hermitian(const CMatrix& h);

/// Trace norm ||h||_1 = sum |eigenvalue| of a Hermitian matrix.
double trace_norm(const CMatrix& h);

/// Orthogonal projector onto the span of eigenvectors with eigenvalue
/// strictly greater than eps.
CMatrix positive_projector(const CMatrix& h, double eps);

/// Same with the default cut eps = max(1e-10 * max|eigenvalue|, 1e-14).
CMatrix positive_projector(const CMatrix& h);

/// Kronecker product a (x) b; index convention (i*rows_b + k, j*cols_b + l).
CMatrix tensor(const CMatrix& a, const CMatrix& b);

/// Partial trace over the second factor of a (d*dim_second)-dimensional
/// bipartite operator, returning the d-dimensional reduction.
CMatrix partial_trace_second(const CMatrix& m, int dim_second);

/// Haar-distributed random unitary, deterministic for a given seed
/// (QR of a complex Gaussian matrix with the standard phase correction).
CMatrix haar_unitary(int dim, std::uint64_t seed);

}  // namespace seqdisc
