#pragma once

#include <vector>

#include "seqdisc/linalg.hpp"

namespace seqdisc {

/// Validated density operator: Hermitian, unit trace, eigenvalues >= -1e-10,
/// dimension in [1, kMaxDim].
class DensityOperator {
 public:
  explicit DensityOperator(CMatrix matrix);

  const CMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

 private:
  CMatrix m_;
};

/// Pauli matrices; k in {1, 2, 3} for sigma_x, sigma_y, sigma_z.
CMatrix pauli(int k);

/// Qubit state (I + r . sigma) / 2 for a Bloch vector with ||r|| <= 1.
DensityOperator qubit_from_bloch(const RVector3& r);

/// Bloch vector of a qubit state, r_k = Re tr(rho sigma_k).
RVector3 bloch_from_qubit(const DensityOperator& rho);

/// Spin projector (I + sign * n . sigma) / 2 for a unit direction n.
CMatrix spin_projector(const RVector3& n, int sign);

/// Hypothesis set: states rho_j with strictly positive prior weights q_j
/// summing to one. At least two hypotheses, all on the same space.
class Ensemble {
 public:
  Ensemble(std::vector<DensityOperator> states, std::vector<double> priors);

  const std::vector<DensityOperator>& states() const { return states_; }
  const std::vector<double>& priors() const { return priors_; }
  int size() const { return static_cast<int>(states_.size()); }
  int dim() const { return states_[0].dim(); }

 private:
  std::vector<DensityOperator> states_;
  std::vector<double> priors_;
};

/// Average state sum_j q_j rho_j.
DensityOperator mixture(const Ensemble& ensemble);

}  // namespace seqdisc
