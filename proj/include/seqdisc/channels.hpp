#pragma once

#include <vector>

#include "seqdisc/linalg.hpp"
#include "seqdisc/states.hpp"

namespace seqdisc {

/// Trace-preserving completely positive map in Kraus form,
/// T -> sum_l K_l T K_l^dagger, defined on arbitrary operators.
class Channel {
 public:
  Channel(int dim, std::vector<CMatrix> kraus);

  static Channel identity(int dim);

  /// Qubit depolarizing channel T -> (1 - gamma) T + gamma tr(T) I / 2
  /// for gamma in [0, 1], built from the four Pauli Kraus operators.
  static Channel depolarizing(double gamma);

  int dim() const { return dim_; }
  const std::vector<CMatrix>& kraus() const { return kraus_; }

  CMatrix apply(const CMatrix& operand) const;
  DensityOperator apply(const DensityOperator& rho) const;

 private:
  int dim_;
  std::vector<CMatrix> kraus_;
};

DensityOperator apply_channel(const Channel& channel,
                              const DensityOperator& rho);

}  // namespace seqdisc
