#include "seqdisc/channels.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "seqdisc/errors.hpp"

namespace seqdisc {

Channel::Channel(int dim, std::vector<CMatrix> kraus)
    : dim_(dim), kraus_(std::move(kraus)) {
  if (dim_ < 1 || dim_ > kMaxDim) {
    throw DimensionError("channel dimension " + std::to_string(dim_) +
                         " outside [1, " + std::to_string(kMaxDim) + "]");
  }
  if (kraus_.empty()) {
    throw InvalidOperator("channel needs at least one Kraus operator");
  }
  CMatrix sum = CMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) {
    if (k.rows() != dim_ || k.cols() != dim_) {
      throw DimensionError("channel Kraus operator is not " +
                           std::to_string(dim_) + "x" + std::to_string(dim_));
    }
    check_finite(k, "channel Kraus operator");
    sum += k.adjoint() * k;
  }
  if (max_abs(sum - CMatrix::Identity(dim_, dim_)) > 1e-10) {
    throw InvalidOperator("channel is not trace preserving");
  }
}

Channel Channel::identity(int dim) {
  return Channel(dim, {CMatrix::Identity(dim, dim)});
}

Channel Channel::depolarizing(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw InvalidParameter("depolarizing strength " + std::to_string(gamma) +
                           " outside [0, 1]");
  }
  std::vector<CMatrix> kraus;
  kraus.push_back(std::sqrt(1.0 - 0.75 * gamma) * CMatrix::Identity(2, 2));
  for (int k = 1; k <= 3; ++k) {
    kraus.push_back(0.5 * std::sqrt(gamma) * pauli(k));
  }
  return Channel(2, std::move(kraus));
}

CMatrix Channel::apply(const CMatrix& operand) const {
  if (operand.rows() != dim_ || operand.cols() != dim_) {
    throw DimensionError("channel operand is not " + std::to_string(dim_) +
                         "x" + std::to_string(dim_));
  }
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus_) out += k * operand * k.adjoint();
  return out;
}

DensityOperator Channel::apply(const DensityOperator& rho) const {
  const CMatrix out = apply(rho.matrix());
  return DensityOperator(0.5 * (out + out.adjoint()));
}

DensityOperator apply_channel(const Channel& channel,
                              const DensityOperator& rho) {
  return channel.apply(rho);
}

}  // namespace seqdisc
