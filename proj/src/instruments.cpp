#include "seqdisc/instruments.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "seqdisc/errors.hpp"

namespace seqdisc {

namespace {

constexpr double kOpTol = 1e-10;

void check_outcome_range(int outcome, int count) {
  if (outcome < 0 || outcome >= count) {
    throw InvalidParameter("outcome index " + std::to_string(outcome) +
                           " outside [0, " + std::to_string(count) + ")");
  }
}

void check_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimensions " +
                         std::to_string(a) + " and " + std::to_string(b) +
                         " differ");
  }
}

/// Validates a complete family of mutually orthogonal projectors on a
/// d-dimensional space. Throws `family_error(message)` for family-level
/// defects and InvalidOperator for per-matrix defects.
template <typename FamilyError>
void check_projector_family(const std::vector<CMatrix>& projectors, int dim) {
  for (const auto& p : projectors) {
    if (p.rows() != dim || p.cols() != dim) {
      throw InvalidOperator("projector is not " + std::to_string(dim) + "x" +
                            std::to_string(dim));
    }
    check_finite(p, "projector");
    if (!is_hermitian(p) || max_abs(p * p - p) > kOpTol) {
      throw InvalidOperator("matrix is not an orthogonal projector");
    }
  }
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (const auto& p : projectors) sum += p;
  if (max_abs(sum - CMatrix::Identity(dim, dim)) > kOpTol) {
    throw FamilyError("projectors do not sum to the identity");
  }
  for (size_t i = 0; i < projectors.size(); ++i) {
    for (size_t j = i + 1; j < projectors.size(); ++j) {
      if (max_abs(projectors[i] * projectors[j]) > kOpTol) {
        throw FamilyError("projectors " + std::to_string(i) + " and " +
                          std::to_string(j) + " are not orthogonal");
      }
    }
  }
}

}  // namespace

Instrument::Instrument(int dim, std::vector<std::vector<CMatrix>> kraus)
    : dim_(dim), kraus_(std::move(kraus)) {
  if (dim_ < 1 || dim_ > kMaxDim) {
    throw DimensionError("instrument dimension " + std::to_string(dim_) +
                         " outside [1, " + std::to_string(kMaxDim) + "]");
  }
  if (kraus_.empty()) {
    throw InvalidOperator("instrument needs at least one outcome");
  }
  CMatrix sum = CMatrix::Zero(dim_, dim_);
  for (const auto& list : kraus_) {
    if (list.empty()) {
      throw InvalidOperator("every outcome needs at least one Kraus operator");
    }
    for (const auto& k : list) {
      if (k.rows() != dim_ || k.cols() != dim_) {
        throw DimensionError("Kraus operator is not " + std::to_string(dim_) +
                             "x" + std::to_string(dim_));
      }
      check_finite(k, "Kraus operator");
      if (operator_norm(k) > 1.0 + kOpTol) {
        throw InvalidOperator("Kraus operator norm exceeds 1");
      }
      sum += k.adjoint() * k;
    }
  }
  if (max_abs(sum - CMatrix::Identity(dim_, dim_)) > kOpTol) {
    throw InvalidOperator(
        "Kraus completeness violated: sum K^dag K deviates from identity by " +
        std::to_string(max_abs(sum - CMatrix::Identity(dim_, dim_))));
  }
}

Instrument Instrument::identity(int dim) {
  return Instrument(dim, {{CMatrix::Identity(dim, dim)}});
}

const std::vector<CMatrix>& Instrument::kraus(int outcome) const {
  check_outcome_range(outcome, num_outcomes());
  return kraus_[outcome];
}

CMatrix Instrument::apply(int outcome, const CMatrix& operand) const {
  check_outcome_range(outcome, num_outcomes());
  check_same_dim(static_cast<int>(operand.rows()), dim_, "instrument operand");
  check_same_dim(static_cast<int>(operand.cols()), dim_, "instrument operand");
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (const auto& k : kraus_[outcome]) out += k * operand * k.adjoint();
  return out;
}

POVM povm_of(const Instrument& instrument) {
  POVM povm;
  povm.dim = instrument.dim();
  for (int w = 0; w < instrument.num_outcomes(); ++w) {
    CMatrix m = CMatrix::Zero(povm.dim, povm.dim);
    for (const auto& k : instrument.kraus(w)) m += k.adjoint() * k;
    povm.elements.push_back(0.5 * (m + m.adjoint()));
  }
  return povm;
}

double outcome_probability(const Instrument& instrument, int outcome,
                           const DensityOperator& rho) {
  check_outcome_range(outcome, instrument.num_outcomes());
  check_same_dim(rho.dim(), instrument.dim(), "state vs instrument");
  CMatrix m = CMatrix::Zero(instrument.dim(), instrument.dim());
  for (const auto& k : instrument.kraus(outcome)) m += k.adjoint() * k;
  const double p = (rho.matrix() * m).trace().real();
  return p < 0.0 ? 0.0 : p;
}

DensityOperator posterior(const Instrument& instrument, int outcome,
                          const DensityOperator& rho) {
  check_outcome_range(outcome, instrument.num_outcomes());
  check_same_dim(rho.dim(), instrument.dim(), "state vs instrument");
  const CMatrix mapped = instrument.apply(outcome, rho.matrix());
  const double p = mapped.trace().real();
  if (p <= kProbFloor) {
    throw ZeroProbabilityOutcome("outcome " + std::to_string(outcome) +
                                 " has probability " + std::to_string(p) +
                                 " at or below the floor");
  }
  const CMatrix normalized = mapped / p;
  return DensityOperator(0.5 * (normalized + normalized.adjoint()));
}

Instrument luders_from_projectors(const std::vector<CMatrix>& projectors) {
  if (projectors.empty()) {
    throw IncompleteProjectors("empty projector family");
  }
  const int dim = static_cast<int>(projectors[0].rows());
  check_projector_family<IncompleteProjectors>(projectors, dim);
  std::vector<std::vector<CMatrix>> kraus;
  for (const auto& p : projectors) kraus.push_back({p});
  return Instrument(dim, std::move(kraus));
}

SequentialInstrument::SequentialInstrument(std::vector<Instrument> stages)
    : stages_(std::move(stages)) {
  if (stages_.empty()) {
    throw InvalidParameter("sequential composition needs at least one stage");
  }
  for (const auto& s : stages_) {
    check_same_dim(s.dim(), stages_[0].dim(), "sequential stages");
    if (s.num_outcomes() != stages_[0].num_outcomes()) {
      throw DimensionError("sequential stages have different outcome counts");
    }
  }
}

CMatrix SequentialInstrument::apply(std::span<const int> outcomes,
                                    const CMatrix& operand) const {
  if (static_cast<int>(outcomes.size()) != num_stages()) {
    throw InvalidParameter("outcome tuple length " +
                           std::to_string(outcomes.size()) +
                           " does not match stage count " +
                           std::to_string(num_stages()));
  }
  CMatrix current = operand;
  for (int n = 0; n < num_stages(); ++n) {
    current = stages_[n].apply(outcomes[n], current);
  }
  return current;
}

double SequentialInstrument::probability(std::span<const int> outcomes,
                                         const DensityOperator& rho) const {
  const double p = apply(outcomes, rho.matrix()).trace().real();
  return p < 0.0 ? 0.0 : p;
}

SequentialInstrument compose_sequential(std::vector<Instrument> stages) {
  return SequentialInstrument(std::move(stages));
}

StatisticalRealization::StatisticalRealization(int system_dim,
                                               DensityOperator ancilla_state,
                                               std::vector<CMatrix> projections,
                                               CMatrix unitary)
    : system_dim_(system_dim),
      ancilla_state_(std::move(ancilla_state)),
      projections_(std::move(projections)),
      unitary_(std::move(unitary)) {
  if (system_dim_ < 1 || system_dim_ > kMaxDim) {
    throw DimensionError("system dimension " + std::to_string(system_dim_) +
                         " outside [1, " + std::to_string(kMaxDim) + "]");
  }
  if (projections_.empty()) {
    throw InvalidRealization("realization needs at least one outcome");
  }
  try {
    check_projector_family<InvalidRealization>(projections_, ancilla_dim());
  } catch (const InvalidOperator& e) {
    throw InvalidRealization(e.what());
  }
  const int total = system_dim_ * ancilla_dim();
  if (unitary_.rows() != total || unitary_.cols() != total) {
    throw InvalidRealization("unitary is not " + std::to_string(total) + "x" +
                             std::to_string(total));
  }
  check_finite(unitary_, "realization unitary");
  if (max_abs(unitary_.adjoint() * unitary_ -
              CMatrix::Identity(total, total)) > 1e-10) {
    throw InvalidRealization("matrix is not unitary");
  }
}

Instrument instrument_from_realization(const StatisticalRealization& xi) {
  const int d = xi.system_dim();
  const int a = xi.ancilla_dim();
  const HermitianEig sigma = eig_hermitian(xi.ancilla_state().matrix());
  std::vector<std::vector<CMatrix>> kraus(xi.num_outcomes());
  for (int w = 0; w < xi.num_outcomes(); ++w) {
    const CMatrix b = tensor(CMatrix::Identity(d, d), xi.projections()[w]) *
                      xi.unitary();
    for (int m = 0; m < a; ++m) {
      if (sigma.eigenvalues(m) <= kTolFloor) continue;  // null weight
      const double root = std::sqrt(sigma.eigenvalues(m));
      for (int k = 0; k < a; ++k) {
        CMatrix op(d, d);
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) {
            Complex sum = 0.0;
            for (int t = 0; t < a; ++t) {
              sum += b(i * a + k, j * a + t) * sigma.eigenvectors(t, m);
            }
            op(i, j) = root * sum;
          }
        }
        kraus[w].push_back(std::move(op));
      }
    }
  }
  return Instrument(d, std::move(kraus));
}

std::vector<CMatrix> kraus_from_dilation(const StatisticalRealization& xi) {
  const int d = xi.system_dim();
  const int a = xi.ancilla_dim();
  const HermitianEig sigma = eig_hermitian(xi.ancilla_state().matrix());
  if (sigma.eigenvalues(0) < 1.0 - 1e-10) {
    throw NotPureDilation("ancilla state is not pure");
  }
  const CVector b = sigma.eigenvectors.col(0);
  std::vector<CMatrix> kraus;
  for (int w = 0; w < xi.num_outcomes(); ++w) {
    const CMatrix& p = xi.projections()[w];
    if (std::abs(p.trace().real() - 1.0) > 1e-10) {
      throw NotPureDilation("ancilla projection " + std::to_string(w) +
                            " is not rank one");
    }
    const CVector ket = eig_hermitian(p).eigenvectors.col(0);
    CMatrix op(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        Complex sum = 0.0;
        for (int t = 0; t < a; ++t) {
          for (int s = 0; s < a; ++s) {
            sum += std::conj(ket(t)) * xi.unitary()(i * a + t, j * a + s) *
                   b(s);
          }
        }
        op(i, j) = sum;
      }
    }
    kraus.push_back(std::move(op));
  }
  return kraus;
}

}  // namespace seqdisc
