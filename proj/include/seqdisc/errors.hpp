#pragma once

#include <stdexcept>
#include <string>

namespace seqdisc {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operator fails a structural requirement (non-square, non-Hermitian,
/// non-finite entries, completeness/trace-preservation violated, ...).
class InvalidOperator : public Error {
 public:
  using Error::Error;
};

/// Matrix or Hilbert-space dimensions are inconsistent or exceed the
/// supported cap.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Bloch vector lies outside the unit ball.
class InvalidBlochVector : public Error {
 public:
  using Error::Error;
};

/// A posterior state was requested for an outcome whose probability is at or
/// below the probability floor.
class ZeroProbabilityOutcome : public Error {
 public:
  using Error::Error;
};

/// A projector family is not a complete orthogonal resolution of identity.
class IncompleteProjectors : public Error {
 public:
  using Error::Error;
};

/// An indirect-measurement realization violates one of its structural
/// constraints (unitary, ancilla projections, dimensions).
class InvalidRealization : public Error {
 public:
  using Error::Error;
};

/// Kraus extraction in the rank-one form was requested from a realization
/// whose ancilla state or projections are not rank one.
class NotPureDilation : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter is out of range (probabilities, noise strengths,
/// grid sizes, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// An operation restricted to a fixed number of hypotheses (typically two)
/// received an ensemble of a different size.
class WrongArity : public Error {
 public:
  using Error::Error;
};

/// The spectrum lacks the sign structure required by the construction
/// (e.g. a rotated optimal protocol needs both spectral projectors nonzero).
class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

/// Supplied measurement data fail the optimality condition they are required
/// to satisfy.
class ConditionNotSatisfied : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace seqdisc
