// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace mubsim {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &message) : std::runtime_error(message) {}
};

// A dimension was zero, too small, or otherwise unusable.
class InvalidDim : public Error {
  public:
    using Error::Error;
};

// Two objects that must share a dimension do not.
class DimMismatch : public Error {
  public:
    using Error::Error;
};

// An index was outside the valid range of its container.
class IndexOutOfRange : public Error {
  public:
    using Error::Error;
};

// A matrix required to be Hermitian is not, beyond tolerance.
class NotHermitian : public Error {
  public:
    using Error::Error;
};

// An iterative solver failed to reach its convergence threshold.
class NoConvergence : public Error {
  public:
    using Error::Error;
};

// A set of vectors required to be orthonormal is not, beyond tolerance.
class NotOrthonormal : public Error {
  public:
    using Error::Error;
};

// A basis family required to be mutually unbiased is not, beyond
// tolerance.
class NotUnbiased : public Error {
  public:
    using Error::Error;
};

// A quantum state (or probability vector) violates its defining
// constraints: Hermiticity, unit trace, positivity, or normalization.
class InvalidState : public Error {
  public:
    using Error::Error;
};

// A plain argument (shot count, trial count, ...) is out of range.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

// The requested dimension falls outside the supported family.
class UnsupportedDim : public Error {
  public:
    using Error::Error;
};

// The requested dimension is not prime. Specialization of UnsupportedDim:
// handlers for the broader class also catch this one.
class NotPrime : public UnsupportedDim {
  public:
    using UnsupportedDim::UnsupportedDim;
};

// A full basis set must hold exactly dim+1 bases.
class WrongBasisCount : public Error {
  public:
    using Error::Error;
};

// Weight vector length does not match the object it weights.
class WeightCountMismatch : public Error {
  public:
    using Error::Error;
};

// Mixture weights are negative or do not sum to one.
class InvalidWeights : public Error {
  public:
    using Error::Error;
};

// The matrix handed to the affine inverse is not in the map's image:
// (N+1)*rho - I has an eigenvalue below -tolerance.
class NotInRelationImage : public Error {
  public:
    using Error::Error;
};

// Leading eigenvalue is not separated from the rest of the spectrum,
// so no unique leading eigenvector exists.
class DegenerateLeadingEigenvalue : public Error {
  public:
    using Error::Error;
};

// Spectrum does not match the two-level profile expected of the
// post-measurement image of a pure state.
class SpectrumMismatch : public Error {
  public:
    using Error::Error;
};

// Three Bloch directions span less than three dimensions.
class CoplanarDirections : public Error {
  public:
    using Error::Error;
};

// Too few trial states to determine a stable affine fit.
class DegenerateTrialSet : public Error {
  public:
    using Error::Error;
};

} // namespace mubsim
