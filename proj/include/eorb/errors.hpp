#pragma once

#include <stdexcept>
#include <string>

namespace eorb {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Input shapes disagree with the ambient dimension of the group.
class DimensionError : public Error
{
public:
  using Error::Error;
};

/// A matrix that must be skew-symmetric is not, within tolerance.
class NotSkew : public Error
{
public:
  using Error::Error;
};

/// A value violates a documented invariant (orthogonality, membership in h, ...).
class InvariantViolation : public Error
{
public:
  using Error::Error;
};

/// The underlying numerical factorisation did not produce a usable result.
class DecompositionError : public Error
{
public:
  using Error::Error;
};

/// Operation is only defined for some group families.
class UnsupportedFamily : public Error
{
public:
  using Error::Error;
};

class MalformedSignature : public Error
{
public:
  using Error::Error;
};

/// Two orbit classes are not joined by any bundle edge.
class NotRelated : public Error
{
public:
  using Error::Error;
};

/// Linear momentum p vanishes where a non-zero p is required.
class ZeroMomentum : public Error
{
public:
  using Error::Error;
};

/// Line tangents are not attached to the given oriented line.
class LineMismatch : public Error
{
public:
  using Error::Error;
};

/// Coadjoint point is not on an orbit through some (0, p).
class NotOnLineOrbit : public Error
{
public:
  using Error::Error;
};

/// Malformed external input (JSON schema, CLI arguments).
class InputError : public Error
{
public:
  using Error::Error;
};

}  // namespace eorb
