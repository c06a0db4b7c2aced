#pragma once

#include <stdexcept>
#include <string>

namespace pqvw {

/// Base class of every failure raised by the algebra kernels.
class AlgebraError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Exact division was requested but the divisor does not divide the dividend.
class NotDivisible : public AlgebraError
{
public:
  using AlgebraError::AlgebraError;
};

/// The q -> 1 limit of a one-parameter value does not exist.
class PoleAtOne : public AlgebraError
{
public:
  using AlgebraError::AlgebraError;
};

class BadArity : public AlgebraError
{
public:
  using AlgebraError::AlgebraError;
};

/// The recursive bracket and the closed form differ by something other than +-1.
class InconsistentSign : public AlgebraError
{
public:
  using AlgebraError::AlgebraError;
};

/// A word sum does not act on the Fock module as a multiple of a single generator.
class NotProportional : public AlgebraError
{
public:
  using AlgebraError::AlgebraError;
};

class UnexpectedZero : public AlgebraError
{
public:
  using AlgebraError::AlgebraError;
};

class ZeroCoefficient : public AlgebraError
{
public:
  using AlgebraError::AlgebraError;
};

} // namespace pqvw
