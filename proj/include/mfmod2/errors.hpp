#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mfmod2 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A coefficient outside the known window was requested.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// An argument violates a congruence or range condition (index, prime, q).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionError : public Error {
 public:
  enum class Kind { kValuation, kZeroDivisor };
  DivisionError(Kind kind, std::uint64_t exponent, const std::string& what)
      : Error(what), kind_(kind), exponent_(exponent) {}
  Kind kind() const { return kind_; }
  std::uint64_t exponent() const { return exponent_; }

 private:
  Kind kind_;
  std::uint64_t exponent_;
};

// Greedy D_k reduction hit a leading exponent that cannot be an index.
class NotInWError : public Error {
 public:
  NotInWError(std::uint64_t exponent, const std::string& what)
      : Error(what), exponent_(exponent) {}
  std::uint64_t exponent() const { return exponent_; }

 private:
  std::uint64_t exponent_;
};

class InsufficientPrecisionError : public Error {
 public:
  using Error::Error;
};

class IdentityViolation : public Error {
 public:
  IdentityViolation(std::string identity, std::uint64_t exponent)
      : Error("identity '" + identity + "' fails at exponent " + std::to_string(exponent)),
        identity_(std::move(identity)),
        exponent_(exponent) {}
  const std::string& identity() const { return identity_; }
  std::uint64_t exponent() const { return exponent_; }

 private:
  std::string identity_;
  std::uint64_t exponent_;
};

// A computation contradicted a structural fact the algorithms rely on.
class InternalError : public Error {
 public:
  using Error::Error;
};

// A Hecke expression failed validation on the basis vector with pair (a, b).
class InconsistencyError : public Error {
 public:
  InconsistencyError(std::uint64_t a, std::uint64_t b, const std::string& what)
      : Error(what + " at (" + std::to_string(a) + "," + std::to_string(b) + ")"), a_(a), b_(b) {}
  std::uint64_t a() const { return a_; }
  std::uint64_t b() const { return b_; }

 private:
  std::uint64_t a_;
  std::uint64_t b_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfmod2
