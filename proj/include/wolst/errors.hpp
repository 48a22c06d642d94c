#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wolst {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModulus : public Error {
 public:
  using Error::Error;
};

class ModulusMismatch : public Error {
 public:
  using Error::Error;
};

/// An element shares the factor `gcd` with the modulus.
class NonInvertible : public Error {
 public:
  NonInvertible(std::string gcd, std::size_t index = 0, const std::string& what = "")
      : Error(what.empty() ? "not invertible: gcd " + gcd + " at index " + std::to_string(index)
                           : what),
        gcd_(std::move(gcd)),
        index_(index) {}

  const std::string& gcd() const { return gcd_; }
  std::size_t index() const { return index_; }

 private:
  std::string gcd_;
  std::size_t index_;
};

class NonInvertibleDenominator : public NonInvertible {
 public:
  NonInvertibleDenominator(std::string gcd, std::size_t index = 0)
      : NonInvertible(gcd, index, "denominator shares factor " + gcd + " with the modulus") {}
};

class NonCoprimeModuli : public Error {
 public:
  NonCoprimeModuli(std::size_t first, std::size_t second, const std::string& gcd)
      : Error("moduli at " + std::to_string(first) + " and " + std::to_string(second) +
              " share factor " + gcd),
        first_(first),
        second_(second),
        gcd_(gcd) {}

  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }
  const std::string& gcd() const { return gcd_; }

 private:
  std::size_t first_;
  std::size_t second_;
  std::string gcd_;
};

class ValuationTooNegative : public Error {
 public:
  using Error::Error;
};

class InsufficientPrecision : public Error {
 public:
  using Error::Error;
};

class BadFactorization : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class OddIndex : public Error {
 public:
  using Error::Error;
};

class PrecisionUnreachable : public Error {
 public:
  using Error::Error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

class NonUnit : public Error {
 public:
  using Error::Error;
};

class UnknownCheckId : public Error {
 public:
  using Error::Error;
};

class ParamsOutOfDomain : public Error {
 public:
  using Error::Error;
};

class InvalidRange : public Error {
 public:
  using Error::Error;
};

class FastMethodNotValidated : public Error {
 public:
  using Error::Error;
};

class ResumeMismatch : public Error {
 public:
  using Error::Error;
};

class CheckpointCorrupt : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace wolst
