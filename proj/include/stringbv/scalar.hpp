#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace sbv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact element of F_p (p prime) or of Q (p = 0).
///
/// Every scalar carries its characteristic so that arithmetic is
/// self-contained; mixing scalars of different characteristic throws.
class Scalar {
 public:
  Scalar() = default;

  static Scalar zero(uint32_t p);
  static Scalar one(uint32_t p);
  static Scalar from_int(uint32_t p, int64_t k);
  static Scalar from_rational(const mpq_class& q);  // p = 0
  /// (-1)^k in the field of characteristic p.
  static Scalar sign_pow(uint32_t p, int64_t k);

  uint32_t prime() const { return p_; }
  bool is_zero() const;
  bool is_one() const;

  /// Canonical residue in [0, p). Only valid for p > 0.
  uint32_t residue() const { return std::get<uint32_t>(v_); }
  const mpq_class& rational() const { return std::get<mpq_class>(v_); }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Multiplicative inverse; throws on zero.
  Scalar inv() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  uint32_t p_ = 2;
  std::variant<uint32_t, mpq_class> v_{uint32_t{0}};

  void check_same(const Scalar& o) const;
};

/// Simple primality check used by validation.
bool is_prime(uint32_t p);

}  // namespace sbv
