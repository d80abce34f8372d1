#include "stringbv/scalar.hpp"

namespace sbv {

namespace {

uint32_t reduce(int64_t k, uint32_t p) {
  int64_t r = k % static_cast<int64_t>(p);
  if (r < 0) r += p;
  return static_cast<uint32_t>(r);
}

}  // namespace

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Scalar Scalar::zero(uint32_t p) { return from_int(p, 0); }
Scalar Scalar::one(uint32_t p) { return from_int(p, 1); }

Scalar Scalar::from_int(uint32_t p, int64_t k) {
  Scalar s;
  s.p_ = p;
  if (p == 0)
    s.v_ = mpq_class(static_cast<long>(k));
  else
    s.v_ = reduce(k, p);
  return s;
}

Scalar Scalar::from_rational(const mpq_class& q) {
  Scalar s;
  s.p_ = 0;
  mpq_class c = q;
  c.canonicalize();
  s.v_ = c;
  return s;
}

Scalar Scalar::sign_pow(uint32_t p, int64_t k) {
  return from_int(p, (k % 2 == 0) ? 1 : -1);
}

bool Scalar::is_zero() const {
  if (p_ == 0) return sgn(rational()) == 0;
  return residue() == 0;
}

bool Scalar::is_one() const {
  if (p_ == 0) return rational() == 1;
  return residue() == 1 % p_;
}

void Scalar::check_same(const Scalar& o) const {
  if (p_ != o.p_)
    throw Error("scalar characteristic mismatch: " + std::to_string(p_) +
                " vs " + std::to_string(o.p_));
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.p_ = p_;
  if (p_ == 0) {
    s.v_ = mpq_class(rational() + o.rational());
  } else {
    uint64_t r = static_cast<uint64_t>(residue()) + o.residue();
    s.v_ = static_cast<uint32_t>(r % p_);
  }
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s;
  s.p_ = p_;
  if (p_ == 0)
    s.v_ = mpq_class(-rational());
  else
    s.v_ = residue() == 0 ? 0u : p_ - residue();
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.p_ = p_;
  if (p_ == 0) {
    s.v_ = mpq_class(rational() * o.rational());
  } else {
    uint64_t r = static_cast<uint64_t>(residue()) * o.residue();
    s.v_ = static_cast<uint32_t>(r % p_);
  }
  return s;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error("inversion of zero scalar");
  Scalar s;
  s.p_ = p_;
  if (p_ == 0) {
    s.v_ = mpq_class(1 / rational());
    return s;
  }
  // Extended Euclid on (residue, p).
  int64_t a = residue(), m = p_, x0 = 1, x1 = 0;
  while (m != 0) {
    int64_t q = a / m;
    int64_t t = a - q * m;
    a = m;
    m = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  s.v_ = reduce(x0, p_);
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  if (p_ != o.p_) return false;
  if (p_ == 0) return rational() == o.rational();
  return residue() == o.residue();
}

std::string Scalar::to_string() const {
  if (p_ == 0) return rational().get_str();
  return std::to_string(residue());
}

}  // namespace sbv
