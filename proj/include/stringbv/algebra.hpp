#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stringbv/scalar.hpp"

namespace sbv {

inline constexpr std::size_t kMaxPolyGens = 16;
inline constexpr std::size_t kMaxExtGens = 32;

/// A signed-free monomial y^e * x_S: polynomial exponents plus a set of
/// exterior indices stored as a bitmask (bit i <=> x_i present).
struct Monomial {
  uint64_t ext = 0;
  std::array<uint16_t, kMaxPolyGens> exp{};

  bool operator==(const Monomial&) const = default;
  bool has_poly() const;
  uint32_t ext_count() const;
  /// Exterior indices in increasing order.
  std::vector<int> ext_indices() const;
};

/// Canonical order: exterior sets by (size, lex on sorted indices), then
/// exponent vectors graded-lex (total exponent, then lexicographic).
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse exact linear combination of monomials with nonzero coefficients.
class Element {
 public:
  using TermMap = std::map<Monomial, Scalar, MonomialLess>;

  Element() = default;
  Element(const Monomial& m, const Scalar& c) { add_term(m, c); }

  void add_term(const Monomial& m, const Scalar& c);
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of m, or nullopt when m is absent.
  std::optional<Scalar> coefficient(const Monomial& m) const;

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const;
  Element scaled(const Scalar& c) const;

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

 private:
  TermMap terms_;
};

struct Generator {
  std::string name;
  int degree = 0;
};

/// Presentation of a graded-commutative algebra K[poly] (x) Λ(ext) with
/// optional square rules x_i^2 := rule_i (empty rule means x_i^2 = 0).
class AlgebraSpec {
 public:
  AlgebraSpec() = default;
  AlgebraSpec(uint32_t prime, std::vector<Generator> poly,
              std::vector<Generator> ext, std::vector<Element> square_rules = {});

  uint32_t prime() const { return prime_; }
  const std::vector<Generator>& poly_gens() const { return poly_; }
  const std::vector<Generator>& ext_gens() const { return ext_; }
  const std::vector<Element>& square_rules() const { return rules_; }
  std::size_t num_poly() const { return poly_.size(); }
  std::size_t num_ext() const { return ext_.size(); }
  bool has_square_rules() const;

  Scalar scalar(int64_t k) const { return Scalar::from_int(prime_, k); }
  Element one() const;
  Element constant(const Scalar& c) const;
  Element poly_gen(std::size_t i) const;
  Element ext_gen(std::size_t i) const;
  /// Monomial x_S with S given by a bitmask.
  Element ext_monomial(uint64_t mask) const;

  int degree(const Monomial& m) const;
  int ext_degree(uint64_t mask) const;
  /// Degree of a homogeneous nonzero element; throws on heterogeneous input.
  /// Returns nullopt for zero.
  std::optional<int> degree(const Element& e) const;
  bool is_homogeneous(const Element& e) const;

  /// Index lookup by name across both generator lists.
  std::optional<std::size_t> find_poly(const std::string& name) const;
  std::optional<std::size_t> find_ext(const std::string& name) const;

  std::string format(const Monomial& m) const;
  std::string format(const Element& e) const;

 private:
  uint32_t prime_ = 2;
  std::vector<Generator> poly_;
  std::vector<Generator> ext_;
  std::vector<Element> rules_;

  void validate() const;
};

/// Product in normal form: exterior factors sorted with Koszul signs, repeated
/// exterior indices rewritten through the square rules.
Element multiply(const AlgebraSpec& spec, const Element& a, const Element& b);
Element multiply_many(const AlgebraSpec& spec, std::span<const Element> factors);
Element power(const AlgebraSpec& spec, const Element& a, unsigned k);

/// Formal derivative with respect to polynomial generator j.
Element partial_derivative(const AlgebraSpec& spec, const Element& p, std::size_t j);

/// Complete, deterministically ordered monomial basis of degree n.
std::vector<Monomial> basis_of_degree(const AlgebraSpec& spec, int n);

/// (-1)^{#inversions} of a sequence of pairwise distinct entries.
Scalar signature(uint32_t p, std::span<const int> seq);
int inversion_parity(std::span<const int> seq);

/// Applies f to every term, accumulating the results.
Element map_terms(const Element& e,
                  const std::function<Element(const Monomial&, const Scalar&)>& f);

}  // namespace sbv
