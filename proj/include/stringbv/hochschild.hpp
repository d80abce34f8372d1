#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stringbv/algebra.hpp"

namespace sbv {

/// A generator v of V. Exterior generators span U, the others W.
/// The dual generator s^{-1}v^ has degree 1 - degree and is polynomial when v
/// is exterior, exterior otherwise.
struct HHGenerator {
  std::string name;
  int degree = 0;
  bool exterior = true;
  std::string dual_name;  // empty = "d" + name
};

enum class PeelOrder { Front, Back };

/// The model A (x) S(s^{-1}V^) of Hochschild cohomology of A = S(V).
class HHAlgebra {
 public:
  HHAlgebra(std::vector<HHGenerator> gens, uint32_t p);

  const AlgebraSpec& spec() const { return spec_; }
  uint32_t prime() const { return spec_.prime(); }
  std::size_t rank() const { return gens_.size(); }
  const std::vector<HHGenerator>& generators() const { return gens_; }
  Element gen(std::size_t k) const;
  Element dual(std::size_t k) const;
  /// True when the BV operator is available (all of V exterior and p = 2 or
  /// every degree odd).
  bool has_delta() const;

  Element bracket(const Element& a, const Element& b) const;
  Element delta(const Element& a, PeelOrder order = PeelOrder::Front) const;

 private:
  struct Slot {
    bool exterior;
    std::size_t index;
  };
  std::vector<HHGenerator> gens_;
  std::vector<Slot> gen_slot_, dual_slot_;
  AlgebraSpec spec_;

  // Generator factors of a monomial, in an order whose product is the monomial.
  std::vector<Element> factors(const Monomial& m) const;
  Element generator_bracket(const Element& g, const Element& h) const;
  Element bracket_gen_mono(const Element& g, const std::vector<Element>& fs, std::size_t from) const;
  Element bracket_mono(const Monomial& a, const Monomial& b) const;
  Element delta_mono(const Monomial& m, PeelOrder order) const;
};

// --------------------------------------------------- finite-dimensional side

/// Finite-dimensional graded algebra with an explicit basis (index 0 is the
/// unit) and dense structure constants.
class FiniteAlgebra {
 public:
  /// Lambda(V), V with the given degrees; products carry Koszul signs.
  static FiniteAlgebra exterior(const std::vector<int>& degrees, uint32_t p);
  /// K[x]/x^{n+1}, x of the given degree.
  static FiniteAlgebra truncated_polynomial(int degree, unsigned n, uint32_t p);

  uint32_t prime() const { return p_; }
  std::size_t dim() const { return degrees_.size(); }
  int degree(std::size_t i) const { return degrees_[i]; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::size_t>& generators() const { return generators_; }
  /// e_i * e_j as a coordinate vector.
  const std::vector<Scalar>& product(std::size_t i, std::size_t j) const {
    return table_[i * dim() + j];
  }
  std::vector<Scalar> multiply(const std::vector<Scalar>& a, const std::vector<Scalar>& b) const;
  /// e_i = coef * e_gen * e_rest for i > 0.
  struct Factorization {
    std::size_t gen, rest;
    Scalar coef;
  };
  const Factorization& factorization(std::size_t i) const { return fact_[i]; }
  std::size_t top() const { return top_; }

 private:
  uint32_t p_ = 2;
  std::vector<int> degrees_;
  std::vector<std::string> names_;
  std::vector<std::size_t> generators_;
  std::vector<std::vector<Scalar>> table_;
  std::vector<Factorization> fact_;
  std::size_t top_ = 0;
};

/// Graded trace: coefficient of the top basis element.
struct TraceData {
  std::size_t top = 0;
  Scalar operator()(const std::vector<Scalar>& v) const { return v[top]; }
};

/// Standard trace; throws if the induced pairing is degenerate.
TraceData standard_trace(const FiniteAlgebra& a);

/// A linear endomorphism given on the basis: images[j] = d(e_j).
struct Derivation {
  int degree = 0;
  std::vector<std::vector<Scalar>> images;
};

/// Extends generator images by the Leibniz rule; throws if the result is not
/// a well-defined derivation.
Derivation derivation_from_generators(const FiniteAlgebra& a, int degree,
                                      const std::vector<std::vector<Scalar>>& gen_images);
bool is_derivation(const FiniteAlgebra& a, const Derivation& d);

/// A derivation d of the given degree with tr o d = tr, or nullopt. For
/// degree 0 its existence is equivalent to the unit lying in Im Delta.
std::optional<Derivation> unit_in_image_delta_via_derivation(const FiniteAlgebra& a,
                                                             const TraceData& tr,
                                                             int degree = 0);

/// Whether Delta([d o s^{-1}]) = [a], i.e. (-1)^{1+|d|} tr(d(a0)) = tr(a a0)
/// for every basis element a0.
bool delta_of_derivation_class(const FiniteAlgebra& alg, const TraceData& tr,
                               const Derivation& d, const std::vector<Scalar>& a);

}  // namespace sbv
