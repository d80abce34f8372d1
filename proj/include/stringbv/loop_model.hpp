#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stringbv/algebra.hpp"

namespace sbv {

/// User-facing description of a polynomial cohomology ring H*(BG; F_p).
/// sq_top maps a generator name to the literal of Sq^{|y|-1} y (p = 2 only).
struct Presentation {
  uint32_t prime = 2;
  std::vector<Generator> generators;
  std::map<std::string, std::string> sq_top;
};

/// The realized algebras: base = K[y], loop = K[y] (x) simple system on
/// x_i = D(y_i), fiber = simple system on s_i = i*(x_i).
class LoopModel {
 public:
  explicit LoopModel(Presentation pres);

  const Presentation& presentation() const { return pres_; }
  const AlgebraSpec& base() const { return base_; }
  const AlgebraSpec& loop() const { return loop_; }
  const AlgebraSpec& fiber() const { return fiber_; }
  uint32_t prime() const { return pres_.prime; }
  std::size_t rank() const { return pres_.generators.size(); }
  /// Degree of x_1...x_N.
  int d() const { return d_; }
  /// True when every loop square rule vanishes.
  bool hypothesis_h() const { return !loop_.has_square_rules(); }
  /// True when some fiber square rule is nonzero (fiber is not exterior).
  bool fiber_rules_nonzero() const { return fiber_.has_square_rules(); }
  /// Top Steenrod class of generator i as a base element.
  const Element& sq_top(std::size_t i) const { return sq_[i]; }

  uint64_t full_mask() const;
  Element top() const { return loop_.ext_monomial(full_mask()); }
  Element fiber_top() const { return fiber_.ext_monomial(full_mask()); }

  /// D(P) = sum_j x_j dP/dy_j for P in the base.
  Element derivation_D(const Element& p) const;
  Element delta(const Element& a) const;
  Element restrict_i(const Element& a) const;
  Element antipode(const Element& u) const;
  Scalar tau(const Element& u) const;

  /// Base polynomial part of a loop monomial, as a base element.
  Element poly_part(const Monomial& m, const Scalar& c) const;

 private:
  Presentation pres_;
  AlgebraSpec base_, loop_, fiber_;
  std::vector<Element> sq_;
  int d_ = 0;
};

/// Shipped catalog: "so3", "g2" (p = 2), "t<n>" (torus rank n, default p = 3),
/// "su<n>" (degrees 4..2n, default p = 5). `prime` overrides the default for
/// the torus and SU families.
Presentation preset(const std::string& name, std::optional<uint32_t> prime = std::nullopt);
std::vector<std::string> preset_names();

/// JSON presentation document, in and out.
Presentation parse_presentation(const std::string& text);
std::string serialize_presentation(const Presentation& pres);

}  // namespace sbv
