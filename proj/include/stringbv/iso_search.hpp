#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "stringbv/hochschild.hpp"
#include "stringbv/string_bv.hpp"

namespace sbv {

/// A graded-commutative algebra with bracket and (optionally) BV operator,
/// whose degree pieces are spanned by monomials of a carrier spec.
class BVAlgebra {
 public:
  virtual ~BVAlgebra() = default;

  virtual std::string name() const = 0;
  virtual const AlgebraSpec& carrier() const = 0;
  uint32_t prime() const { return carrier().prime(); }
  virtual int degree(const Element& a) const = 0;
  virtual int min_degree() const = 0;
  virtual std::vector<Monomial> basis(int n) const = 0;
  virtual Element multiply(const Element& a, const Element& b) const = 0;
  virtual Element bracket(const Element& a, const Element& b) const = 0;
  virtual bool has_delta() const { return true; }
  virtual Element delta(const Element& a) const = 0;
  virtual Element unit() const = 0;

  std::string format(const Element& e) const { return carrier().format(e); }
};

/// A free graded-commutative algebra whose generators are those of its
/// carrier spec; the only relations are the exterior squares.
class PresentedBV : public BVAlgebra {
 public:
  int degree(const Element& a) const override { return carrier().degree(a).value_or(0); }
  int min_degree() const override;
  std::vector<Monomial> basis(int n) const override { return basis_of_degree(carrier(), n); }
  Element multiply(const Element& a, const Element& b) const override {
    return sbv::multiply(carrier(), a, b);
  }
  Element unit() const override { return carrier().one(); }

  /// Generators: exterior ones first, then polynomial ones.
  std::vector<Element> generators() const;
  std::vector<std::string> generator_names() const;
  /// Value of g^2 required by the relations (0 for exterior generators).
  std::optional<Element> square_relation(std::size_t g) const;
};

/// Hochschild model A (x) S(s^{-1}V^).
class HochschildBV : public PresentedBV {
 public:
  explicit HochschildBV(HHAlgebra hh, std::string name = "HH");
  std::string name() const override { return name_; }
  const AlgebraSpec& carrier() const override { return hh_.spec(); }
  Element bracket(const Element& a, const Element& b) const override { return hh_.bracket(a, b); }
  bool has_delta() const override { return hh_.has_delta(); }
  Element delta(const Element& a) const override { return hh_.delta(a); }
  const HHAlgebra& hh() const { return hh_; }

 private:
  HHAlgebra hh_;
  std::string name_;
};

/// H*(LX) with the product m, shifted grading |a| - d and the shifted bracket.
class LoopBV : public BVAlgebra {
 public:
  explicit LoopBV(const BVContext& ctx, std::string name = "loop");
  std::string name() const override { return name_; }
  const AlgebraSpec& carrier() const override { return ctx_.loop(); }
  int degree(const Element& a) const override { return ctx_.degree(a) - ctx_.d(); }
  int min_degree() const override { return -ctx_.d(); }
  std::vector<Monomial> basis(int n) const override;
  Element multiply(const Element& a, const Element& b) const override { return ctx_.m(a, b); }
  Element bracket(const Element& a, const Element& b) const override {
    return ctx_.shifted_bracket(a, b);
  }
  Element delta(const Element& a) const override { return ctx_.delta(a); }
  Element unit() const override { return ctx_.unit(); }
  const BVContext& context() const { return ctx_; }

 private:
  const BVContext& ctx_;
  std::string name_;
};

/// Images of the source generators (in PresentedBV::generators() order).
struct MorphismCandidate {
  std::vector<Element> images;
};

/// Applies a candidate to source elements, memoizing monomial images.
class MorphismEvaluator {
 public:
  MorphismEvaluator(const PresentedBV& src, const BVAlgebra& tgt, const MorphismCandidate& cand);
  Element operator()(const Element& a);
  Element monomial(const Monomial& m);

 private:
  const PresentedBV& src_;
  const BVAlgebra& tgt_;
  const MorphismCandidate& cand_;
  std::map<Monomial, Element, MonomialLess> cache_;
};

/// Free algebra Lambda(u) (x) K[v] carrying the BV structure of a target
/// transported along an algebra isomorphism given on generators.
class TransportedBV : public PresentedBV {
 public:
  TransportedBV(AlgebraSpec spec, const BVAlgebra& target, MorphismCandidate images,
                std::string name = "transported");
  std::string name() const override { return name_; }
  const AlgebraSpec& carrier() const override { return spec_; }
  Element bracket(const Element& a, const Element& b) const override;
  Element delta(const Element& a) const override;
  /// phi and phi^{-1} between this algebra and the target.
  Element forward(const Element& a) const;
  Element backward(const Element& b, int degree) const;
  const MorphismCandidate& images() const { return images_; }

 private:
  AlgebraSpec spec_;
  const BVAlgebra& target_;
  MorphismCandidate images_;
  std::string name_;
  mutable std::mutex mu_;
  mutable std::map<Monomial, Element, MonomialLess> forward_cache_;
};

// ------------------------------------------------------------ filter chain

enum class IsoLevel { Algebra = 0, Surjective = 1, Gerstenhaber = 2, BV = 3 };
IsoLevel parse_level(const std::string& s);
std::string level_name(IsoLevel l);

/// Per-degree data of a target used by the surjectivity test.
class IndecomposableData {
 public:
  IndecomposableData(const BVAlgebra& alg, int max_degree);
  /// Span of decomposables (and the unit in degree 0) in degree n, as rows of
  /// coordinates against alg.basis(n).
  const std::vector<std::vector<Scalar>>& decomposables(int n) const;
  std::size_t indecomposable_dim(int n) const;

 private:
  const BVAlgebra& alg_;
  int max_degree_;
  std::map<int, std::vector<std::vector<Scalar>>> rows_;
  std::map<int, std::size_t> qdim_;
};

/// Streams the full cartesian product of generator images (all coefficient
/// vectors over the per-generator degree bases). Stops when `visit` returns
/// false. Returns the number of candidates visited.
std::size_t enumerate_candidates(const PresentedBV& src, const BVAlgebra& tgt,
                                 const std::function<bool(const MorphismCandidate&)>& visit);
/// Product of p^dim over the generators; nullopt on overflow or p = 0.
std::optional<std::size_t> candidate_count(const PresentedBV& src, const BVAlgebra& tgt);

bool is_algebra_morphism(const PresentedBV& src, const BVAlgebra& tgt, const MorphismCandidate& c);
bool is_surjective(const PresentedBV& src, const BVAlgebra& tgt, const MorphismCandidate& c,
                   const IndecomposableData& q, int max_degree);
bool gerstenhaber_compatible(const PresentedBV& src, const BVAlgebra& tgt,
                             const MorphismCandidate& c);
/// Delta commutes with phi on full source bases up to max_degree.
bool delta_commutes(const PresentedBV& src, const BVAlgebra& tgt, const MorphismCandidate& c,
                    int max_degree);
bool unit_in_image_delta(const BVAlgebra& alg);

/// Degreewise dimension comparison on [min, max_degree]; empty when equal.
std::string dimension_mismatch(const BVAlgebra& a, const BVAlgebra& b, int max_degree);

struct IsoReport {
  IsoLevel level = IsoLevel::BV;
  int max_degree = 0;
  bool exhaustive_enumeration = false;  // brute force over all raw candidates
  std::optional<std::size_t> scanned, algebra, surjective, gerstenhaber, bv;
  /// Gerstenhaber survivors commuting with Delta up to max_degree, counted
  /// independently of the unit obstruction (exhaustive enumeration only).
  std::optional<std::size_t> delta_commuting;
  std::vector<MorphismCandidate> survivors;
  std::string dimension_mismatch;
  std::optional<bool> source_unit_in_image, target_unit_in_image;
  bool obstruction() const {
    return source_unit_in_image && target_unit_in_image &&
           *source_unit_in_image != *target_unit_in_image;
  }
  std::size_t found() const;
};

struct IsoOptions {
  IsoLevel level = IsoLevel::BV;
  int max_degree = 8;
  bool first_only = false;
  /// Brute force when the raw candidate count is at most this, else search.
  std::size_t brute_force_limit = 1u << 16;
  unsigned threads = 0;
  /// Survivors kept in the report; counting continues past this.
  std::size_t keep = 256;
};

/// Runs the filter chain (algebra -> surjective -> Gerstenhaber -> BV).
IsoReport find_isomorphisms(const PresentedBV& src, const BVAlgebra& tgt, const IsoOptions& opts);

/// phi^{-1} o Delta o phi on every source basis monomial of degree in
/// [min, max_degree].
std::vector<std::pair<Monomial, Element>> transport_delta(const TransportedBV& alg,
                                                          int max_degree);

// ----------------------------------------------------------------- presets

/// HH*(H_*(G)) for a loop preset: V = exterior generators of degree 1 - |y_i|,
/// duals named after the y_i.
HHAlgebra hochschild_of_homology(const LoopModel& model);

/// The free algebra Lambda(u_{|y|-1-d}...) (x) K[v_{|y|}] with the generator
/// images of the preset algebra isomorphism onto H*(LX) (so3 and g2 only).
struct SplittingData {
  AlgebraSpec spec;
  MorphismCandidate images;
};
SplittingData preset_splitting(const std::string& preset, const BVContext& ctx);

}  // namespace sbv
