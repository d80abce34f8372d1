#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "stringbv/loop_model.hpp"

namespace sbv {

/// Which exterior factor of the right argument the inductive algorithm
/// strips first. The result does not depend on the choice.
enum class StripOrder { Leftmost, Rightmost, Random };

/// The dual loop coproduct on H*(LX) for a loop model, with its unit.
class BVContext {
 public:
  explicit BVContext(LoopModel model);

  const LoopModel& model() const { return model_; }
  const AlgebraSpec& loop() const { return model_.loop(); }
  uint32_t prime() const { return model_.prime(); }
  int d() const { return model_.d(); }
  bool hypothesis_h() const { return model_.hypothesis_h(); }
  const Element& unit() const { return unit_; }

  /// Degree of a homogeneous element (0 for the zero element).
  int degree(const Element& a) const;

  Element dlcop(const Element& a, const Element& b) const;
  /// m(a, b) = (-1)^{d(|a|-d)} Dlcop(a, b).
  Element m(const Element& a, const Element& b) const;
  /// m computed with an explicit stripping order (Random uses `rng`).
  Element m_with_order(const Element& a, const Element& b, StripOrder order,
                       std::mt19937_64* rng = nullptr) const;
  /// Explicit formula, valid under hypothesis (H) only.
  Element m_closed_form(const Element& a, const Element& b) const;

  Element delta(const Element& a) const { return model_.delta(a); }

  /// {a,b} = (-1)^{|a|} D(m(a,b)) - (-1)^{|a|} m(Da, b) - m(a, Db).
  Element bracket(const Element& a, const Element& b) const;
  /// Same formula with |a| replaced by the shifted degree |a| - d.
  Element shifted_bracket(const Element& a, const Element& b) const;

  /// psi(P (x) x_K) = Dlcop(x_1...x_N, P x_K); p = 2 only.
  Element canonical_splitting(const Element& poly, uint64_t mask) const;

 private:
  LoopModel model_;
  Element unit_;

  Element m_right_ext(const Element& a, int deg_a, uint64_t mask, StripOrder order,
                      std::mt19937_64* rng) const;
};

// ------------------------------------------------------------ verification

struct CheckResult {
  std::string name;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::string counterexample;  // first failing sample, empty when all pass
  bool passed() const { return failures == 0; }
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

struct VerifyOptions {
  std::set<std::string> checks;  // empty = all applicable
  std::size_t samples = 200;
  uint64_t seed = 1;
  int max_degree = -1;  // -1 = 3d
  unsigned threads = 0;  // 0 = STRINGBV_THREADS or hardware concurrency
};

/// Names accepted by verify(), in report order.
const std::vector<std::string>& verify_check_names();

VerifyReport verify(const BVContext& ctx, const VerifyOptions& opts);

/// Uniform random homogeneous element of degree n with 1-3 terms and nonzero
/// coefficients; zero when the degree piece is empty.
Element random_element(const AlgebraSpec& spec, int n, std::mt19937_64& rng,
                       std::size_t max_terms = 3);

/// Worker count from STRINGBV_THREADS, defaulting to the hardware.
unsigned worker_count(unsigned requested = 0);

}  // namespace sbv
