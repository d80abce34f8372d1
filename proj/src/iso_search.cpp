#include "stringbv/iso_search.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "stringbv/linalg.hpp"

namespace sbv {

// ------------------------------------------------------------- PresentedBV

int PresentedBV::min_degree() const {
  int lo = 0;
  for (const auto& g : carrier().poly_gens())
    if (g.degree <= 0) throw Error("polynomial generator " + g.name + " of nonpositive degree");
  for (const auto& g : carrier().ext_gens())
    if (g.degree < 0) lo += g.degree;
  return lo;
}

std::vector<Element> PresentedBV::generators() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < carrier().num_ext(); ++i) out.push_back(carrier().ext_gen(i));
  for (std::size_t i = 0; i < carrier().num_poly(); ++i) out.push_back(carrier().poly_gen(i));
  return out;
}

std::vector<std::string> PresentedBV::generator_names() const {
  std::vector<std::string> out;
  for (const auto& g : carrier().ext_gens()) out.push_back(g.name);
  for (const auto& g : carrier().poly_gens()) out.push_back(g.name);
  return out;
}

std::optional<Element> PresentedBV::square_relation(std::size_t g) const {
  if (g < carrier().num_ext()) return carrier().square_rules()[g];
  return std::nullopt;
}

HochschildBV::HochschildBV(HHAlgebra hh, std::string name)
    : hh_(std::move(hh)), name_(std::move(name)) {}

LoopBV::LoopBV(const BVContext& ctx, std::string name) : ctx_(ctx), name_(std::move(name)) {}

std::vector<Monomial> LoopBV::basis(int n) const {
  if (n + ctx_.d() < 0) return {};
  return basis_of_degree(ctx_.loop(), n + ctx_.d());
}

// ------------------------------------------------------- MorphismEvaluator

MorphismEvaluator::MorphismEvaluator(const PresentedBV& src, const BVAlgebra& tgt,
                                     const MorphismCandidate& cand)
    : src_(src), tgt_(tgt), cand_(cand) {}

Element MorphismEvaluator::monomial(const Monomial& m) {
  auto it = cache_.find(m);
  if (it != cache_.end()) return it->second;
  Element out;
  if (m == Monomial{}) {
    out = tgt_.unit();
  } else {
    Monomial rest = m;
    std::size_t g;
    if (m.ext != 0) {
      int i = std::countr_zero(m.ext);
      rest.ext &= rest.ext - 1;
      g = static_cast<std::size_t>(i);
    } else {
      std::size_t j = 0;
      while (m.exp[j] == 0) ++j;
      rest.exp[j] -= 1;
      g = src_.carrier().num_ext() + j;
    }
    const Element& img = cand_.images.at(g);
    out = img.is_zero() ? Element{} : tgt_.multiply(img, monomial(rest));
  }
  cache_.emplace(m, out);
  return out;
}

Element MorphismEvaluator::operator()(const Element& a) {
  Element out;
  for (const auto& [m, c] : a.terms()) out += monomial(m).scaled(c);
  return out;
}

// ----------------------------------------------------------- TransportedBV

TransportedBV::TransportedBV(AlgebraSpec spec, const BVAlgebra& target, MorphismCandidate images,
                             std::string name)
    : spec_(std::move(spec)), target_(target), images_(std::move(images)), name_(std::move(name)) {
  auto gens = generators();
  if (images_.images.size() != gens.size()) throw Error("one image per generator expected");
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const Element& img = images_.images[g];
    if (img.is_zero()) continue;
    if (!target_.carrier().is_homogeneous(img) || target_.degree(img) != degree(gens[g]))
      throw Error("image of " + spec_.format(gens[g]) + " has the wrong degree");
  }
}

Element TransportedBV::forward(const Element& a) const {
  std::lock_guard<std::mutex> lock(mu_);
  Element out;
  for (const auto& [m, c] : a.terms()) {
    auto it = forward_cache_.find(m);
    if (it == forward_cache_.end()) {
      MorphismEvaluator ev(*this, target_, images_);
      it = forward_cache_.emplace(m, ev.monomial(m)).first;
    }
    out += it->second.scaled(c);
  }
  return out;
}

Element TransportedBV::backward(const Element& b, int degree) const {
  if (b.is_zero()) return {};
  auto basis = this->basis(degree);
  std::vector<Element> cols;
  for (const auto& m : basis) cols.push_back(forward(Element(m, spec_.scalar(1))));
  auto sol = solve_linear(target_.carrier(), cols, b);
  if (!sol) throw Error("transport: element outside the image in degree " + std::to_string(degree));
  Element out;
  for (std::size_t i = 0; i < basis.size(); ++i) out.add_term(basis[i], (*sol)[i]);
  return out;
}

Element TransportedBV::delta(const Element& a) const {
  if (a.is_zero()) return {};
  return backward(target_.delta(forward(a)), degree(a) - 1);
}

Element TransportedBV::bracket(const Element& a, const Element& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  return backward(target_.bracket(forward(a), forward(b)), degree(a) + degree(b) - 1);
}

// ------------------------------------------------------------ filter chain

IsoLevel parse_level(const std::string& s) {
  if (s == "algebra") return IsoLevel::Algebra;
  if (s == "surjective") return IsoLevel::Surjective;
  if (s == "gerstenhaber") return IsoLevel::Gerstenhaber;
  if (s == "bv") return IsoLevel::BV;
  throw Error("unknown level '" + s + "' (algebra, surjective, gerstenhaber, bv)");
}

std::string level_name(IsoLevel l) {
  switch (l) {
    case IsoLevel::Algebra: return "algebra";
    case IsoLevel::Surjective: return "surjective";
    case IsoLevel::Gerstenhaber: return "gerstenhaber";
    case IsoLevel::BV: return "bv";
  }
  return "?";
}

std::size_t IsoReport::found() const {
  switch (level) {
    case IsoLevel::Algebra: return algebra.value_or(0);
    case IsoLevel::Surjective: return surjective.value_or(0);
    case IsoLevel::Gerstenhaber: return gerstenhaber.value_or(0);
    case IsoLevel::BV: return bv.value_or(0);
  }
  return 0;
}

namespace {

std::size_t row_rank(uint32_t p, const std::vector<std::vector<Scalar>>& rows, std::size_t width) {
  if (rows.empty() || width == 0) return 0;
  Matrix m(p, 0, width);
  for (const auto& r : rows) m.push_row(r);
  return rank(m);
}

Element basis_element(const AlgebraSpec& spec, const Monomial& m) {
  return Element(m, spec.scalar(1));
}

}  // namespace

IndecomposableData::IndecomposableData(const BVAlgebra& alg, int max_degree)
    : alg_(alg), max_degree_(max_degree) {
  const int lo = alg.min_degree();
  const uint32_t p = alg.prime();
  for (int n = lo; n <= max_degree; ++n) {
    auto basis = alg.basis(n);
    std::vector<std::vector<Scalar>> rows;
    for (int i = lo; i <= n - i; ++i) {
      int j = n - i;
      if (i == 0 || j == 0 || j < lo) continue;
      auto bi = alg.basis(i), bj = alg.basis(j);
      for (std::size_t s = 0; s < bi.size(); ++s)
        for (std::size_t t = (i == j ? s : 0); t < bj.size(); ++t) {
          Element prod = alg.multiply(basis_element(alg.carrier(), bi[s]),
                                      basis_element(alg.carrier(), bj[t]));
          if (!prod.is_zero()) rows.push_back(coordinates(prod, basis, p));
        }
    }
    if (n == 0) rows.push_back(coordinates(alg.unit(), basis, p));
    std::size_t r = row_rank(p, rows, basis.size());
    qdim_[n] = basis.size() - r;
    rows_[n] = std::move(rows);
  }
}

const std::vector<std::vector<Scalar>>& IndecomposableData::decomposables(int n) const {
  auto it = rows_.find(n);
  if (it == rows_.end()) throw Error("degree " + std::to_string(n) + " outside the precomputed range");
  return it->second;
}

std::size_t IndecomposableData::indecomposable_dim(int n) const {
  auto it = qdim_.find(n);
  if (it == qdim_.end()) throw Error("degree " + std::to_string(n) + " outside the precomputed range");
  return it->second;
}

namespace {

// Source generator indices sorted by (degree, index).
std::vector<std::size_t> generator_order(const PresentedBV& src) {
  auto gens = src.generators();
  std::vector<std::size_t> order(gens.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return src.degree(gens[a]) < src.degree(gens[b]);
  });
  return order;
}

// Generator indices (PresentedBV order) that occur in e.
std::vector<std::size_t> generators_in(const PresentedBV& src, const Element& e) {
  std::vector<bool> seen(src.carrier().num_ext() + src.carrier().num_poly(), false);
  for (const auto& [m, c] : e.terms()) {
    for (int i : m.ext_indices()) seen[i] = true;
    for (std::size_t j = 0; j < src.carrier().num_poly(); ++j)
      if (m.exp[j]) seen[src.carrier().num_ext() + j] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

bool surjective_in_degree(const PresentedBV& src, const BVAlgebra& tgt, const MorphismCandidate& c,
                          const IndecomposableData& q, int n) {
  std::size_t qd = q.indecomposable_dim(n);
  if (qd == 0) return true;
  auto basis = tgt.basis(n);
  auto rows = q.decomposables(n);
  std::size_t base = row_rank(tgt.prime(), rows, basis.size());
  auto gens = src.generators();
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (src.degree(gens[g]) == n && !c.images[g].is_zero())
      rows.push_back(coordinates(c.images[g], basis, tgt.prime()));
  return row_rank(tgt.prime(), rows, basis.size()) == base + qd;
}

}  // namespace

std::optional<std::size_t> candidate_count(const PresentedBV& src, const BVAlgebra& tgt) {
  const uint32_t p = tgt.prime();
  if (p == 0) return std::nullopt;
  std::size_t total = 1;
  for (const auto& g : src.generators()) {
    std::size_t dim = tgt.basis(src.degree(g)).size();
    for (std::size_t i = 0; i < dim; ++i) {
      if (total > (std::size_t{1} << 62) / p) return std::nullopt;
      total *= p;
    }
  }
  return total;
}

std::size_t enumerate_candidates(const PresentedBV& src, const BVAlgebra& tgt,
                                 const std::function<bool(const MorphismCandidate&)>& visit) {
  const uint32_t p = tgt.prime();
  if (p == 0) throw Error("candidate enumeration needs a finite field");
  auto gens = src.generators();
  auto order = generator_order(src);
  std::vector<std::vector<Monomial>> bases(gens.size());
  std::vector<std::size_t> slot_of;  // flat digit -> generator
  for (std::size_t g : order) {
    bases[g] = tgt.basis(src.degree(gens[g]));
    for (std::size_t i = 0; i < bases[g].size(); ++i) slot_of.push_back(g);
  }
  std::vector<uint32_t> digits(slot_of.size(), 0);
  std::size_t visited = 0;
  while (true) {
    MorphismCandidate c;
    c.images.resize(gens.size());
    std::size_t pos = 0;
    for (std::size_t g : order)
      for (std::size_t i = 0; i < bases[g].size(); ++i, ++pos)
        if (digits[pos] != 0) c.images[g].add_term(bases[g][i], tgt.carrier().scalar(digits[pos]));
    ++visited;
    if (!visit(c)) return visited;
    // Odometer: the last digit moves fastest.
    std::size_t k = digits.size();
    while (k > 0) {
      --k;
      if (++digits[k] < p) break;
      digits[k] = 0;
      if (k == 0) return visited;
    }
    if (digits.empty()) return visited;
  }
}

bool is_algebra_morphism(const PresentedBV& src, const BVAlgebra& tgt, const MorphismCandidate& c) {
  auto gens = src.generators();
  if (c.images.size() != gens.size()) return false;
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (!c.images[g].is_zero() &&
        (!tgt.carrier().is_homogeneous(c.images[g]) || tgt.degree(c.images[g]) != src.degree(gens[g])))
      return false;
  MorphismEvaluator ev(src, tgt, c);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    auto rel = src.square_relation(g);
    if (!rel) continue;
    if (tgt.multiply(c.images[g], c.images[g]) != ev(*rel)) return false;
  }
  return true;
}

bool is_surjective(const PresentedBV& src, const BVAlgebra& tgt, const MorphismCandidate& c,
                   const IndecomposableData& q, int max_degree) {
  for (int n = tgt.min_degree(); n <= max_degree; ++n)
    if (!surjective_in_degree(src, tgt, c, q, n)) return false;
  return true;
}

bool gerstenhaber_compatible(const PresentedBV& src, const BVAlgebra& tgt,
                             const MorphismCandidate& c) {
  auto gens = src.generators();
  MorphismEvaluator ev(src, tgt, c);
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t h = g; h < gens.size(); ++h)
      if (ev(src.bracket(gens[g], gens[h])) != tgt.bracket(c.images[g], c.images[h])) return false;
  return true;
}

bool delta_commutes(const PresentedBV& src, const BVAlgebra& tgt, const MorphismCandidate& c,
                    int max_degree) {
  MorphismEvaluator ev(src, tgt, c);
  for (int n = src.min_degree(); n <= max_degree; ++n)
    for (const auto& m : src.basis(n)) {
      Element b = basis_element(src.carrier(), m);
      if (ev(src.delta(b)) != tgt.delta(ev.monomial(m))) return false;
    }
  return true;
}

bool unit_in_image_delta(const BVAlgebra& alg) {
  const Element unit = alg.unit();
  auto basis = alg.basis(alg.degree(unit) + 1);
  std::vector<Element> cols;
  for (const auto& m : basis) cols.push_back(alg.delta(basis_element(alg.carrier(), m)));
  return solve_linear(alg.carrier(), cols, unit).has_value();
}

std::string dimension_mismatch(const BVAlgebra& a, const BVAlgebra& b, int max_degree) {
  int lo = std::min(a.min_degree(), b.min_degree());
  for (int n = lo; n <= max_degree; ++n) {
    std::size_t da = a.basis(n).size(), db = b.basis(n).size();
    if (da != db)
      return "degree " + std::to_string(n) + ": " + a.name() + " has dimension " +
             std::to_string(da) + ", " + b.name() + " has " + std::to_string(db);
  }
  return {};
}

// ------------------------------------------------------- brute-force chain

namespace {

struct ChainContext {
  const PresentedBV& src;
  const BVAlgebra& tgt;
  const IsoOptions& opts;
  const IndecomposableData& q;
  bool obstruction;
};

struct Verdict {
  int level = -1;  // highest level passed
  bool delta_commuting = false;
};

Verdict chain_verdict(const ChainContext& cx, const MorphismCandidate& c) {
  Verdict v;
  if (!is_algebra_morphism(cx.src, cx.tgt, c)) return v;
  v.level = 0;
  if (cx.opts.level == IsoLevel::Algebra) return v;
  if (!is_surjective(cx.src, cx.tgt, c, cx.q, cx.opts.max_degree)) return v;
  v.level = 1;
  if (cx.opts.level == IsoLevel::Surjective) return v;
  if (!gerstenhaber_compatible(cx.src, cx.tgt, c)) return v;
  v.level = 2;
  if (cx.opts.level == IsoLevel::Gerstenhaber) return v;
  v.delta_commuting = delta_commutes(cx.src, cx.tgt, c, cx.opts.max_degree);
  if (v.delta_commuting && !cx.obstruction) v.level = 3;
  return v;
}

void brute_force(const ChainContext& cx, IsoReport& report) {
  const unsigned workers = worker_count(cx.opts.threads);
  constexpr std::size_t kChunk = 1024;
  std::array<std::size_t, 4> counts{};
  std::size_t delta_commuting = 0;
  std::size_t scanned = 0;
  bool stop = false;
  std::vector<MorphismCandidate> chunk;
  auto flush = [&]() {
    std::vector<Verdict> verdict(chunk.size());
    auto work = [&](std::size_t begin) {
      for (std::size_t i = begin; i < chunk.size(); i += workers) verdict[i] = chain_verdict(cx, chunk[i]);
    };
    if (workers <= 1 || chunk.size() < 2) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    const int target = static_cast<int>(cx.opts.level);
    for (std::size_t i = 0; i < chunk.size() && !stop; ++i) {
      ++scanned;
      for (int l = 0; l <= verdict[i].level; ++l) ++counts[l];
      delta_commuting += verdict[i].delta_commuting;
      if (verdict[i].level >= target) {
        if (report.survivors.size() < cx.opts.keep) report.survivors.push_back(chunk[i]);
        if (cx.opts.first_only) stop = true;
      }
    }
    chunk.clear();
  };
  enumerate_candidates(cx.src, cx.tgt, [&](const MorphismCandidate& c) {
    chunk.push_back(c);
    if (chunk.size() == kChunk) flush();
    return !stop;
  });
  if (!chunk.empty() && !stop) flush();
  report.exhaustive_enumeration = true;
  report.scanned = scanned;
  report.algebra = counts[0];
  const int lvl = static_cast<int>(cx.opts.level);
  if (lvl >= 1) report.surjective = counts[1];
  if (lvl >= 2) report.gerstenhaber = counts[2];
  if (lvl >= 3) {
    report.bv = counts[3];
    report.delta_commuting = delta_commuting;
  }
}

// ------------------------------------------------------------ pruned search

class Search {
 public:
  Search(const ChainContext& cx, IsoReport& report)
      : cx_(cx), report_(report), gens_(cx.src.generators()), order_(generator_order(cx.src)) {
    const std::size_t n = gens_.size();
    pos_.resize(n);
    for (std::size_t k = 0; k < n; ++k) pos_[order_[k]] = k;
    cand_.images.resize(n);
    want_brackets_ = cx.opts.level >= IsoLevel::Gerstenhaber;
    want_delta_ = cx.opts.level >= IsoLevel::BV;
    want_surjective_ = cx.opts.level >= IsoLevel::Surjective;
    // Ready position of each deferred check: when all generators it mentions are assigned.
    auto ready = [&](std::initializer_list<std::size_t> own, const Element& e) {
      std::size_t r = 0;
      for (std::size_t g : own) r = std::max(r, pos_[g]);
      for (std::size_t g : generators_in(cx.src, e)) r = std::max(r, pos_[g]);
      return r;
    };
    for (std::size_t g = 0; g < n; ++g) {
      if (auto rel = cx.src.square_relation(g)) relations_.push_back({g, g, *rel, ready({g}, *rel)});
      if (want_delta_) {
        Element dg = cx.src.delta(gens_[g]);
        deltas_.push_back({g, g, dg, ready({g}, dg)});
      }
      if (want_brackets_)
        for (std::size_t h = g; h < n; ++h) {
          Element b = cx.src.bracket(gens_[g], gens_[h]);
          brackets_.push_back({g, h, b, ready({g, h}, b)});
        }
    }
  }

  void run() {
    if (want_surjective_) {
      // Indecomposables in degrees carrying no source generator rule out surjectivity.
      for (int n = cx_.tgt.min_degree(); n <= cx_.opts.max_degree; ++n) {
        bool has_gen = false;
        for (const auto& g : gens_) has_gen |= cx_.src.degree(g) == n;
        if (!has_gen && cx_.q.indecomposable_dim(n) > 0) return;
      }
    }
    if (want_delta_ && cx_.obstruction) return;
    recurse(0);
  }

  std::size_t found = 0;

 private:
  struct Check {
    std::size_t g, h;
    Element source_value;
    std::size_t ready;
  };

  const ChainContext& cx_;
  IsoReport& report_;
  std::vector<Element> gens_;
  std::vector<std::size_t> order_, pos_;
  MorphismCandidate cand_;
  std::vector<Check> relations_, deltas_, brackets_;
  bool want_brackets_ = false, want_delta_ = false, want_surjective_ = false;
  bool stop_ = false;
  std::size_t nodes_ = 0;
  static constexpr std::size_t kNodeBudget = 50'000'000;

  bool recurse(std::size_t k) {
    if (stop_) return false;
    if (k == order_.size()) return leaf();
    const std::size_t g = order_[k];
    const int n = cx_.src.degree(gens_[g]);
    const uint32_t p = cx_.tgt.prime();
    auto basis = cx_.tgt.basis(n);
    const std::size_t r = basis.size();
    std::vector<Element> bvec;
    for (const auto& m : basis) bvec.push_back(basis_element(cx_.tgt.carrier(), m));

    // Affine constraints sum_j t_j L_j(B_j) = value, from checks linear in the new image.
    std::vector<std::pair<std::vector<Element>, Element>> eqs;
    MorphismEvaluator ev(cx_.src, cx_.tgt, cand_);
    for (const auto& c : brackets_) {
      if (c.ready != k || c.g == c.h) continue;
      std::size_t other = c.g == g ? c.h : c.g;
      if (pos_[other] >= k) continue;
      auto mentioned = generators_in(cx_.src, c.source_value);
      if (std::find(mentioned.begin(), mentioned.end(), g) != mentioned.end()) continue;
      std::vector<Element> cols;
      for (const auto& b : bvec)
        cols.push_back(c.g == g ? cx_.tgt.bracket(b, cand_.images[other])
                                : cx_.tgt.bracket(cand_.images[other], b));
      eqs.push_back({std::move(cols), ev(c.source_value)});
    }
    for (const auto& c : deltas_) {
      if (c.ready != k || c.g != g) continue;
      auto mentioned = generators_in(cx_.src, c.source_value);
      if (std::find(mentioned.begin(), mentioned.end(), g) != mentioned.end()) continue;
      std::vector<Element> cols;
      for (const auto& b : bvec) cols.push_back(cx_.tgt.delta(b));
      eqs.push_back({std::move(cols), ev(c.source_value)});
    }

    // Assemble one linear system over the union of monomials of each equation.
    Matrix mat(p, 0, r);
    std::vector<Scalar> rhs;
    for (const auto& [cols, value] : eqs) {
      std::map<Monomial, std::size_t, MonomialLess> idx;
      for (const auto& col : cols)
        for (const auto& [m, c] : col.terms()) idx.try_emplace(m, idx.size());
      for (const auto& [m, c] : value.terms()) idx.try_emplace(m, idx.size());
      std::vector<std::vector<Scalar>> rows(idx.size(), std::vector<Scalar>(r, Scalar::zero(p)));
      std::vector<Scalar> vals(idx.size(), Scalar::zero(p));
      for (std::size_t j = 0; j < r; ++j)
        for (const auto& [m, c] : cols[j].terms()) rows[idx.at(m)][j] = c;
      for (const auto& [m, c] : value.terms()) vals[idx.at(m)] = c;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        mat.push_row(rows[i]);
        rhs.push_back(vals[i]);
      }
    }
    std::vector<Scalar> particular(r, Scalar::zero(p));
    std::vector<std::vector<Scalar>> kernel;
    if (mat.rows() > 0) {
      auto sol = solve_affine(mat, rhs);
      if (!sol) return true;
      particular = sol->particular;
      kernel = sol->kernel;
    } else {
      for (std::size_t j = 0; j < r; ++j) {
        std::vector<Scalar> v(r, Scalar::zero(p));
        v[j] = Scalar::one(p);
        kernel.push_back(v);
      }
    }

    // Enumerate particular + span(kernel) in odometer order.
    std::vector<uint32_t> digits(kernel.size(), 0);
    while (true) {
      if (++nodes_ > kNodeBudget) throw Error("isomorphism search exceeded its node budget");
      std::vector<Scalar> coef = particular;
      for (std::size_t i = 0; i < kernel.size(); ++i)
        if (digits[i])
          for (std::size_t j = 0; j < r; ++j) coef[j] += kernel[i][j] * Scalar::from_int(p, digits[i]);
      Element img;
      for (std::size_t j = 0; j < r; ++j) img.add_term(basis[j], coef[j]);
      cand_.images[g] = img;
      if (node_ok(k) && !recurse(k + 1)) return false;
      std::size_t i = digits.size();
      bool done = true;
      while (i > 0) {
        --i;
        if (++digits[i] < p) {
          done = false;
          break;
        }
        digits[i] = 0;
      }
      if (done) break;
    }
    cand_.images[g] = Element{};
    return true;
  }

  // Checks that become decidable once the generator at position k is assigned.
  bool node_ok(std::size_t k) {
    MorphismEvaluator ev(cx_.src, cx_.tgt, cand_);
    const std::size_t g = order_[k];
    for (const auto& c : relations_)
      if (c.ready == k &&
          cx_.tgt.multiply(cand_.images[c.g], cand_.images[c.g]) != ev(c.source_value))
        return false;
    for (const auto& c : brackets_) {
      if (c.ready != k) continue;
      bool linear = c.g != c.h && (c.g == g || c.h == g) && pos_[c.g == g ? c.h : c.g] < k;
      if (linear) {
        auto mentioned = generators_in(cx_.src, c.source_value);
        if (std::find(mentioned.begin(), mentioned.end(), g) == mentioned.end()) continue;
      }
      if (cx_.tgt.bracket(cand_.images[c.g], cand_.images[c.h]) != ev(c.source_value)) return false;
    }
    for (const auto& c : deltas_) {
      if (c.ready != k) continue;
      if (c.g == g) {
        auto mentioned = generators_in(cx_.src, c.source_value);
        if (std::find(mentioned.begin(), mentioned.end(), g) == mentioned.end()) continue;
      }
      if (cx_.tgt.delta(cand_.images[c.g]) != ev(c.source_value)) return false;
    }
    if (want_surjective_) {
      const int n = cx_.src.degree(gens_[g]);
      if (n <= cx_.opts.max_degree && n >= cx_.tgt.min_degree()) {
        bool block_done = k + 1 == order_.size() || cx_.src.degree(gens_[order_[k + 1]]) != n;
        if (block_done && !surjective_in_degree(cx_.src, cx_.tgt, cand_, cx_.q, n)) return false;
        if (!block_done && !independent_so_far(k, n)) return false;
      }
    }
    return true;
  }

  // With exactly dim Q_n generators in degree n, their images must stay
  // independent modulo decomposables.
  bool independent_so_far(std::size_t k, int n) {
    std::size_t in_degree = 0;
    for (const auto& h : gens_) in_degree += cx_.src.degree(h) == n;
    if (in_degree != cx_.q.indecomposable_dim(n)) return true;
    auto basis = cx_.tgt.basis(n);
    auto rows = cx_.q.decomposables(n);
    const uint32_t p = cx_.tgt.prime();
    std::size_t base = row_rank(p, rows, basis.size()), assigned = 0;
    for (std::size_t j = 0; j <= k; ++j) {
      std::size_t h = order_[j];
      if (cx_.src.degree(gens_[h]) != n) continue;
      ++assigned;
      rows.push_back(coordinates(cand_.images[h], basis, p));
    }
    return row_rank(p, rows, basis.size()) == base + assigned;
  }

  bool leaf() {
    if (!is_algebra_morphism(cx_.src, cx_.tgt, cand_)) return true;
    if (want_delta_ && !delta_commutes(cx_.src, cx_.tgt, cand_, cx_.opts.max_degree)) return true;
    ++found;
    if (report_.survivors.size() < cx_.opts.keep) report_.survivors.push_back(cand_);
    if (cx_.opts.first_only) {
      stop_ = true;
      return false;
    }
    return true;
  }
};

}  // namespace

IsoReport find_isomorphisms(const PresentedBV& src, const BVAlgebra& tgt, const IsoOptions& opts) {
  IsoReport report;
  report.level = opts.level;
  report.max_degree = opts.max_degree;
  if (src.prime() != tgt.prime()) throw Error("source and target have different coefficients");
  if (tgt.prime() == 0) throw Error("isomorphism search needs a finite field");
  report.dimension_mismatch = dimension_mismatch(src, tgt, opts.max_degree);
  bool obstruction = false;
  if (opts.level == IsoLevel::BV) {
    if (!src.has_delta() || !tgt.has_delta()) throw Error("BV level needs a BV operator on both sides");
    report.source_unit_in_image = unit_in_image_delta(src);
    report.target_unit_in_image = unit_in_image_delta(tgt);
    obstruction = report.obstruction();
  }
  if (!report.dimension_mismatch.empty()) {
    report.scanned = 0;
    report.algebra = 0;
    if (opts.level >= IsoLevel::Surjective) report.surjective = 0;
    if (opts.level >= IsoLevel::Gerstenhaber) report.gerstenhaber = 0;
    if (opts.level >= IsoLevel::BV) report.bv = 0;
    return report;
  }
  IndecomposableData q(tgt, opts.max_degree);
  ChainContext cx{src, tgt, opts, q, obstruction};
  auto count = candidate_count(src, tgt);
  if (count && *count <= opts.brute_force_limit) {
    brute_force(cx, report);
    return report;
  }
  Search search(cx, report);
  search.run();
  switch (opts.level) {
    case IsoLevel::Algebra: report.algebra = search.found; break;
    case IsoLevel::Surjective: report.surjective = search.found; break;
    case IsoLevel::Gerstenhaber: report.gerstenhaber = search.found; break;
    case IsoLevel::BV: report.bv = search.found; break;
  }
  return report;
}

std::vector<std::pair<Monomial, Element>> transport_delta(const TransportedBV& alg, int max_degree) {
  std::vector<std::pair<Monomial, Element>> out;
  for (int n = alg.min_degree(); n <= max_degree; ++n)
    for (const auto& m : alg.basis(n)) out.push_back({m, alg.delta(basis_element(alg.carrier(), m))});
  return out;
}

// ----------------------------------------------------------------- presets

HHAlgebra hochschild_of_homology(const LoopModel& model) {
  const auto& ext = model.loop().ext_gens();
  bool degree_named = true;
  for (const auto& g : ext)
    if (g.name != "x" + std::to_string(g.degree)) degree_named = false;
  std::vector<HHGenerator> gens;
  for (std::size_t i = 0; i < model.rank(); ++i) {
    const auto& y = model.presentation().generators[i];
    std::string name = degree_named ? "xm" + std::to_string(ext[i].degree) : "h" + ext[i].name;
    gens.push_back({name, 1 - y.degree, true, y.name});
  }
  return HHAlgebra(gens, model.prime());
}

SplittingData preset_splitting(const std::string& preset, const BVContext& ctx) {
  const AlgebraSpec& loop = ctx.loop();
  const uint32_t p = ctx.prime();
  auto lit = [&](std::initializer_list<const char*> names) {
    Element e = loop.one();
    for (const char* n : names) {
      if (auto i = loop.find_ext(n)) e = multiply(loop, e, loop.ext_gen(*i));
      else if (auto j = loop.find_poly(n)) e = multiply(loop, e, loop.poly_gen(*j));
      else throw Error(std::string("unknown generator ") + n);
    }
    return e;
  };
  SplittingData out;
  if (preset == "so3") {
    out.spec = AlgebraSpec(p, {{"v2", 2}, {"v3", 3}}, {{"um1", -1}, {"um2", -2}});
    out.images.images = {lit({"x2"}), lit({"x1"}), multiply(loop, lit({"y2"}), ctx.unit()),
                         multiply(loop, lit({"y3"}), ctx.unit())};
  } else if (preset == "g2") {
    out.spec = AlgebraSpec(p, {{"v4", 4}, {"v6", 6}, {"v7", 7}},
                           {{"um3", -3}, {"um5", -5}, {"um6", -6}});
    out.images.images = {lit({"x5", "x6"}), lit({"x3", "x6"}), lit({"x3", "x5"}),
                         multiply(loop, lit({"y4"}), ctx.unit()),
                         multiply(loop, lit({"y6"}), ctx.unit()),
                         multiply(loop, lit({"y7"}), ctx.unit())};
  } else {
    throw Error("no algebra splitting is shipped for preset '" + preset + "'");
  }
  return out;
}

}  // namespace sbv
