#include <algorithm>
#include <bit>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

#include "stringbv/string_bv.hpp"

namespace sbv {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

const std::vector<std::string>& verify_check_names() {
  static const std::vector<std::string> names = {
      "delta",      "comm",       "assoc",    "unit",
      "bv",         "module",     "derivation", "iterated",
      "bracket-derivation", "bracket-module", "section",
      "oracle",     "confluence", "closed-form", "mod2"};
  return names;
}

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("STRINGBV_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

Element random_element(const AlgebraSpec& spec, int n, std::mt19937_64& rng,
                       std::size_t max_terms) {
  auto basis = basis_of_degree(spec, n);
  if (basis.empty()) return {};
  const uint32_t p = spec.prime();
  while (true) {
    Element e;
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, max_terms)(rng);
    for (std::size_t t = 0; t < k; ++t) {
      const Monomial& m = basis[std::uniform_int_distribution<std::size_t>(0, basis.size() - 1)(rng)];
      int64_t c;
      if (p == 0)
        c = std::uniform_int_distribution<int64_t>(-3, 3)(rng);
      else
        c = std::uniform_int_distribution<int64_t>(1, p - 1)(rng);
      e.add_term(m, spec.scalar(c));
    }
    if (!e.is_zero()) return e;
  }
}

namespace {

Scalar sign(uint32_t p, int64_t k) { return Scalar::sign_pow(p, ((k % 2) + 2) % 2); }

class Sampler {
 public:
  Sampler(const BVContext& ctx, int max_degree, std::mt19937_64& rng)
      : ctx_(ctx), max_degree_(max_degree), rng_(rng) {}

  // Random nonzero homogeneous loop element of degree in [lo, max_degree].
  Element loop_element(int lo = 0) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      int n = std::uniform_int_distribution<int>(lo, std::max(lo, max_degree_))(rng_);
      Element e = random_element(ctx_.loop(), n, rng_);
      if (!e.is_zero()) return e;
    }
    return ctx_.loop().one();
  }

  Element loop_element_of_degree(int n) { return random_element(ctx_.loop(), n, rng_); }

  // Random nonzero polynomial of positive degree at most the largest generator degree.
  Element polynomial() {
    int top = 0;
    for (const auto& g : ctx_.model().base().poly_gens()) top = std::max(top, g.degree);
    for (int attempt = 0; attempt < 1000; ++attempt) {
      int n = std::uniform_int_distribution<int>(1, std::max(1, top))(rng_);
      Element e = random_element(ctx_.model().base(), n, rng_, 2);
      if (!e.is_zero()) return e;
    }
    return ctx_.model().base().one();
  }

 private:
  const BVContext& ctx_;
  int max_degree_;
  std::mt19937_64& rng_;
};

struct Sample {
  bool ok = true;
  std::string detail;
};

using SampleFn = std::function<Sample(std::mt19937_64&)>;

std::string fmt(const BVContext& ctx, const Element& e) { return ctx.loop().format(e); }

Sample expect_equal(const BVContext& ctx, const Element& lhs, const Element& rhs,
                    const std::string& inputs) {
  if (lhs == rhs) return {};
  return {false, inputs + "; lhs = " + fmt(ctx, lhs) + ", rhs = " + fmt(ctx, rhs)};
}

Element mul(const BVContext& ctx, const Element& a, const Element& b) {
  return multiply(ctx.loop(), a, b);
}

SampleFn make_check(const BVContext& ctx, const std::string& name, int max_degree) {
  const uint32_t p = ctx.prime();
  const int d = ctx.d();
  auto sh = [&ctx, d](const Element& a) { return ctx.degree(a) - d; };

  if (name == "delta")
    return [&ctx, max_degree, p](std::mt19937_64& rng) -> Sample {
      Sampler s(ctx, max_degree, rng);
      Element a = s.loop_element(), b = s.loop_element();
      Element dd = ctx.delta(ctx.delta(a));
      if (!dd.is_zero()) return {false, "a = " + fmt(ctx, a) + "; delta(delta(a)) = " + fmt(ctx, dd)};
      Element lhs = ctx.delta(mul(ctx, a, b));
      Element rhs = mul(ctx, ctx.delta(a), b) +
                    mul(ctx, a, ctx.delta(b)).scaled(sign(p, ctx.degree(a)));
      return expect_equal(ctx, lhs, rhs, "a = " + fmt(ctx, a) + ", b = " + fmt(ctx, b));
    };
  if (name == "comm")
    return [&ctx, max_degree, p, sh](std::mt19937_64& rng) -> Sample {
      Sampler s(ctx, max_degree, rng);
      Element a = s.loop_element(), b = s.loop_element();
      return expect_equal(ctx, ctx.m(b, a), ctx.m(a, b).scaled(sign(p, int64_t{sh(a)} * sh(b))),
                          "a = " + fmt(ctx, a) + ", b = " + fmt(ctx, b));
    };
  if (name == "assoc")
    return [&ctx, max_degree](std::mt19937_64& rng) -> Sample {
      Sampler s(ctx, max_degree, rng);
      Element a = s.loop_element(), b = s.loop_element(), c = s.loop_element();
      return expect_equal(ctx, ctx.m(ctx.m(a, b), c), ctx.m(a, ctx.m(b, c)),
                          "a = " + fmt(ctx, a) + ", b = " + fmt(ctx, b) + ", c = " + fmt(ctx, c));
    };
  if (name == "unit")
    return [&ctx, max_degree](std::mt19937_64& rng) -> Sample {
      Sampler s(ctx, max_degree, rng);
      Element b = s.loop_element();
      Sample r = expect_equal(ctx, ctx.m(ctx.unit(), b), b, "left unit, b = " + fmt(ctx, b));
      if (!r.ok) return r;
      return expect_equal(ctx, ctx.m(b, ctx.unit()), b, "right unit, b = " + fmt(ctx, b));
    };
  if (name == "bv")
    return [&ctx, max_degree, p, sh](std::mt19937_64& rng) -> Sample {
      Sampler s(ctx, max_degree, rng);
      Element a = s.loop_element(), b = s.loop_element(), c = s.loop_element();
      const int ea = sh(a), eb = sh(b);
      auto D = [&](const Element& x) { return ctx.delta(x); };
      auto M = [&](const Element& x, const Element& y) { return ctx.m(x, y); };
      Element lhs = D(M(M(a, b), c));
      Element rhs = M(D(M(a, b)), c) + M(a, D(M(b, c))).scaled(sign(p, ea)) +
                    M(b, D(M(a, c))).scaled(sign(p, int64_t{ea + 1} * eb)) - M(M(D(a), b), c) -
                    M(M(a, D(b)), c).scaled(sign(p, ea)) -
                    M(M(a, b), D(c)).scaled(sign(p, ea + eb));
      return expect_equal(ctx, lhs, rhs,
                          "a = " + fmt(ctx, a) + ", b = " + fmt(ctx, b) + ", c = " + fmt(ctx, c));
    };
  if (name == "module")
    return [&ctx, max_degree, p, sh](std::mt19937_64& rng) -> Sample {
      Sampler s(ctx, max_degree, rng);
      Element a = s.loop_element(), b = s.loop_element();
      Element P = s.polynomial(), Q = s.polynomial();
      int dq = ctx.degree(Q);
      Element lhs = ctx.m(mul(ctx, P, a), mul(ctx, Q, b));
      Element rhs = mul(ctx, mul(ctx, P, Q), ctx.m(a, b)).scaled(sign(p, int64_t{sh(a)} * dq));
      return expect_equal(ctx, lhs, rhs,
                          "P = " + fmt(ctx, P) + ", Q = " + fmt(ctx, Q) + ", a = " + fmt(ctx, a) +
                              ", b = " + fmt(ctx, b));
    };
  if (name == "derivation")
    return [&ctx, max_degree, p, sh](std::mt19937_64& rng) -> Sample {
      Sampler s(ctx, max_degree, rng);
      Element a = s.loop_element(), b = s.loop_element();
      Element P = s.polynomial();
      Element X = ctx.delta(P);
      int dp = ctx.degree(P);
      Element lhs = mul(ctx, X, ctx.m(a, b));
      Element rhs = ctx.m(mul(ctx, X, a), b) +
                    ctx.m(a, mul(ctx, X, b)).scaled(sign(p, int64_t{dp - 1} * sh(a)));
      return expect_equal(ctx, lhs, rhs,
                          "P = " + fmt(ctx, P) + ", a = " + fmt(ctx, a) + ", b = " + fmt(ctx, b));
    };
  if (name == "bracket-derivation")
    return [&ctx, max_degree, p, sh](std::mt19937_64& rng) -> Sample {
      Sampler s(ctx, max_degree, rng);
      Element a = s.loop_element(), b = s.loop_element();
      Element P = s.polynomial();
      Element X = ctx.delta(P);
      int dp = ctx.degree(P);
      auto B = [&](const Element& x, const Element& y) { return ctx.shifted_bracket(x, y); };
      Element lhs = mul(ctx, X, B(a, b));
      Element rhs = B(mul(ctx, X, a), b) +
                    B(a, mul(ctx, X, b)).scaled(sign(p, int64_t{dp - 1} * (sh(a) - 1)));
      return expect_equal(ctx, lhs, rhs,
                          "P = " + fmt(ctx, P) + ", a = " + fmt(ctx, a) + ", b = " + fmt(ctx, b));
    };
  if (name == "bracket-module")
    return [&ctx, max_degree, p, sh](std::mt19937_64& rng) -> Sample {
      Sampler s(ctx, max_degree, rng);
      Element a = s.loop_element(), b = s.loop_element();
      Element P = s.polynomial();
      int dp = ctx.degree(P);
      auto B = [&](const Element& x, const Element& y) { return ctx.shifted_bracket(x, y); };
      Element lhs = B(mul(ctx, P, a), b);
      Element rhs = mul(ctx, P, B(a, b)) +
                    ctx.m(a, mul(ctx, ctx.delta(P), b)).scaled(sign(p, int64_t{dp} * (sh(a) - 1)));
      return expect_equal(ctx, lhs, rhs,
                          "P = " + fmt(ctx, P) + ", a = " + fmt(ctx, a) + ", b = " + fmt(ctx, b));
    };
  if (name == "section")
    return [&ctx, max_degree, p](std::mt19937_64& rng) -> Sample {
      Sampler s(ctx, max_degree, rng);
      Element a = s.loop_element();
      Element P = s.polynomial();
      Element sp = mul(ctx, P, ctx.unit());
      std::string in = "P = " + fmt(ctx, P) + ", a = " + fmt(ctx, a);
      Sample r = expect_equal(ctx, ctx.m(sp, a), mul(ctx, P, a), in);
      if (!r.ok) return r;
      Element lhs = mul(ctx, ctx.delta(P), a).scaled(sign(p, ctx.degree(P)));
      return expect_equal(ctx, lhs, ctx.shifted_bracket(sp, a), in + " (bracket)");
    };
  if (name == "iterated")
    return [&ctx, max_degree, p, sh](std::mt19937_64& rng) -> Sample {
      Sampler s(ctx, max_degree, rng);
      const int r = std::uniform_int_distribution<int>(1, 3)(rng);
      Element a = s.loop_element(), b = s.loop_element();
      Element P = s.polynomial(), Q = s.polynomial();
      std::vector<Element> X;
      std::vector<int> dx;
      std::string in = "P = " + fmt(ctx, P) + ", Q = " + fmt(ctx, Q);
      for (int i = 0; i < r; ++i) {
        Element Pi = s.polynomial();
        X.push_back(ctx.delta(Pi));
        dx.push_back(ctx.degree(Pi) - 1);
        in += ", P" + std::to_string(i + 1) + " = " + fmt(ctx, Pi);
      }
      in += ", a = " + fmt(ctx, a) + ", b = " + fmt(ctx, b);
      Element right = b;
      for (int i = r - 1; i >= 0; --i) right = mul(ctx, X[i], right);
      right = mul(ctx, Q, right);
      Element lhs = ctx.m(mul(ctx, P, a), right);
      int total = ctx.degree(Q);
      for (int v : dx) total += v;
      Element rhs;
      for (int js = 0; js < (1 << r); ++js) {
        int e = 0;
        Element left_factor = mul(ctx, P, Q);
        Element inside = a;
        for (int k = r - 1; k >= 0; --k)
          if (js >> k & 1) inside = mul(ctx, X[k], inside);
        for (int k = 0; k < r; ++k) {
          int jk = js >> k & 1;
          e += jk;
          if (!jk) {
            int before = 0;
            for (int l = 0; l < k; ++l) before += (js >> l & 1) * dx[l];
            e += dx[k] * before;
            left_factor = mul(ctx, left_factor, X[k]);
          }
        }
        rhs += mul(ctx, left_factor, ctx.m(inside, b)).scaled(sign(p, e));
      }
      rhs = rhs.scaled(sign(p, int64_t{sh(a)} * total));
      return expect_equal(ctx, lhs, rhs, in);
    };
  if (name == "oracle")
    return [&ctx, p, d](std::mt19937_64& rng) -> Sample {
      Sampler s(ctx, d, rng);
      const LoopModel& model = ctx.model();
      for (int attempt = 0; attempt < 100; ++attempt) {
        int da = std::uniform_int_distribution<int>(0, d)(rng);
        Element a = s.loop_element_of_degree(da), b = s.loop_element_of_degree(d - da);
        if (a.is_zero() || b.is_zero()) continue;
        Element ia = model.restrict_i(a);
        Element sb = model.antipode(model.restrict_i(b));
        Scalar t = model.tau(multiply(model.fiber(), ia, sb));
        Element rhs = ctx.loop().constant(t * sign(p, int64_t{d} * (d - da)));
        return expect_equal(ctx, ctx.m(a, b), rhs, "a = " + fmt(ctx, a) + ", b = " + fmt(ctx, b));
      }
      return {};
    };
  if (name == "confluence")
    return [&ctx, max_degree](std::mt19937_64& rng) -> Sample {
      Sampler s(ctx, max_degree, rng);
      Element a = s.loop_element(), b = s.loop_element();
      Element left = ctx.m_with_order(a, b, StripOrder::Leftmost);
      std::string in = "a = " + fmt(ctx, a) + ", b = " + fmt(ctx, b);
      Sample r = expect_equal(ctx, ctx.m_with_order(a, b, StripOrder::Rightmost), left, in);
      if (!r.ok) return r;
      return expect_equal(ctx, ctx.m_with_order(a, b, StripOrder::Random, &rng), left, in);
    };
  if (name == "closed-form")
    return [&ctx, max_degree](std::mt19937_64& rng) -> Sample {
      Sampler s(ctx, max_degree, rng);
      Element a = s.loop_element(), b = s.loop_element();
      return expect_equal(ctx, ctx.m_closed_form(a, b), ctx.m(a, b),
                          "a = " + fmt(ctx, a) + ", b = " + fmt(ctx, b));
    };
  if (name == "mod2")
    return [&ctx, max_degree](std::mt19937_64& rng) -> Sample {
      Sampler s(ctx, max_degree, rng);
      const LoopModel& model = ctx.model();
      const AlgebraSpec& spec = ctx.loop();
      const uint64_t full = model.full_mask();
      uint64_t I = std::uniform_int_distribution<uint64_t>(0, full)(rng);
      uint64_t J = std::uniform_int_distribution<uint64_t>(0, full)(rng);
      Element xi = spec.ext_monomial(I), xj = spec.ext_monomial(J);
      Element v = ctx.dlcop(xi, xj);
      std::string in = "x_I = " + fmt(ctx, xi) + ", x_J = " + fmt(ctx, xj);
      Element expected = (I | J) == full ? ctx.dlcop(model.top(), spec.ext_monomial(I & J)) : Element{};
      Sample r = expect_equal(ctx, v, expected, in);
      if (!r.ok) return r;
      if ((I | J) == full && model.restrict_i(v) != model.fiber().ext_monomial(I & J))
        return {false, in + "; fiber restriction differs"};
      Element a = s.loop_element(), b = s.loop_element();
      Element sq = ctx.dlcop(a, a);
      for (std::size_t i = 0; i < model.rank(); ++i)
        if (!mul(ctx, spec.ext_gen(i), sq).is_zero())
          return {false, "a = " + fmt(ctx, a) + "; x_i Dlcop(a,a) != 0"};
      return expect_equal(ctx, ctx.dlcop(sq, b), mul(ctx, b, ctx.dlcop(sq, spec.one())),
                          "a = " + fmt(ctx, a) + ", b = " + fmt(ctx, b));
    };
  throw Error("unknown check '" + name + "'");
}

bool applicable(const BVContext& ctx, const std::string& name) {
  if (name == "closed-form") return ctx.hypothesis_h();
  if (name == "mod2") return ctx.prime() == 2;
  return true;
}

CheckResult run_check(const BVContext& ctx, const std::string& name, std::size_t index,
                      const VerifyOptions& opts, int max_degree, unsigned workers) {
  SampleFn fn = make_check(ctx, name, max_degree);
  std::vector<Sample> results(opts.samples);
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < opts.samples; i += step) {
      std::seed_seq seq{static_cast<uint32_t>(opts.seed), static_cast<uint32_t>(opts.seed >> 32),
                        static_cast<uint32_t>(index), static_cast<uint32_t>(i)};
      std::mt19937_64 rng(seq);
      try {
        results[i] = fn(rng);
      } catch (const std::exception& e) {
        results[i] = {false, std::string("exception: ") + e.what()};
      }
    }
  };
  unsigned n = std::min<std::size_t>(workers, std::max<std::size_t>(opts.samples, 1));
  if (n <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work, t, n);
    for (auto& th : pool) th.join();
  }
  CheckResult out;
  out.name = name;
  out.samples = opts.samples;
  for (const auto& r : results) {
    if (r.ok) continue;
    if (out.failures++ == 0) out.counterexample = r.detail;
  }
  return out;
}

}  // namespace

VerifyReport verify(const BVContext& ctx, const VerifyOptions& opts) {
  const auto& names = verify_check_names();
  for (const auto& c : opts.checks)
    if (std::find(names.begin(), names.end(), c) == names.end())
      throw Error("unknown check '" + c + "'");
  const int max_degree = opts.max_degree >= 0 ? opts.max_degree : 3 * ctx.d();
  const unsigned workers = worker_count(opts.threads);
  VerifyReport report;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& name = names[i];
    if (!opts.checks.empty() && !opts.checks.count(name)) continue;
    if (!applicable(ctx, name)) {
      if (!opts.checks.empty())
        throw Error("check '" + name + "' does not apply to this presentation");
      continue;
    }
    report.checks.push_back(run_check(ctx, name, i, opts, max_degree, workers));
  }
  return report;
}

}  // namespace sbv
