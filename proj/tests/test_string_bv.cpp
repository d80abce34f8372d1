#include <doctest.h>

#include <random>

#include "stringbv/parse.hpp"
#include "stringbv/string_bv.hpp"

using namespace sbv;

namespace {
Element el(const AlgebraSpec& s, const char* text) { return parse_element(s, text); }
}  // namespace

TEST_CASE("Dlcop examples") {
  BVContext so3{LoopModel(preset("so3"))};
  const auto& L = so3.loop();
  CHECK(so3.dlcop(el(L, "x1*x2"), el(L, "x1*x2")) == el(L, "x1*x2 + x1*y2 + y3"));
  BVContext g2{LoopModel(preset("g2"))};
  const auto& G = g2.loop();
  CHECK(g2.dlcop(el(G, "x3*x5*x6"), el(G, "x5*x6")) == el(G, "x5*x6 + x5*y6 + y4*y7"));
  for (const char* p : {"so3", "g2", "t3", "su3"}) {
    BVContext ctx{LoopModel(preset(p))};
    CHECK(ctx.dlcop(ctx.loop().ext_gen(0), ctx.loop().one()).is_zero());
  }
}

TEST_CASE("units") {
  BVContext so3{LoopModel(preset("so3"))};
  CHECK(so3.unit() == el(so3.loop(), "x1*x2 + x1*y2 + y3"));
  BVContext g2{LoopModel(preset("g2"))};
  CHECK(g2.unit() == el(g2.loop(), "x3*x5*x6 + x3*x5*y6 + x3*y4*y7 + y7^2"));
  BVContext t3{LoopModel(preset("t3"))};
  CHECK(t3.unit() == el(t3.loop(), "x1*x2*x3"));
}

TEST_CASE("closed form examples") {
  std::mt19937_64 rng(4);
  BVContext t3{LoopModel(preset("t3", 0))};
  const auto& L = t3.loop();
  for (int t = 0; t < 20; ++t) {
    Element b = random_element(L, t % 8, rng);
    if (b.is_zero()) continue;
    CHECK(t3.m_closed_form(t3.model().top(), b) == b);
    Element p = random_element(t3.model().base(), 2 * (t % 3), rng);
    for (uint64_t I = 0; I < t3.model().full_mask(); ++I)
      CHECK(t3.m_closed_form(multiply(L, p, L.ext_monomial(I)), L.one()).is_zero());
  }
  Element v = t3.m_closed_form(el(L, "x1*x2"), el(L, "x2*x3"));
  CHECK(v == t3.m(el(L, "x1*x2"), el(L, "x2*x3")));
  CHECK((v == el(L, "x2") || v == -el(L, "x2")));
  BVContext so3{LoopModel(preset("so3"))};
  CHECK_THROWS_AS(so3.m_closed_form(so3.unit(), so3.unit()), Error);
}

TEST_CASE("strip order does not change m") {
  std::mt19937_64 rng(12);
  for (auto [name, p] : {std::pair{"so3", 2u}, std::pair{"g2", 2u}, std::pair{"t3", 3u}, std::pair{"su3", 0u}}) {
    BVContext ctx{LoopModel(preset(name, p))};
    for (int t = 0; t < 100; ++t) {
      Element a = random_element(ctx.loop(), t % 12, rng), b = random_element(ctx.loop(), (t * 5) % 13, rng);
      if (a.is_zero() || b.is_zero()) continue;
      Element left = ctx.m_with_order(a, b, StripOrder::Leftmost);
      CHECK(ctx.m_with_order(a, b, StripOrder::Rightmost) == left);
      CHECK(ctx.m_with_order(a, b, StripOrder::Random, &rng) == left);
    }
  }
}

TEST_CASE("bracket examples") {
  std::mt19937_64 rng(13);
  BVContext so3{LoopModel(preset("so3"))};
  const auto& L = so3.loop();
  for (int t = 0; t < 50; ++t) {
    Element a = random_element(L, t % 9, rng);
    if (a.is_zero()) continue;
    CHECK(so3.bracket(a, a) == so3.delta(so3.m(a, a)));
    CHECK(so3.bracket(so3.unit(), a).is_zero());
    CHECK(so3.shifted_bracket(so3.unit(), a).is_zero());
  }
  const uint64_t full = so3.model().full_mask();
  for (uint64_t I = 0; I <= full; ++I)
    for (uint64_t J = 0; J <= full; ++J)
      CHECK(so3.bracket(L.ext_monomial(I), L.ext_monomial(J)) ==
            so3.bracket(L.ext_monomial(I | J), L.ext_monomial(I & J)));
}

TEST_CASE("canonical splitting examples") {
  BVContext so3{LoopModel(preset("so3"))};
  const auto& L = so3.loop();
  const uint64_t full = so3.model().full_mask();
  CHECK(so3.canonical_splitting(L.one(), full) == so3.unit());
  CHECK(so3.canonical_splitting(el(L, "y2"), full) == multiply(L, el(L, "y2"), so3.unit()));
  for (uint64_t I = 0; I <= full; ++I)
    for (uint64_t J = 0; J <= full; ++J) {
      Element lhs = so3.m(so3.canonical_splitting(el(L, "y2"), I), so3.canonical_splitting(el(L, "y3"), J));
      Element rhs = (I | J) == full ? so3.canonical_splitting(el(L, "y2*y3"), I & J) : Element{};
      CHECK(lhs == rhs);
    }
  BVContext t2{LoopModel(preset("t2"))};
  CHECK_THROWS_AS(t2.canonical_splitting(t2.loop().one(), 0), Error);
}

TEST_CASE("verify suites pass and are deterministic") {
  for (auto [name, p] : {std::pair{"so3", 2u}, std::pair{"g2", 2u}, std::pair{"t3", 3u}, std::pair{"su3", 5u}, std::pair{"t2", 0u}}) {
    BVContext ctx{LoopModel(preset(name, p))};
    VerifyOptions opts;
    opts.samples = 60;
    opts.seed = 99;
    auto one = verify(ctx, opts);
    for (const auto& c : one.checks) {
      INFO(name << "/" << c.name << ": " << c.counterexample);
      CHECK(c.passed());
    }
    opts.threads = 1;
    auto two = verify(ctx, opts);
    REQUIRE(one.checks.size() == two.checks.size());
    for (std::size_t i = 0; i < one.checks.size(); ++i) CHECK(one.checks[i].samples == two.checks[i].samples);
  }
  BVContext so3{LoopModel(preset("so3"))};
  VerifyOptions bad;
  bad.checks = {"nope"};
  CHECK_THROWS_AS(verify(so3, bad), Error);
  bad.checks = {"closed-form"};
  CHECK_THROWS_AS(verify(so3, bad), Error);
}

TEST_CASE("shifted bracket satisfies the Poisson rule where the plain one does not") {
  // With d odd the bracket built from |a| instead of |a| - d is not a
  // biderivation of m; the shifted one is.
  std::mt19937_64 rng(31);
  BVContext t3{LoopModel(preset("t3", 0))};
  const auto& L = t3.loop();
  const int d = t3.d();
  bool plain_fails = false;
  for (int t = 0; t < 100; ++t) {
    int da = t % 6, db = (t / 2) % 6, dc = (t / 3) % 6;
    Element a = random_element(L, da, rng), b = random_element(L, db, rng), c = random_element(L, dc, rng);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    auto poisson = [&](auto br) {
      Element lhs = br(a, t3.m(b, c));
      Element rhs = t3.m(br(a, b), c) +
                    t3.m(b, br(a, c)).scaled(Scalar::sign_pow(0, (da - d - 1) * (db - d)));
      return lhs == rhs;
    };
    CHECK(poisson([&](const Element& x, const Element& y) { return t3.shifted_bracket(x, y); }));
    plain_fails |= !poisson([&](const Element& x, const Element& y) { return t3.bracket(x, y); });
  }
  CHECK(plain_fails);
}
