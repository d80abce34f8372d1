#include <doctest.h>

#include <numeric>
#include <random>

#include "stringbv/hochschild.hpp"
#include "stringbv/iso_search.hpp"
#include "stringbv/parse.hpp"
#include "stringbv/string_bv.hpp"

using namespace sbv;

namespace {

Element el(const AlgebraSpec& s, const char* text) { return parse_element(s, text); }

HHAlgebra so3_hh() {
  return HHAlgebra({{"xm1", -1, true, "y2"}, {"xm2", -2, true, "y3"}}, 2);
}

std::vector<Scalar> unit_vec(const FiniteAlgebra& a, std::size_t i) {
  std::vector<Scalar> v(a.dim(), Scalar::zero(a.prime()));
  v[i] = Scalar::one(a.prime());
  return v;
}

}  // namespace

TEST_CASE("model shapes") {
  HHAlgebra hh = so3_hh();
  const auto& s = hh.spec();
  CHECK(s.degree(el(s, "y2")) == 2);
  CHECK(s.degree(el(s, "y3")) == 3);
  CHECK(s.num_ext() == 2);
  HHAlgebra single({{"x", -5, true, "u"}}, 0);
  CHECK(single.spec().degree(single.dual(0)) == 6);
  CHECK_FALSE(single.spec().find_ext("u"));
  HHAlgebra empty({}, 3);
  CHECK(basis_of_degree(empty.spec(), 0).size() == 1);
  CHECK(basis_of_degree(empty.spec(), 1).empty());
  CHECK_THROWS_AS(HHAlgebra({{"w", -3, false, "f"}}, 3), Error);
}

TEST_CASE("bracket on generators") {
  for (uint32_t p : {0u, 3u}) {
    HHAlgebra hh({{"a", -1, true, "fa"}, {"b", -3, true, "fb"}, {"c", -3, true, "fc"}}, p);
    for (std::size_t i = 0; i < hh.rank(); ++i)
      for (std::size_t j = 0; j < hh.rank(); ++j) {
        int phi = hh.spec().degree(hh.dual(i)).value();
        Element want = i == j ? hh.spec().one().scaled(Scalar::sign_pow(p, phi - 1)) : Element{};
        CHECK(hh.bracket(hh.dual(i), hh.gen(j)) == want);
        CHECK(hh.bracket(hh.gen(i), hh.gen(j)).is_zero());
        CHECK(hh.bracket(hh.dual(i), hh.dual(j)).is_zero());
      }
  }
}

TEST_CASE("BV operator examples") {
  HHAlgebra hh = so3_hh();
  const auto& s = hh.spec();
  CHECK(hh.delta(el(s, "xm2*y3")) == s.one());
  CHECK(hh.delta(el(s, "xm2*y2")).is_zero());
  CHECK(hh.delta(el(s, "xm1*y2")) == s.one());
  CHECK(hh.delta(el(s, "xm1*y3")).is_zero());
  for (unsigned k = 0; k < 6; ++k) CHECK(hh.delta(power(s, el(s, "y2"), k)).is_zero());
  CHECK(hh.delta(el(s, "xm1*xm2")).is_zero());
  HHAlgebra mixed({{"w", -2, false, "fw"}}, 3);
  CHECK_FALSE(mixed.has_delta());
  CHECK_THROWS_AS(mixed.delta(mixed.gen(0)), Error);
}

TEST_CASE("BV operator properties") {
  std::mt19937_64 rng(17);
  std::vector<HHAlgebra> algebras = {so3_hh(),
                                     HHAlgebra({{"a", -1, true, "fa"}, {"b", -3, true, "fb"}}, 0),
                                     HHAlgebra({{"a", -3, true, "fa"}, {"b", -5, true, "fb"}, {"c", -1, true, "fc"}}, 3)};
  for (const auto& hh : algebras) {
    const auto& s = hh.spec();
    const uint32_t p = hh.prime();
    for (int n = -6; n <= 8; ++n)
      for (const auto& m : basis_of_degree(s, n)) {
        Element a(m, s.scalar(1));
        Element front = hh.delta(a, PeelOrder::Front);
        CHECK(front == hh.delta(a, PeelOrder::Back));
        CHECK(hh.delta(front).is_zero());
      }
    for (int t = 0; t < 150; ++t) {
      int da = t % 7 - 3, db = (t / 7) % 7 - 3, dc = (t / 3) % 7 - 3;
      Element a = random_element(s, da, rng), b = random_element(s, db, rng), c = random_element(s, dc, rng);
      if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
      // Bracket recovered from Delta.
      Element rec = (hh.delta(multiply(s, a, b)) - multiply(s, hh.delta(a), b))
                        .scaled(Scalar::sign_pow(p, da)) - multiply(s, a, hh.delta(b));
      CHECK(rec == hh.bracket(a, b));
      // Poisson and Jacobi in the shifted convention.
      CHECK(hh.bracket(a, multiply(s, b, c)) ==
            multiply(s, hh.bracket(a, b), c) +
                multiply(s, b, hh.bracket(a, c)).scaled(Scalar::sign_pow(p, (da - 1) * db)));
      Element j1 = hh.bracket(a, hh.bracket(b, c));
      Element j2 = hh.bracket(hh.bracket(a, b), c);
      Element j3 = hh.bracket(b, hh.bracket(a, c)).scaled(Scalar::sign_pow(p, (da - 1) * (db - 1)));
      CHECK(j1 == j2 + j3);
    }
  }
}

TEST_CASE("derivation criteria") {
  for (uint32_t p : {2u, 3u, 5u, 0u}) {
    FiniteAlgebra lx = FiniteAlgebra::exterior({-3}, p);
    auto tr = standard_trace(lx);
    auto w = unit_in_image_delta_via_derivation(lx, tr);
    REQUIRE(w);
    CHECK(is_derivation(lx, *w));
    std::size_t x = lx.generators()[0];
    for (std::size_t i = 0; i < lx.dim(); ++i) CHECK(tr(lx.multiply(w->images[i], unit_vec(lx, 0))) == tr(w->images[i]));
    // d(x) = x satisfies tr∘d = tr; criterion (2) for the unit needs -d unless p = 2.
    Derivation id = derivation_from_generators(lx, 0, {unit_vec(lx, x)});
    CHECK(delta_of_derivation_class(lx, tr, id, unit_vec(lx, 0)) == (p == 2));
    Derivation neg = derivation_from_generators(lx, 0, {unit_vec(lx, x)});
    for (auto& img : neg.images)
      for (auto& c : img) c = -c;
    CHECK(delta_of_derivation_class(lx, tr, neg, unit_vec(lx, 0)));
    Derivation zero = derivation_from_generators(lx, 0, {std::vector<Scalar>(lx.dim(), Scalar::zero(p))});
    CHECK_FALSE(delta_of_derivation_class(lx, tr, zero, unit_vec(lx, 0)));
  }
  for (uint32_t p : {2u, 3u, 5u})
    for (unsigned n = 1; n <= 6; ++n) {
      FiniteAlgebra a = FiniteAlgebra::truncated_polynomial(2, n, p);
      CHECK(unit_in_image_delta_via_derivation(a, standard_trace(a)).has_value() == (std::gcd(n, p) == 1));
    }
  FiniteAlgebra k3 = FiniteAlgebra::truncated_polynomial(2, 2, 2);
  Derivation dx = derivation_from_generators(k3, 0, {unit_vec(k3, k3.generators()[0])});
  CHECK_FALSE(delta_of_derivation_class(k3, standard_trace(k3), dx, unit_vec(k3, 0)));
  for (unsigned N = 1; N <= 4; ++N) {
    std::vector<int> degrees;
    for (unsigned k = 0; k < N; ++k) degrees.push_back(-static_cast<int>(2 * k + 1));
    FiniteAlgebra a = FiniteAlgebra::exterior(degrees, 3);
    CHECK(unit_in_image_delta_via_derivation(a, standard_trace(a)));
  }
}

TEST_CASE("unit in the image of Delta on the model side") {
  CHECK(unit_in_image_delta(HochschildBV(so3_hh())));
  for (unsigned N = 1; N <= 4; ++N) {
    std::vector<HHGenerator> gens;
    for (unsigned k = 0; k < N; ++k) gens.push_back({"e" + std::to_string(k), -static_cast<int>(2 * k + 1), true, ""});
    CHECK(unit_in_image_delta(HochschildBV(HHAlgebra(gens, 5))));
  }
}
