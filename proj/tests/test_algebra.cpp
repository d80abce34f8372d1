#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "stringbv/algebra.hpp"
#include "stringbv/loop_model.hpp"
#include "stringbv/parse.hpp"
#include "stringbv/string_bv.hpp"

using namespace sbv;

namespace {

Element el(const AlgebraSpec& s, const char* text) { return parse_element(s, text); }

int brute_inversions(const std::vector<int>& seq) {
  int n = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) n += seq[i] > seq[j];
  return n;
}

// Coefficient of t^n in prod_ext (1 + t^deg) * prod_poly 1/(1 - t^deg).
long hilbert_coefficient(const AlgebraSpec& s, int n) {
  std::map<int, long> series{{0, 1}};
  for (const auto& g : s.ext_gens()) {
    std::map<int, long> next = series;
    for (const auto& [k, c] : series) next[k + g.degree] += c;
    series = next;
  }
  for (const auto& g : s.poly_gens()) {
    std::map<int, long> next;
    for (const auto& [k, c] : series)
      for (int m = k; m <= n; m += g.degree) next[m] += c;
    series = next;
  }
  auto it = series.find(n);
  return it == series.end() ? 0 : it->second;
}

// Independent normal form for a word of exterior generators times a
// polynomial monomial: random adjacent swaps and random square rewrites.
class WordRewriter {
 public:
  WordRewriter(const AlgebraSpec& s, std::mt19937_64& rng) : s_(s), rng_(rng) {}

  Element normal_form(std::vector<int> word, Monomial poly, Scalar coef) {
    while (true) {
      std::vector<std::size_t> spots;
      for (std::size_t i = 0; i + 1 < word.size(); ++i)
        if (word[i] >= word[i + 1]) spots.push_back(i);
      if (spots.empty()) break;
      std::size_t i = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(rng_)];
      if (word[i] > word[i + 1]) {
        int da = s_.ext_gens()[word[i]].degree, db = s_.ext_gens()[word[i + 1]].degree;
        if ((da * db) % 2 != 0) coef = -coef;
        std::swap(word[i], word[i + 1]);
        continue;
      }
      Element out;
      const Element& rule = s_.square_rules()[word[i]];
      for (const auto& [m, c] : rule.terms()) {
        std::vector<int> w(word.begin(), word.begin() + i);
        for (int k : m.ext_indices()) w.push_back(k);
        w.insert(w.end(), word.begin() + i + 2, word.end());
        Monomial p = poly;
        for (std::size_t j = 0; j < kMaxPolyGens; ++j) p.exp[j] += m.exp[j];
        // Rules only occur mod 2, so moving the polynomial part is sign-free.
        out += normal_form(w, p, coef * c);
      }
      return out;
    }
    Monomial m = poly;
    for (int k : word) m.ext |= uint64_t{1} << k;
    return Element(m, coef);
  }

 private:
  const AlgebraSpec& s_;
  std::mt19937_64& rng_;
};

}  // namespace

TEST_CASE("scalar arithmetic examples") {
  CHECK(Scalar::sign_pow(2, 5) == Scalar::one(2));
  CHECK(Scalar::from_int(3, 2).inv() == Scalar::from_int(3, 2));
  CHECK(Scalar::from_int(0, 3).inv().rational() == mpq_class(1, 3));
  CHECK_THROWS_AS(Scalar::zero(5).inv(), Error);
  CHECK_THROWS_AS(Scalar::one(3) + Scalar::one(5), Error);
  for (uint32_t p : {2u, 3u, 5u, 7u, 101u})
    for (int64_t k = 1; k < static_cast<int64_t>(p); ++k)
      CHECK((Scalar::from_int(p, k) * Scalar::from_int(p, k).inv()).is_one());
  CHECK(Scalar::from_int(7, -1).residue() == 6);
}

TEST_CASE("signature examples and inverse property") {
  std::vector<int> id{1, 2, 3}, swap{2, 1}, cyc{2, 3, 1};
  CHECK(signature(0, id) == Scalar::one(0));
  CHECK(signature(0, swap) == Scalar::from_int(0, -1));
  CHECK(signature(0, cyc) == Scalar::sign_pow(0, brute_inversions(cyc)));
  CHECK(signature(0, cyc) == Scalar::one(0));
  std::vector<int> rep{1, 1};
  CHECK_THROWS_AS(signature(0, rep), Error);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    std::vector<int> perm(1 + t % 9);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
    CHECK((signature(0, perm) * signature(0, inv)).is_one());
    CHECK(inversion_parity(perm) == brute_inversions(perm) % 2);
  }
}

TEST_CASE("multiply examples") {
  LoopModel so3(preset("so3"));
  const auto& L = so3.loop();
  CHECK(multiply(L, el(L, "x1"), el(L, "x1")) == el(L, "x2"));
  CHECK(multiply(L, el(L, "x2"), el(L, "x2")) == el(L, "x2*y2 + x1*y3"));
  AlgebraSpec q(0, {}, {{"x1", 1}, {"x2", 1}});
  CHECK(multiply(q, el(q, "x2"), el(q, "x1")) == -el(q, "x1*x2"));
  CHECK(multiply(q, el(q, "x1"), el(q, "x1")).is_zero());
  AlgebraSpec mixed(0, {{"y", 2}}, {{"a", 1}, {"b", 3}});
  CHECK(multiply(mixed, el(mixed, "b*y"), el(mixed, "a")) == -el(mixed, "a*b*y"));
  CHECK(power(L, el(L, "y2 + y3"), 2) == el(L, "y2^2 + y3^2"));
}

TEST_CASE("partial derivative examples") {
  AlgebraSpec s(0, {{"y2", 2}, {"y4", 4}}, {});
  CHECK(partial_derivative(s, el(s, "y2*y4"), 0) == el(s, "y4"));
  AlgebraSpec s2(2, {{"y2", 2}}, {});
  CHECK(partial_derivative(s2, el(s2, "y2^2"), 0).is_zero());
  AlgebraSpec s5(5, {{"y", 2}}, {});
  CHECK(partial_derivative(s5, el(s5, "y^4"), 0) == el(s5, "4*y^3"));
  AlgebraSpec e(2, {{"y", 2}}, {{"x", 1}});
  CHECK_THROWS_AS(partial_derivative(e, el(e, "x*y"), 0), Error);
}

TEST_CASE("basis examples") {
  AlgebraSpec uv(2, {{"v2", 2}, {"v3", 3}}, {{"um1", -1}, {"um2", -2}});
  auto b = basis_of_degree(uv, 2);
  std::vector<std::string> names;
  for (const auto& m : b) names.push_back(uv.format(m));
  std::vector<std::string> want{"v2", "um1*v3", "um2*v2^2", "um1*um2*v2*v3"};
  std::sort(names.begin(), names.end());
  std::sort(want.begin(), want.end());
  CHECK(names == want);

  LoopModel so3(preset("so3"));
  CHECK(basis_of_degree(so3.loop(), 0).size() == 1);
  auto b3 = basis_of_degree(so3.loop(), 3);
  CHECK(b3.size() == 3);
  AlgebraSpec bad(2, {{"a", 2}, {"b", -2}}, {});
  CHECK_THROWS_AS(basis_of_degree(bad, 0), Error);
}

TEST_CASE("basis dimensions match the Hilbert series") {
  std::vector<AlgebraSpec> specs;
  for (const char* p : {"so3", "g2", "t3", "su4"}) specs.push_back(LoopModel(preset(p)).loop());
  specs.push_back(AlgebraSpec(2, {{"v2", 2}, {"v3", 3}}, {{"um1", -1}, {"um2", -2}}));
  specs.push_back(AlgebraSpec(3, {{"v4", 4}, {"v6", 6}}, {{"a", -3}, {"b", -5}}));
  for (const auto& s : specs)
    for (int n = -8; n <= 24; ++n) {
      auto b = basis_of_degree(s, n);
      CHECK(static_cast<long>(b.size()) == hilbert_coefficient(s, n));
      for (std::size_t i = 0; i + 1 < b.size(); ++i) CHECK(MonomialLess{}(b[i], b[i + 1]));
      for (const auto& m : b) CHECK(s.degree(m) == n);
    }
}

TEST_CASE("square-rule rewriting is confluent") {
  std::mt19937_64 rng(11);
  for (const char* p : {"so3", "g2"}) {
    LoopModel model(preset(p));
    const auto& L = model.loop();
    WordRewriter rw(L, rng);
    for (int t = 0; t < 10000; ++t) {
      std::size_t len = 2 + t % 5;
      std::vector<int> word;
      std::vector<Element> factors;
      for (std::size_t i = 0; i < len; ++i) {
        int k = std::uniform_int_distribution<int>(0, static_cast<int>(L.num_ext()) - 1)(rng);
        word.push_back(k);
        factors.push_back(L.ext_gen(k));
      }
      Element lib = multiply_many(L, factors);
      Element oracle = rw.normal_form(word, Monomial{}, L.scalar(1));
      REQUIRE(lib == oracle);
    }
  }
}

TEST_CASE("multiply is graded commutative and associative") {
  std::mt19937_64 rng(5);
  for (auto [p, prime] : {std::pair{"so3", 2u}, std::pair{"g2", 2u}, std::pair{"t3", 0u}, std::pair{"su3", 5u}}) {
    LoopModel model(preset(p, prime));
    const auto& L = model.loop();
    for (int t = 0; t < 300; ++t) {
      int da = t % 9, db = (t / 3) % 8, dc = (t / 7) % 7;
      Element a = random_element(L, da, rng), b = random_element(L, db, rng), c = random_element(L, dc, rng);
      if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
      CHECK(multiply(L, a, b) == multiply(L, b, a).scaled(Scalar::sign_pow(L.prime(), da * db)));
      CHECK(multiply(L, multiply(L, a, b), c) == multiply(L, a, multiply(L, b, c)));
    }
  }
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(AlgebraSpec(4, {{"y", 2}}, {}), Error);
  CHECK_THROWS_AS(AlgebraSpec(3, {{"y", 3}}, {}), Error);
  CHECK_THROWS_AS(AlgebraSpec(3, {}, {{"x", 2}}), Error);
  AlgebraSpec s(2, {{"y", 2}}, {{"x", 1}});
  CHECK_THROWS_AS(s.degree(el(s, "x + y")), Error);
  CHECK(s.format(Element{}) == "0");
  CHECK(s.format(s.one()) == "1");
}
