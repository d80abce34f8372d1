#include <doctest.h>

#include <random>

#include "stringbv/linalg.hpp"
#include "stringbv/loop_model.hpp"
#include "stringbv/parse.hpp"
#include "stringbv/string_bv.hpp"

using namespace sbv;

namespace {

std::vector<Scalar> mat_vec(const Matrix& a, const std::vector<Scalar>& x) {
  std::vector<Scalar> out(a.rows(), Scalar::zero(a.prime()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out[r] += a.at(r, c) * x[c];
  return out;
}

// Kernel size of a small F_2 matrix by enumerating all vectors.
std::size_t brute_kernel_size(const Matrix& a) {
  std::size_t count = 0;
  for (uint64_t bits = 0; bits < (uint64_t{1} << a.cols()); ++bits) {
    std::vector<Scalar> x;
    for (std::size_t c = 0; c < a.cols(); ++c) x.push_back(Scalar::from_int(2, (bits >> c) & 1));
    bool zero = true;
    for (const auto& v : mat_vec(a, x)) zero &= v.is_zero();
    count += zero;
  }
  return count;
}

}  // namespace

TEST_CASE("solve_linear examples") {
  AlgebraSpec s(3, {{"v", 2}}, {});
  auto sol = solve_linear(s, {parse_element(s, "v")}, parse_element(s, "2*v"));
  REQUIRE(sol);
  CHECK((*sol)[0] == Scalar::from_int(3, 2));
  auto zero = solve_linear(s, {parse_element(s, "v"), parse_element(s, "2*v")}, Element{});
  REQUIRE(zero);
  for (const auto& c : *zero) CHECK(c.is_zero());

  BVContext ctx{LoopModel(preset("so3"))};
  std::vector<Element> cols;
  for (const auto& m : basis_of_degree(ctx.loop(), ctx.d() + 1))
    cols.push_back(ctx.delta(Element(m, ctx.loop().scalar(1))));
  CHECK_FALSE(solve_linear(ctx.loop(), cols, ctx.unit()));
  CHECK_THROWS_AS(solve_linear(s, {parse_element(s, "v"), parse_element(s, "v^2")}, Element{}), Error);
}

TEST_CASE("rank and kernel against enumeration over F_2") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 8;
    Matrix a(2, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) a.at(r, c) = Scalar::from_int(2, rng() & 1);
    std::size_t r = rank(a);
    CHECK(brute_kernel_size(a) == (std::size_t{1} << (cols - r)));
    std::vector<Scalar> b(rows, Scalar::zero(2));
    auto sol = solve_affine(a, b);
    REQUIRE(sol);
    CHECK(sol->kernel.size() == cols - r);
  }
}

TEST_CASE("affine solutions satisfy the system") {
  std::mt19937_64 rng(22);
  for (uint32_t p : {0u, 3u, 7u}) {
    for (int t = 0; t < 100; ++t) {
      std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
      Matrix a(p, rows, cols);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) a.at(r, c) = Scalar::from_int(p, static_cast<int64_t>(rng() % 5) - 2);
      std::vector<Scalar> x0;
      for (std::size_t c = 0; c < cols; ++c) x0.push_back(Scalar::from_int(p, static_cast<int64_t>(rng() % 7) - 3));
      auto b = mat_vec(a, x0);
      auto sol = solve_affine(a, b);
      REQUIRE(sol);
      CHECK(mat_vec(a, sol->particular) == b);
      for (const auto& k : sol->kernel) {
        auto z = mat_vec(a, k);
        for (const auto& v : z) CHECK(v.is_zero());
      }
      CHECK(sol->kernel.size() == cols - rank(a));
    }
  }
  Matrix a(5, 2, 1);
  a.at(0, 0) = Scalar::one(5);
  a.at(1, 0) = Scalar::one(5);
  CHECK_FALSE(solve_affine(a, {Scalar::one(5), Scalar::zero(5)}));
}
