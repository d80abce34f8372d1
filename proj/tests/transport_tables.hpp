#pragma once

// Tabulated transported BV operators on the free-commutative side of the
// SO(3) and G2 splittings, as exponent families and degree-1 values.

#include <array>
#include <string>
#include <vector>

#include "stringbv/algebra.hpp"

namespace sbv::tables {

// coef = c[0]*i + c[1]*j + c[2]*k + c[3] (mod 2); exponents shift by `shift`.
struct FamilyTerm {
  std::array<int, 4> c;
  std::vector<std::string> ext;
  std::array<int, 3> shift;
};

struct Family {
  std::vector<std::string> ext;  // exterior part of the argument
  std::vector<FamilyTerm> terms;
};

struct Fixed {
  std::string argument;
  std::string value;
};

inline const std::vector<std::string> kSo3Poly = {"v2", "v3"};
inline const std::vector<std::string> kG2Poly = {"v4", "v6", "v7"};

inline const std::vector<Family> kSo3Families = {
    {{}, {}},
    {{"um1", "um2"},
     {{{1, 0, 0, 0}, {"um2"}, {-1, 0, 0}}, {{0, 1, 0, 0}, {"um1"}, {0, -1, 0}}}},
    {{"um2"},
     {{{1, 0, 0, 0}, {"um1"}, {-1, 0, 0}},
      {{0, 1, 0, 0}, {}, {0, -1, 0}},
      {{0, 1, 0, 0}, {"um2"}, {1, -1, 0}},
      {{0, 1, 0, 0}, {"um1", "um2"}, {0, 0, 0}}}},
    {{"um1"},
     {{{1, 0, 0, 0}, {}, {-1, 0, 0}},
      {{1, 1, 0, 0}, {"um2"}, {0, 0, 0}},
      {{1, 0, 0, 0}, {"um1", "um2"}, {-1, 1, 0}},
      {{0, 1, 0, 0}, {"um1"}, {1, -1, 0}}}},
};

inline const std::vector<Family> kG2Families = {
    {{}, {}},
    {{"um3", "um5", "um6"},
     {{{1, 0, 0, 0}, {"um5", "um6"}, {-1, 0, 0}},
      {{0, 1, 0, 0}, {"um3", "um6"}, {0, -1, 0}},
      {{0, 0, 1, 0}, {"um3", "um5"}, {0, 0, -1}},
      {{0, 0, 1, 0}, {"um3", "um5", "um6"}, {0, 1, -1}}}},
    {{"um5", "um6"},
     {{{1, 0, 0, 0}, {"um3", "um5"}, {-1, 0, 0}},
      {{1, 0, 0, 0}, {"um3", "um5", "um6"}, {-1, 1, 0}},
      {{0, 1, 0, 0}, {"um6"}, {0, -1, 0}},
      {{0, 0, 1, 0}, {"um5"}, {0, 0, -1}}}},
    {{"um3", "um6"},
     {{{1, 0, 0, 0}, {"um6"}, {-1, 0, 0}},
      {{0, 1, 0, 0}, {"um5", "um6"}, {0, -1, 1}},
      {{0, 1, 0, 0}, {"um3", "um5"}, {1, -1, 0}},
      {{0, 1, 0, 0}, {"um3", "um5", "um6"}, {1, 0, 0}},
      {{0, 0, 1, 0}, {"um3"}, {0, 0, -1}}}},
    {{"um3", "um5"},
     {{{1, 0, 0, 0}, {"um5"}, {-1, 0, 0}},
      {{1, 0, 0, 0}, {"um5", "um6"}, {-1, 1, 0}},
      {{0, 1, 0, 0}, {"um3"}, {0, -1, 0}},
      {{0, 1, 1, 1}, {"um3", "um6"}, {0, 0, 0}}}},
    {{"um6"},
     {{{1, 0, 0, 0}, {"um3"}, {-1, 0, 0}},
      {{0, 1, 0, 0}, {"um5"}, {1, -1, 0}},
      {{0, 1, 0, 0}, {"um3", "um5"}, {0, -1, 1}},
      {{0, 1, 1, 0}, {"um3", "um5", "um6"}, {0, 0, 1}},
      {{0, 0, 1, 0}, {}, {0, 0, -1}},
      {{0, 0, 1, 0}, {"um6"}, {0, 1, -1}},
      {{0, 0, 1, 0}, {"um5", "um6"}, {1, 0, 0}}}},
    {{"um3"},
     {{{1, 0, 0, 0}, {}, {-1, 0, 0}},
      {{1, 0, 0, 0}, {"um6"}, {-1, 1, 0}},
      {{1, 0, 1, 0}, {"um5", "um6"}, {0, 0, 1}},
      {{1, 0, 0, 0}, {"um3", "um5", "um6"}, {-1, 0, 2}},
      {{0, 1, 0, 0}, {"um5"}, {0, -1, 1}},
      {{0, 1, 0, 0}, {"um3", "um6"}, {1, -1, 1}},
      {{0, 1, 1, 0}, {"um3", "um5"}, {1, 0, 0}},
      {{0, 1, 1, 0}, {"um3", "um5", "um6"}, {1, 1, 0}},
      {{0, 0, 1, 0}, {"um3"}, {0, 1, -1}}}},
    {{"um5"},
     {{{1, 0, 0, 0}, {"um3", "um5"}, {-1, 1, 0}},
      {{1, 0, 0, 0}, {"um3", "um5", "um6"}, {-1, 2, 0}},
      {{0, 1, 0, 0}, {}, {0, -1, 0}},
      {{0, 1, 1, 0}, {"um6"}, {0, 0, 0}},
      {{0, 1, 0, 0}, {"um5", "um6"}, {1, -1, 1}},
      {{0, 1, 0, 0}, {"um3", "um5", "um6"}, {0, -1, 2}},
      {{0, 0, 1, 0}, {"um5"}, {0, 1, -1}}}},
};

// The tabulated u_{-5} family above fails Delta^2 = 0; this term restores it.
inline const FamilyTerm kG2U5MissingTerm = {{1, 0, 0, 0}, {"um3", "um6"}, {-1, 0, 1}};
inline constexpr std::size_t kG2U5Family = 7;

inline const std::vector<Fixed> kSo3DegreeOne = {
    {"um1*um2*v2^2", "0"},
    {"um2*v3", "1 + um2*v2 + um1*um2*v3"},
    {"um1*v2", "1 + um2*v2 + um1*um2*v3"},
};

inline const std::vector<Fixed> kG2DegreeOne = {
    {"um5*um6*v6^2", "0"},
    {"um3*um5*um6*v4^2*v7", "um3*um5*v4^2 + um3*um5*um6*v4^2*v6"},
    {"um5*um6*v4^3", "um3*um5*v4^2 + um3*um5*um6*v4^2*v6"},
    {"um3*um6*v4*v6", "um6*v6 + um5*um6*v4*v7 + um3*um5*v4^2 + um3*um5*um6*v4^2*v6"},
    {"um6*v7", "1 + um6*v6 + um5*um6*v4*v7 + um3*um5*um6*v7^2"},
    {"um5*v6", "1 + um6*v6 + um5*um6*v4*v7 + um3*um5*um6*v7^2"},
    {"um3*v4", "1 + um6*v6 + um5*um6*v4*v7 + um3*um5*um6*v7^2"},
};

// Expected value of a family at exponents e; terms with a negative exponent
// must carry an even coefficient.
inline Element family_value(const AlgebraSpec& spec, const Family& f,
                            const std::vector<std::string>& poly, std::array<int, 3> e) {
  Element out;
  for (const auto& t : f.terms) {
    int c = t.c[0] * e[0] + t.c[1] * e[1] + t.c[2] * e[2] + t.c[3];
    if (c % 2 == 0) continue;
    Monomial m;
    bool negative = false;
    for (std::size_t v = 0; v < poly.size(); ++v) {
      int x = e[v] + t.shift[v];
      if (x < 0) negative = true;
      m.exp[*spec.find_poly(poly[v])] = static_cast<uint16_t>(x < 0 ? 0 : x);
    }
    if (negative) throw Error("odd coefficient on a negative exponent");
    for (const auto& u : t.ext) m.ext |= uint64_t{1} << *spec.find_ext(u);
    out.add_term(m, spec.scalar(1));
  }
  return out;
}

inline Monomial family_argument(const AlgebraSpec& spec, const Family& f,
                                const std::vector<std::string>& poly, std::array<int, 3> e) {
  Monomial m;
  for (std::size_t v = 0; v < poly.size(); ++v) m.exp[*spec.find_poly(poly[v])] = static_cast<uint16_t>(e[v]);
  for (const auto& u : f.ext) m.ext |= uint64_t{1} << *spec.find_ext(u);
  return m;
}

}  // namespace sbv::tables
