#include "stringbv/algebra.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace sbv {

// ---------------------------------------------------------------- Monomial

bool Monomial::has_poly() const {
  return std::any_of(exp.begin(), exp.end(), [](uint16_t e) { return e != 0; });
}

uint32_t Monomial::ext_count() const { return static_cast<uint32_t>(std::popcount(ext)); }

std::vector<int> Monomial::ext_indices() const {
  std::vector<int> out;
  for (uint64_t m = ext; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  if (a.ext != b.ext) {
    int ca = std::popcount(a.ext), cb = std::popcount(b.ext);
    if (ca != cb) return ca < cb;
    // The set owning the lowest index of the symmetric difference sorts first.
    uint64_t diff = a.ext ^ b.ext;
    uint64_t low = diff & (~diff + 1);
    return (a.ext & low) != 0;
  }
  unsigned ta = 0, tb = 0;
  for (std::size_t i = 0; i < kMaxPolyGens; ++i) {
    ta += a.exp[i];
    tb += b.exp[i];
  }
  if (ta != tb) return ta < tb;
  return a.exp < b.exp;
}

// ----------------------------------------------------------------- Element

void Element::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::optional<Scalar> Element::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  if (it == terms_.end()) return std::nullopt;
  return it->second;
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Element Element::operator+(const Element& o) const {
  Element r = *this;
  r += o;
  return r;
}

Element Element::operator-(const Element& o) const {
  Element r = *this;
  r -= o;
  return r;
}

Element Element::operator-() const {
  Element r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Element Element::scaled(const Scalar& c) const {
  Element r;
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) r.add_term(m, k * c);
  return r;
}

bool Element::operator==(const Element& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [m, c] : terms_) {
    if (!(it->first == m) || it->second != c) return false;
    ++it;
  }
  return true;
}

Element map_terms(const Element& e,
                  const std::function<Element(const Monomial&, const Scalar&)>& f) {
  Element out;
  for (const auto& [m, c] : e.terms()) out += f(m, c);
  return out;
}

// ------------------------------------------------------------- AlgebraSpec

AlgebraSpec::AlgebraSpec(uint32_t prime, std::vector<Generator> poly,
                         std::vector<Generator> ext, std::vector<Element> square_rules)
    : prime_(prime), poly_(std::move(poly)), ext_(std::move(ext)), rules_(std::move(square_rules)) {
  if (rules_.empty()) rules_.resize(ext_.size());
  validate();
}

void AlgebraSpec::validate() const {
  if (prime_ != 0 && !is_prime(prime_))
    throw Error("coefficient characteristic " + std::to_string(prime_) + " is not 0 or a prime");
  if (poly_.size() > kMaxPolyGens)
    throw Error("too many polynomial generators (max " + std::to_string(kMaxPolyGens) + ")");
  if (ext_.size() > kMaxExtGens)
    throw Error("too many exterior generators (max " + std::to_string(kMaxExtGens) + ")");
  if (rules_.size() != ext_.size())
    throw Error("square rule count does not match exterior generator count");
  if (prime_ != 2) {
    for (const auto& g : ext_)
      if (g.degree % 2 == 0)
        throw Error("exterior generator " + g.name + " has even degree in characteristic " +
                    std::to_string(prime_));
    for (const auto& g : poly_)
      if (g.degree % 2 != 0)
        throw Error("polynomial generator " + g.name + " has odd degree in characteristic " +
                    std::to_string(prime_));
    for (const auto& r : rules_)
      if (!r.is_zero()) throw Error("square rules are only allowed in characteristic 2");
  }
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    for (const auto& [m, c] : rules_[i].terms()) {
      if (c.prime() != prime_) throw Error("square rule coefficient in wrong field");
      if (degree(m) != 2 * ext_[i].degree)
        throw Error("square rule for " + ext_[i].name + " is not homogeneous of degree " +
                    std::to_string(2 * ext_[i].degree));
      if ((m.ext >> ext_.size()) != 0) throw Error("square rule uses unknown generator");
      for (std::size_t k = poly_.size(); k < kMaxPolyGens; ++k)
        if (m.exp[k] != 0) throw Error("square rule uses unknown generator");
    }
  }
}

bool AlgebraSpec::has_square_rules() const {
  return std::any_of(rules_.begin(), rules_.end(), [](const Element& e) { return !e.is_zero(); });
}

Element AlgebraSpec::one() const { return Element(Monomial{}, scalar(1)); }

Element AlgebraSpec::constant(const Scalar& c) const { return Element(Monomial{}, c); }

Element AlgebraSpec::poly_gen(std::size_t i) const {
  if (i >= poly_.size()) throw Error("polynomial generator index out of range");
  Monomial m;
  m.exp[i] = 1;
  return Element(m, scalar(1));
}

Element AlgebraSpec::ext_gen(std::size_t i) const {
  if (i >= ext_.size()) throw Error("exterior generator index out of range");
  Monomial m;
  m.ext = uint64_t{1} << i;
  return Element(m, scalar(1));
}

Element AlgebraSpec::ext_monomial(uint64_t mask) const {
  Monomial m;
  m.ext = mask;
  return Element(m, scalar(1));
}

int AlgebraSpec::ext_degree(uint64_t mask) const {
  int d = 0;
  for (uint64_t m = mask; m != 0; m &= m - 1) d += ext_[std::countr_zero(m)].degree;
  return d;
}

int AlgebraSpec::degree(const Monomial& m) const {
  int d = ext_degree(m.ext);
  for (std::size_t i = 0; i < poly_.size(); ++i) d += m.exp[i] * poly_[i].degree;
  return d;
}

std::optional<int> AlgebraSpec::degree(const Element& e) const {
  std::optional<int> deg;
  for (const auto& [m, c] : e.terms()) {
    int d = degree(m);
    if (deg && *deg != d) throw Error("element is not homogeneous: " + format(e));
    deg = d;
  }
  return deg;
}

bool AlgebraSpec::is_homogeneous(const Element& e) const {
  std::optional<int> deg;
  for (const auto& [m, c] : e.terms()) {
    int d = degree(m);
    if (deg && *deg != d) return false;
    deg = d;
  }
  return true;
}

std::optional<std::size_t> AlgebraSpec::find_poly(const std::string& name) const {
  for (std::size_t i = 0; i < poly_.size(); ++i)
    if (poly_[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> AlgebraSpec::find_ext(const std::string& name) const {
  for (std::size_t i = 0; i < ext_.size(); ++i)
    if (ext_[i].name == name) return i;
  return std::nullopt;
}

std::string AlgebraSpec::format(const Monomial& m) const {
  std::string out;
  auto append = [&out](const std::string& s) {
    if (!out.empty()) out += '*';
    out += s;
  };
  for (int i : m.ext_indices()) append(ext_[i].name);
  for (std::size_t i = 0; i < poly_.size(); ++i) {
    if (m.exp[i] == 0) continue;
    append(m.exp[i] == 1 ? poly_[i].name : poly_[i].name + "^" + std::to_string(m.exp[i]));
  }
  return out.empty() ? "1" : out;
}

std::string AlgebraSpec::format(const Element& e) const {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    Scalar coef = c;
    bool negative = prime_ == 0 && sgn(c.rational()) < 0;
    if (negative) coef = -c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string mono = format(m);
    if (coef.is_one())
      out += mono;
    else if (mono == "1")
      out += coef.to_string();
    else
      out += coef.to_string() + "*" + mono;
  }
  return out;
}

// ----------------------------------------------------------- multiplication

namespace {

constexpr int kMaxRewriteDepth = 64;

Element multiply_impl(const AlgebraSpec& spec, const Element& a, const Element& b, int depth);

// Parity of the degree sum of exterior generators in `mask` with index > j.
int degree_above(const AlgebraSpec& spec, uint64_t mask, int j) {
  uint64_t above = (j + 1 >= 64) ? 0 : (mask & (~uint64_t{0} << (j + 1)));
  return spec.ext_degree(above);
}

// e * x_j, in normal form.
Element times_ext_gen(const AlgebraSpec& spec, const Element& e, int j, int depth) {
  if (depth > kMaxRewriteDepth) throw Error("square-rule rewriting does not terminate");
  const uint64_t bit = uint64_t{1} << j;
  const int dj = spec.ext_gens()[j].degree;
  Element out;
  for (const auto& [m, c] : e.terms()) {
    int parity = (dj * degree_above(spec, m.ext, j)) & 1;
    Scalar coef = parity ? -c : c;
    if ((m.ext & bit) == 0) {
      Monomial r = m;
      r.ext |= bit;
      out.add_term(r, coef);
      continue;
    }
    const Element& rule = spec.square_rules()[j];
    if (rule.is_zero()) continue;
    // x_S x_j = ± x_{S<j} x_j x_j x_{S>j} = ± x_{S\j} rule, rule has even degree.
    Monomial rest = m;
    rest.ext &= ~bit;
    out += multiply_impl(spec, Element(rest, coef), rule, depth + 1);
  }
  return out;
}

Element multiply_impl(const AlgebraSpec& spec, const Element& a, const Element& b, int depth) {
  Element out;
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [mb, cb] : b.terms()) {
    // a * (x_J y^e): shift polynomial part, then append x_j for j in J.
    Element cur;
    for (const auto& [ma, ca] : a.terms()) {
      Monomial r = ma;
      for (std::size_t i = 0; i < spec.num_poly(); ++i) {
        uint32_t s = uint32_t{r.exp[i]} + mb.exp[i];
        if (s > 0xFFFF) throw Error("exponent overflow");
        r.exp[i] = static_cast<uint16_t>(s);
      }
      cur.add_term(r, ca * cb);
    }
    for (uint64_t mask = mb.ext; mask != 0 && !cur.is_zero(); mask &= mask - 1)
      cur = times_ext_gen(spec, cur, std::countr_zero(mask), depth);
    out += cur;
  }
  return out;
}

}  // namespace

Element multiply(const AlgebraSpec& spec, const Element& a, const Element& b) {
  return multiply_impl(spec, a, b, 0);
}

Element multiply_many(const AlgebraSpec& spec, std::span<const Element> factors) {
  Element acc = spec.one();
  for (const auto& f : factors) acc = multiply(spec, acc, f);
  return acc;
}

Element power(const AlgebraSpec& spec, const Element& a, unsigned k) {
  Element acc = spec.one();
  for (unsigned i = 0; i < k; ++i) acc = multiply(spec, acc, a);
  return acc;
}

Element partial_derivative(const AlgebraSpec& spec, const Element& p, std::size_t j) {
  if (j >= spec.num_poly()) throw Error("derivative index out of range");
  Element out;
  for (const auto& [m, c] : p.terms()) {
    if (m.ext != 0) throw Error("partial derivative of an element with exterior factors");
    if (m.exp[j] == 0) continue;
    Monomial r = m;
    r.exp[j] -= 1;
    out.add_term(r, c * spec.scalar(m.exp[j]));
  }
  return out;
}

// ------------------------------------------------------------------- basis

std::vector<Monomial> basis_of_degree(const AlgebraSpec& spec, int n) {
  const auto& poly = spec.poly_gens();
  int sign = 0;
  for (const auto& g : poly) {
    if (g.degree == 0) throw Error("polynomial generator " + g.name + " has degree 0");
    int s = g.degree > 0 ? 1 : -1;
    if (sign != 0 && s != sign)
      throw Error("polynomial generators of mixed sign give infinite degree pieces");
    sign = s;
  }
  // Exterior subsets ordered by (size, lex).
  const std::size_t ne = spec.num_ext();
  std::vector<uint64_t> masks;
  masks.reserve(std::size_t{1} << ne);
  for (uint64_t m = 0; m < (uint64_t{1} << ne); ++m) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](uint64_t a, uint64_t b) {
    Monomial ma, mb;
    ma.ext = a;
    mb.ext = b;
    return MonomialLess{}(ma, mb);
  });

  std::vector<Monomial> out;
  for (uint64_t mask : masks) {
    int rest = n - spec.ext_degree(mask);
    std::vector<Monomial> chunk;
    if (poly.empty()) {
      if (rest == 0) {
        Monomial m;
        m.ext = mask;
        chunk.push_back(m);
      }
    } else {
      if (rest != 0 && (rest > 0) != (sign > 0)) continue;
      // Depth-first enumeration of exponent vectors with weighted sum `rest`.
      Monomial m;
      m.ext = mask;
      std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
        if (i + 1 == poly.size()) {
          if (remaining % poly[i].degree != 0) return;
          int e = remaining / poly[i].degree;
          if (e < 0) return;
          m.exp[i] = static_cast<uint16_t>(e);
          chunk.push_back(m);
          m.exp[i] = 0;
          return;
        }
        for (int e = 0;; ++e) {
          int left = remaining - e * poly[i].degree;
          if (left != 0 && (left > 0) != (sign > 0)) break;
          m.exp[i] = static_cast<uint16_t>(e);
          rec(i + 1, left);
          if (left == 0) break;
        }
        m.exp[i] = 0;
      };
      rec(0, rest);
    }
    std::sort(chunk.begin(), chunk.end(), MonomialLess{});
    out.insert(out.end(), chunk.begin(), chunk.end());
  }
  return out;
}

// ------------------------------------------------------------ permutations

int inversion_parity(std::span<const int> seq) {
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) throw Error("signature of a sequence with repeated entries");
      if (seq[i] > seq[j]) inv ^= 1;
    }
  return inv;
}

Scalar signature(uint32_t p, std::span<const int> seq) {
  return Scalar::sign_pow(p, inversion_parity(seq));
}

}  // namespace sbv
