#include "stringbv/string_bv.hpp"

#include <bit>

namespace sbv {

namespace {

Scalar sign(uint32_t p, int64_t k) { return Scalar::sign_pow(p, ((k % 2) + 2) % 2); }

}  // namespace

BVContext::BVContext(LoopModel model) : model_(std::move(model)) {
  if (hypothesis_h())
    unit_ = model_.top();
  else
    unit_ = dlcop(model_.top(), model_.top());
}

int BVContext::degree(const Element& a) const { return loop().degree(a).value_or(0); }

Element BVContext::m_right_ext(const Element& a, int deg_a, uint64_t mask, StripOrder order,
                               std::mt19937_64* rng) const {
  const AlgebraSpec& spec = loop();
  const uint32_t p = prime();
  if (a.is_zero()) return {};
  if (mask == 0) {
    Element out;
    for (const auto& [m, c] : a.terms())
      if (m.ext == model_.full_mask()) out += model_.poly_part(m, c);
    return out;
  }
  int i = 0;
  switch (order) {
    case StripOrder::Leftmost:
      i = std::countr_zero(mask);
      break;
    case StripOrder::Rightmost:
      i = 63 - std::countl_zero(mask);
      break;
    case StripOrder::Random: {
      std::vector<int> idx;
      for (uint64_t t = mask; t != 0; t &= t - 1) idx.push_back(std::countr_zero(t));
      i = idx[std::uniform_int_distribution<std::size_t>(0, idx.size() - 1)(*rng)];
      break;
    }
  }
  const uint64_t bit = uint64_t{1} << i;
  const uint64_t rest = mask & ~bit;
  const int dx = spec.ext_gens()[i].degree;
  // x_J = (-1)^{|x_i| * |x_{J<i}|} x_i x_{J\i}
  Scalar front = sign(p, int64_t{dx} * spec.ext_degree(rest & (bit - 1)));

  Element inner = m_right_ext(a, deg_a, rest, order, rng);
  Element t1 = multiply(spec, spec.ext_gen(i), inner).scaled(sign(p, int64_t{dx} * (deg_a - d())));
  Element ax = multiply(spec, a, spec.ext_gen(i));
  Element t2 = m_right_ext(ax, deg_a + dx, rest, order, rng).scaled(-sign(p, int64_t{d()} * dx));
  return (t1 + t2).scaled(front);
}

Element BVContext::m_with_order(const Element& a, const Element& b, StripOrder order,
                                std::mt19937_64* rng) const {
  if (order == StripOrder::Random && rng == nullptr) throw Error("random strip order needs a generator");
  const int deg_a = degree(a);
  loop().degree(b);
  Element out;
  if (a.is_zero()) return out;
  for (const auto& [mb, cb] : b.terms()) {
    Element q = model_.poly_part(mb, cb);
    int dq = loop().degree(mb) - loop().ext_degree(mb.ext);
    Element r = m_right_ext(a, deg_a, mb.ext, order, rng);
    if (r.is_zero()) continue;
    out += multiply(loop(), q, r).scaled(sign(prime(), int64_t{dq} * (deg_a - d())));
  }
  return out;
}

Element BVContext::m(const Element& a, const Element& b) const {
  return m_with_order(a, b, StripOrder::Leftmost);
}

Element BVContext::dlcop(const Element& a, const Element& b) const {
  return m(a, b).scaled(sign(prime(), int64_t{d()} * (degree(a) - d())));
}

Element BVContext::m_closed_form(const Element& a, const Element& b) const {
  if (!hypothesis_h()) throw Error("closed form requires hypothesis (H)");
  loop().degree(a);
  loop().degree(b);
  const uint32_t p = prime();
  const uint64_t full = model_.full_mask();
  const int n = static_cast<int>(model_.rank());
  Element out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if ((ma.ext | mb.ext) != full) continue;
      const uint64_t k = ma.ext & mb.ext;
      Monomial ka, kb, km;
      ka.ext = k;
      kb.ext = mb.ext & ~k;
      std::vector<int> seq_k = ka.ext_indices();
      std::vector<int> j_minus_k = kb.ext_indices();
      std::vector<int> eps_seq = seq_k;
      eps_seq.insert(eps_seq.end(), j_minus_k.begin(), j_minus_k.end());
      std::vector<int> eps2_seq = ma.ext_indices();
      eps2_seq.insert(eps2_seq.end(), j_minus_k.begin(), j_minus_k.end());
      int l = std::popcount(ma.ext), mm = std::popcount(mb.ext), u = std::popcount(k);
      int e = inversion_parity(eps2_seq) + inversion_parity(eps_seq) + mm + u + l * u + n * mm;
      km.ext = k;
      for (std::size_t i = 0; i < kMaxPolyGens; ++i)
        km.exp[i] = static_cast<uint16_t>(ma.exp[i] + mb.exp[i]);
      out.add_term(km, ca * cb * sign(p, e));
    }
  }
  return out;
}

Element BVContext::bracket(const Element& a, const Element& b) const {
  Scalar s = sign(prime(), degree(a));
  return delta(m(a, b)).scaled(s) - m(delta(a), b).scaled(s) - m(a, delta(b));
}

Element BVContext::shifted_bracket(const Element& a, const Element& b) const {
  Scalar s = sign(prime(), degree(a) - d());
  return delta(m(a, b)).scaled(s) - m(delta(a), b).scaled(s) - m(a, delta(b));
}

Element BVContext::canonical_splitting(const Element& poly, uint64_t mask) const {
  if (prime() != 2) throw Error("the canonical splitting is defined modulo 2 only");
  for (const auto& [m, c] : poly.terms())
    if (m.ext != 0) throw Error("canonical splitting expects a polynomial coefficient");
  if ((mask & ~model_.full_mask()) != 0) throw Error("exterior index out of range");
  return dlcop(model_.top(), multiply(loop(), loop().ext_monomial(mask), poly));
}

}  // namespace sbv
