#include "stringbv/hochschild.hpp"

#include <bit>

#include "stringbv/linalg.hpp"

namespace sbv {

namespace {

Scalar sign(uint32_t p, int64_t k) { return Scalar::sign_pow(p, ((k % 2) + 2) % 2); }

}  // namespace

// ---------------------------------------------------------------- HHAlgebra

HHAlgebra::HHAlgebra(std::vector<HHGenerator> gens, uint32_t p) : gens_(std::move(gens)) {
  if (p != 0 && !is_prime(p)) throw Error("coefficient characteristic must be 0 or a prime");
  std::vector<Generator> poly, ext;
  for (auto& g : gens_) {
    if (g.dual_name.empty()) g.dual_name = "d" + g.name;
    if (p != 2 && g.exterior && g.degree % 2 == 0)
      throw Error("exterior generator " + g.name + " must have odd degree unless p = 2");
    if (p != 2 && !g.exterior && g.degree % 2 != 0)
      throw Error("polynomial generator " + g.name + " has odd degree with p != 2");
  }
  gen_slot_.resize(rank());
  dual_slot_.resize(rank());
  for (std::size_t k = 0; k < rank(); ++k)
    if (!gens_[k].exterior) {
      gen_slot_[k] = {false, poly.size()};
      poly.push_back({gens_[k].name, gens_[k].degree});
    }
  for (std::size_t k = 0; k < rank(); ++k)
    if (gens_[k].exterior) {
      dual_slot_[k] = {false, poly.size()};
      poly.push_back({gens_[k].dual_name, 1 - gens_[k].degree});
    }
  for (std::size_t k = 0; k < rank(); ++k)
    if (gens_[k].exterior) {
      gen_slot_[k] = {true, ext.size()};
      ext.push_back({gens_[k].name, gens_[k].degree});
    }
  for (std::size_t k = 0; k < rank(); ++k)
    if (!gens_[k].exterior) {
      dual_slot_[k] = {true, ext.size()};
      ext.push_back({gens_[k].dual_name, 1 - gens_[k].degree});
    }
  spec_ = AlgebraSpec(p, poly, ext, {});
}

Element HHAlgebra::gen(std::size_t k) const {
  const Slot& s = gen_slot_.at(k);
  return s.exterior ? spec_.ext_gen(s.index) : spec_.poly_gen(s.index);
}

Element HHAlgebra::dual(std::size_t k) const {
  const Slot& s = dual_slot_.at(k);
  return s.exterior ? spec_.ext_gen(s.index) : spec_.poly_gen(s.index);
}

bool HHAlgebra::has_delta() const {
  for (const auto& g : gens_) {
    if (!g.exterior) return false;
    if (prime() != 2 && g.degree % 2 == 0) return false;
  }
  return true;
}

std::vector<Element> HHAlgebra::factors(const Monomial& m) const {
  std::vector<Element> out;
  for (int i : m.ext_indices()) out.push_back(spec_.ext_gen(i));
  for (std::size_t i = 0; i < spec_.num_poly(); ++i)
    for (unsigned e = 0; e < m.exp[i]; ++e) out.push_back(spec_.poly_gen(i));
  return out;
}

Element HHAlgebra::generator_bracket(const Element& g, const Element& h) const {
  const uint32_t p = prime();
  for (std::size_t k = 0; k < rank(); ++k) {
    Element v = gen(k), phi = dual(k);
    int dv = gens_[k].degree, dphi = 1 - dv;
    if (g == phi && h == v) return spec_.constant(sign(p, dphi - 1));
    if (g == v && h == phi)
      return spec_.constant(-sign(p, int64_t{dv - 1} * (dphi - 1)) * sign(p, dphi - 1));
  }
  return {};
}

// {g, f_from * ... * f_last} for a generator g.
Element HHAlgebra::bracket_gen_mono(const Element& g, const std::vector<Element>& fs,
                                    std::size_t from) const {
  const uint32_t p = prime();
  const int dg = *spec_.degree(g);
  Element out;
  int before = 0;
  for (std::size_t i = from; i < fs.size(); ++i) {
    Element c = generator_bracket(g, fs[i]);
    if (!c.is_zero()) {
      Element ordered = c.scaled(sign(p, int64_t{dg - 1} * before));
      Element left = spec_.one();
      for (std::size_t j = from; j < i; ++j) left = multiply(spec_, left, fs[j]);
      Element right = spec_.one();
      for (std::size_t j = i + 1; j < fs.size(); ++j) right = multiply(spec_, right, fs[j]);
      out += multiply(spec_, multiply(spec_, left, ordered), right);
    }
    before += *spec_.degree(fs[i]);
  }
  return out;
}

Element HHAlgebra::bracket_mono(const Monomial& a, const Monomial& b) const {
  const uint32_t p = prime();
  const int da = spec_.degree(a);
  std::vector<Element> fa = factors(a), fb = factors(b);
  Element out;
  int before = 0;
  for (std::size_t i = 0; i < fb.size(); ++i) {
    const int dh = *spec_.degree(fb[i]);
    // {A, h} = -(-1)^{(|A|-1)(|h|-1)} {h, A}
    Element ah = bracket_gen_mono(fb[i], fa, 0).scaled(-sign(p, int64_t{da - 1} * (dh - 1)));
    if (!ah.is_zero()) {
      Element left = spec_.one();
      for (std::size_t j = 0; j < i; ++j) left = multiply(spec_, left, fb[j]);
      Element right = spec_.one();
      for (std::size_t j = i + 1; j < fb.size(); ++j) right = multiply(spec_, right, fb[j]);
      Element t = multiply(spec_, multiply(spec_, left, ah), right);
      out += t.scaled(sign(p, int64_t{da - 1} * before));
    }
    before += dh;
  }
  return out;
}

Element HHAlgebra::bracket(const Element& a, const Element& b) const {
  spec_.degree(a);
  spec_.degree(b);
  Element out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out += bracket_mono(ma, mb).scaled(ca * cb);
  return out;
}

Element HHAlgebra::delta_mono(const Monomial& m, PeelOrder order) const {
  const uint32_t p = prime();
  std::vector<Element> fs = factors(m);
  if (fs.size() <= 1) return {};
  if (order == PeelOrder::Front) {
    const Element& g = fs.front();
    const int dg = *spec_.degree(g);
    Element rest = spec_.one();
    for (std::size_t j = 1; j < fs.size(); ++j) rest = multiply(spec_, rest, fs[j]);
    const Monomial& rm = rest.terms().begin()->first;
    Element t = multiply(spec_, g, delta_mono(rm, order)) + bracket_gen_mono(g, fs, 1);
    return t.scaled(sign(p, dg));
  }
  const Element& g = fs.back();
  Element rest = spec_.one();
  for (std::size_t j = 0; j + 1 < fs.size(); ++j) rest = multiply(spec_, rest, fs[j]);
  const Monomial& rm = rest.terms().begin()->first;
  const int dr = spec_.degree(rm);
  return multiply(spec_, delta_mono(rm, order), g) +
         bracket_mono(rm, g.terms().begin()->first).scaled(sign(p, dr));
}

Element HHAlgebra::delta(const Element& a, PeelOrder order) const {
  if (!has_delta())
    throw Error("the BV operator is only defined for exterior V with p = 2 or odd degrees");
  spec_.degree(a);
  Element out;
  for (const auto& [m, c] : a.terms()) out += delta_mono(m, order).scaled(c);
  return out;
}

// ------------------------------------------------------------ FiniteAlgebra

FiniteAlgebra FiniteAlgebra::exterior(const std::vector<int>& degrees, uint32_t p) {
  if (degrees.size() > 16) throw Error("exterior algebra on too many generators");
  FiniteAlgebra a;
  a.p_ = p;
  const std::size_t n = degrees.size();
  std::vector<uint64_t> masks;
  for (uint64_t m = 0; m < (uint64_t{1} << n); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](uint64_t x, uint64_t y) {
    Monomial mx, my;
    mx.ext = x;
    my.ext = y;
    return MonomialLess{}(mx, my);
  });
  std::vector<std::size_t> index(masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i) index[masks[i]] = i;
  for (uint64_t m : masks) {
    int deg = 0;
    std::string name;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) {
        deg += degrees[i];
        name += (name.empty() ? "" : "*") + ("x" + std::to_string(i + 1));
      }
    a.degrees_.push_back(deg);
    a.names_.push_back(name.empty() ? "1" : name);
  }
  const std::size_t dim = masks.size();
  // Koszul sign of x_S * x_T: pairs (s in S, t in T) with s > t.
  auto product_sign = [&](uint64_t s, uint64_t t) {
    int e = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (s >> i & 1)
        for (std::size_t j = 0; j < i; ++j)
          if (t >> j & 1) e += degrees[i] * degrees[j];
    return sign(p, e);
  };
  a.table_.assign(dim * dim, std::vector<Scalar>(dim, Scalar::zero(p)));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      uint64_t s = masks[i], t = masks[j];
      if (s & t) continue;
      a.table_[i * dim + j][index[s | t]] = product_sign(s, t);
    }
  for (std::size_t i = 0; i < n; ++i) a.generators_.push_back(index[uint64_t{1} << i]);
  a.fact_.assign(dim, {0, 0, Scalar::one(p)});
  for (std::size_t i = 1; i < dim; ++i) {
    uint64_t s = masks[i];
    uint64_t low = s & (~s + 1);
    a.fact_[i] = {index[low], index[s & ~low], Scalar::one(p)};
  }
  a.top_ = index[(uint64_t{1} << n) - 1];
  return a;
}

FiniteAlgebra FiniteAlgebra::truncated_polynomial(int degree, unsigned n, uint32_t p) {
  if (n < 1) throw Error("truncated polynomial algebra needs n >= 1");
  if (p != 2 && degree % 2 != 0) throw Error("odd-degree polynomial generator needs p = 2");
  FiniteAlgebra a;
  a.p_ = p;
  const std::size_t dim = n + 1;
  for (std::size_t k = 0; k < dim; ++k) {
    a.degrees_.push_back(static_cast<int>(k) * degree);
    a.names_.push_back(k == 0 ? "1" : (k == 1 ? "x" : "x^" + std::to_string(k)));
  }
  a.table_.assign(dim * dim, std::vector<Scalar>(dim, Scalar::zero(p)));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j + i < dim; ++j) a.table_[i * dim + j][i + j] = Scalar::one(p);
  a.generators_ = {1};
  a.fact_.assign(dim, {0, 0, Scalar::one(p)});
  for (std::size_t i = 1; i < dim; ++i) a.fact_[i] = {1, i - 1, Scalar::one(p)};
  a.top_ = n;
  return a;
}

std::vector<Scalar> FiniteAlgebra::multiply(const std::vector<Scalar>& a,
                                            const std::vector<Scalar>& b) const {
  std::vector<Scalar> out(dim(), Scalar::zero(p_));
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (b[j].is_zero()) continue;
      Scalar c = a[i] * b[j];
      const auto& prod = product(i, j);
      for (std::size_t k = 0; k < dim(); ++k)
        if (!prod[k].is_zero()) out[k] += c * prod[k];
    }
  }
  return out;
}

TraceData standard_trace(const FiniteAlgebra& a) {
  TraceData tr{a.top()};
  Matrix pairing(a.prime(), a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) pairing.at(i, j) = a.product(i, j)[tr.top];
  if (rank(pairing) != a.dim()) throw Error("the trace pairing is degenerate");
  return tr;
}

namespace {

std::vector<Scalar> basis_vector(const FiniteAlgebra& a, std::size_t i) {
  std::vector<Scalar> v(a.dim(), Scalar::zero(a.prime()));
  v[i] = Scalar::one(a.prime());
  return v;
}

std::vector<Scalar> axpy(std::vector<Scalar> y, const Scalar& c, const std::vector<Scalar>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
  return y;
}

}  // namespace

bool is_derivation(const FiniteAlgebra& a, const Derivation& d) {
  const uint32_t p = a.prime();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      std::vector<Scalar> lhs(a.dim(), Scalar::zero(p));
      const auto& prod = a.product(i, j);
      for (std::size_t k = 0; k < a.dim(); ++k)
        if (!prod[k].is_zero()) lhs = axpy(lhs, prod[k], d.images[k]);
      std::vector<Scalar> rhs = a.multiply(d.images[i], basis_vector(a, j));
      rhs = axpy(rhs, sign(p, int64_t{d.degree} * a.degree(i)),
                 a.multiply(basis_vector(a, i), d.images[j]));
      if (lhs != rhs) return false;
    }
  return true;
}

Derivation derivation_from_generators(const FiniteAlgebra& a, int degree,
                                      const std::vector<std::vector<Scalar>>& gen_images) {
  const uint32_t p = a.prime();
  if (gen_images.size() != a.generators().size()) throw Error("one image per generator expected");
  Derivation d;
  d.degree = degree;
  d.images.assign(a.dim(), std::vector<Scalar>(a.dim(), Scalar::zero(p)));
  for (std::size_t g = 0; g < gen_images.size(); ++g) {
    if (gen_images[g].size() != a.dim()) throw Error("generator image has wrong length");
    d.images[a.generators()[g]] = gen_images[g];
  }
  for (std::size_t i = 1; i < a.dim(); ++i) {
    const auto& f = a.factorization(i);
    if (std::find(a.generators().begin(), a.generators().end(), i) != a.generators().end())
      continue;
    auto t = a.multiply(d.images[f.gen], basis_vector(a, f.rest));
    t = axpy(t, sign(p, int64_t{degree} * a.degree(f.gen)),
             a.multiply(basis_vector(a, f.gen), d.images[f.rest]));
    for (auto& c : t) c *= f.coef;
    d.images[i] = t;
  }
  if (!is_derivation(a, d)) throw Error("generator images do not extend to a derivation");
  return d;
}

std::optional<Derivation> unit_in_image_delta_via_derivation(const FiniteAlgebra& a,
                                                             const TraceData& tr, int degree) {
  const uint32_t p = a.prime();
  const std::size_t n = a.dim();
  // Unknowns: coefficient of e_k in d(e_j) whenever |e_k| = |e_j| + degree.
  std::vector<std::pair<std::size_t, std::size_t>> vars;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (a.degree(k) == a.degree(j) + degree) vars.push_back({j, k});
  Matrix m(p, 0, vars.size());
  std::vector<Scalar> rhs;
  auto var_row = [&]() { return std::vector<Scalar>(vars.size(), Scalar::zero(p)); };
  // Leibniz: d(e_i e_j) - d(e_i) e_j - (-1)^{|d||e_i|} e_i d(e_j) = 0, coordinatewise.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<Scalar>> rows(n, var_row());
      const auto& prod = a.product(i, j);
      const Scalar s = sign(p, int64_t{degree} * a.degree(i));
      for (std::size_t v = 0; v < vars.size(); ++v) {
        auto [src, dst] = vars[v];
        // contributes prod[src] * e_dst to d(e_i e_j)
        if (!prod[src].is_zero()) rows[dst][v] += prod[src];
        if (src == i) {
          const auto& q = a.product(dst, j);
          for (std::size_t r = 0; r < n; ++r)
            if (!q[r].is_zero()) rows[r][v] -= q[r];
        }
        if (src == j) {
          const auto& q = a.product(i, dst);
          for (std::size_t r = 0; r < n; ++r)
            if (!q[r].is_zero()) rows[r][v] -= s * q[r];
        }
      }
      for (auto& row : rows) {
        bool nonzero = std::any_of(row.begin(), row.end(), [](const Scalar& c) { return !c.is_zero(); });
        if (!nonzero) continue;
        m.push_row(row);
        rhs.push_back(Scalar::zero(p));
      }
    }
  // Trace: tr(d(e_j)) = tr(e_j).
  for (std::size_t j = 0; j < n; ++j) {
    auto row = var_row();
    for (std::size_t v = 0; v < vars.size(); ++v)
      if (vars[v].first == j && vars[v].second == tr.top) row[v] = Scalar::one(p);
    m.push_row(row);
    rhs.push_back(j == tr.top ? Scalar::one(p) : Scalar::zero(p));
  }
  if (vars.empty()) {
    // Only the zero map; tr o 0 = tr fails since tr(top) = 1.
    return std::nullopt;
  }
  auto sol = solve_affine(m, rhs);
  if (!sol) return std::nullopt;
  Derivation d;
  d.degree = degree;
  d.images.assign(n, std::vector<Scalar>(n, Scalar::zero(p)));
  for (std::size_t v = 0; v < vars.size(); ++v)
    d.images[vars[v].first][vars[v].second] = sol->particular[v];
  return d;
}

bool delta_of_derivation_class(const FiniteAlgebra& alg, const TraceData& tr,
                               const Derivation& d, const std::vector<Scalar>& a) {
  if (!is_derivation(alg, d)) throw Error("the given map is not a derivation");
  const uint32_t p = alg.prime();
  const Scalar s = sign(p, 1 + d.degree);
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    Scalar lhs = s * tr(d.images[i]);
    Scalar rhs = tr(alg.multiply(a, basis_vector(alg, i)));
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace sbv
