#include "stringbv/linalg.hpp"

#include <map>

#include "stringbv/kernels.hpp"

namespace sbv {

Matrix::Matrix(uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(p)) {}

void Matrix::push_row(const std::vector<Scalar>& row) {
  if (rows_ == 0 && data_.empty()) cols_ = row.size();
  if (row.size() != cols_) throw Error("matrix row width mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

namespace {

// Gauss-Jordan over F_p on residue rows using the dispatched axpy kernel.
struct ModField {
  using Row = std::vector<uint32_t>;
  uint32_t p;
  kernels::AxpyFn axpy;

  explicit ModField(uint32_t prime) : p(prime), axpy(kernels::select_axpy(prime)) {}

  Row load(const Matrix& a, std::size_t r, std::size_t width) const {
    Row row(width, 0);
    for (std::size_t c = 0; c < a.cols(); ++c) row[c] = a.at(r, c).residue();
    return row;
  }
  bool is_zero(const Row& row, std::size_t c) const { return row[c] == 0; }
  void normalize(Row& row, std::size_t c) const {
    uint32_t inv = Scalar::from_int(p, row[c]).inv().residue();
    for (auto& v : row) v = static_cast<uint32_t>(uint64_t{v} * inv % p);
  }
  // dst -= dst[c] * src
  void eliminate(Row& dst, const Row& src, std::size_t c) const {
    if (dst[c] == 0) return;
    axpy(dst.data(), src.data(), p - dst[c], dst.size(), p);
  }
  void set(Row& row, std::size_t c, const Scalar& s) const { row[c] = s.residue(); }
  Scalar get(const Row& row, std::size_t c) const { return Scalar::from_int(p, row[c]); }
};

struct RatField {
  using Row = std::vector<mpq_class>;
  uint32_t p = 0;

  Row load(const Matrix& a, std::size_t r, std::size_t width) const {
    Row row(width, mpq_class(0));
    for (std::size_t c = 0; c < a.cols(); ++c) row[c] = a.at(r, c).rational();
    return row;
  }
  bool is_zero(const Row& row, std::size_t c) const { return sgn(row[c]) == 0; }
  void normalize(Row& row, std::size_t c) const {
    mpq_class inv = 1 / row[c];
    for (auto& v : row) v *= inv;
  }
  void eliminate(Row& dst, const Row& src, std::size_t c) const {
    if (sgn(dst[c]) == 0) return;
    mpq_class f = dst[c];
    for (std::size_t i = 0; i < dst.size(); ++i)
      if (sgn(src[i]) != 0) dst[i] -= f * src[i];
  }
  void set(Row& row, std::size_t c, const Scalar& s) const { row[c] = s.rational(); }
  Scalar get(const Row& row, std::size_t c) const { return Scalar::from_rational(row[c]); }
};

template <class Field>
std::optional<AffineSolution> solve_impl(const Field& f, const Matrix& a,
                                         const std::vector<Scalar>* b) {
  const std::size_t n = a.cols();
  const std::size_t width = n + 1;
  std::vector<typename Field::Row> rows;
  rows.reserve(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    rows.push_back(f.load(a, r, width));
    if (b) f.set(rows.back(), n, (*b)[r]);
  }
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < n && next < rows.size(); ++c) {
    std::size_t pr = next;
    while (pr < rows.size() && f.is_zero(rows[pr], c)) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[pr], rows[next]);
    f.normalize(rows[next], c);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != next) f.eliminate(rows[r], rows[next], c);
    pivots.push_back(c);
    ++next;
  }
  for (std::size_t r = next; r < rows.size(); ++r)
    if (!f.is_zero(rows[r], n)) return std::nullopt;

  AffineSolution sol;
  sol.particular.assign(n, Scalar::zero(a.prime()));
  for (std::size_t i = 0; i < pivots.size(); ++i) sol.particular[pivots[i]] = f.get(rows[i], n);

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(n, Scalar::zero(a.prime()));
    v[free] = Scalar::one(a.prime());
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -f.get(rows[i], free);
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

std::optional<AffineSolution> dispatch(const Matrix& a, const std::vector<Scalar>* b) {
  if (a.prime() == 0) return solve_impl(RatField{}, a, b);
  return solve_impl(ModField(a.prime()), a, b);
}

}  // namespace

std::optional<AffineSolution> solve_affine(const Matrix& a, const std::vector<Scalar>& b) {
  if (b.size() != a.rows()) throw Error("right-hand side length does not match matrix rows");
  for (const auto& s : b)
    if (s.prime() != a.prime()) throw Error("scalar characteristic mismatch");
  return dispatch(a, &b);
}

std::size_t rank(const Matrix& a) {
  auto sol = dispatch(a, nullptr);
  return a.cols() - sol->kernel.size();
}

std::vector<Scalar> coordinates(const Element& e, const std::vector<Monomial>& basis,
                                uint32_t p) {
  std::map<Monomial, std::size_t, MonomialLess> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  std::vector<Scalar> out(basis.size(), Scalar::zero(p));
  for (const auto& [m, c] : e.terms()) {
    auto it = index.find(m);
    if (it == index.end()) throw Error("element is not in the span of the given basis");
    out[it->second] = c;
  }
  return out;
}

std::optional<std::vector<Scalar>> solve_linear(const AlgebraSpec& spec,
                                                const std::vector<Element>& columns,
                                                const Element& target) {
  std::optional<int> deg;
  auto check = [&](const Element& e) {
    auto d = spec.degree(e);
    if (!d) return;
    if (deg && *deg != *d) throw Error("solve_linear: inputs of mixed degree");
    deg = d;
  };
  for (const auto& c : columns) check(c);
  check(target);

  std::map<Monomial, std::size_t, MonomialLess> rows;
  auto index = [&](const Element& e) {
    for (const auto& [m, c] : e.terms()) rows.try_emplace(m, rows.size());
  };
  for (const auto& c : columns) index(c);
  index(target);

  const uint32_t p = spec.prime();
  Matrix a(p, rows.size(), columns.size());
  std::vector<Scalar> b(rows.size(), Scalar::zero(p));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [m, c] : columns[j].terms()) a.at(rows.at(m), j) = c;
  for (const auto& [m, c] : target.terms()) b[rows.at(m)] = c;
  auto sol = solve_affine(a, b);
  if (!sol) return std::nullopt;
  return sol->particular;
}

}  // namespace sbv
