#include "gonality/bitlinalg.hpp"

#include <bit>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace gonality {

BinMatrix::BinMatrix(int n, std::initializer_list<std::uint8_t> rows) : n_(n) {
  if (n < 0 || n > 8 || static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("BinMatrix: bad dimension");
  int i = 0;
  const std::uint8_t mask = static_cast<std::uint8_t>((1u << n) - 1);
  for (auto r : rows) {
    if (r & ~mask) throw std::invalid_argument("BinMatrix: row out of range");
    rows_[i++] = r;
  }
}

BinMatrix BinMatrix::identity(int n) {
  BinMatrix m(n);
  for (int i = 0; i < n; ++i) m.rows_[i] = static_cast<std::uint8_t>(1u << i);
  return m;
}

BinMatrix BinMatrix::from_columns(int n, const std::uint8_t* cols) {
  BinMatrix m(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if ((cols[j] >> i) & 1) m.rows_[i] |= static_cast<std::uint8_t>(1u << j);
  return m;
}

void BinMatrix::set(int i, int j, bool v) {
  if (v)
    rows_[i] |= static_cast<std::uint8_t>(1u << j);
  else
    rows_[i] &= static_cast<std::uint8_t>(~(1u << j));
}

std::uint8_t BinMatrix::column(int j) const {
  std::uint8_t c = 0;
  for (int i = 0; i < n_; ++i) c |= static_cast<std::uint8_t>(((rows_[i] >> j) & 1) << i);
  return c;
}

std::array<std::uint8_t, 8> BinMatrix::columns() const {
  std::array<std::uint8_t, 8> cols{};
  for (int j = 0; j < n_; ++j) cols[j] = column(j);
  return cols;
}

std::uint8_t BinMatrix::apply(std::uint8_t x) const {
  std::uint8_t y = 0;
  for (int i = 0; i < n_; ++i)
    y |= static_cast<std::uint8_t>(std::popcount(static_cast<unsigned>(rows_[i] & x)) & 1) << i;
  return y;
}

BinMatrix BinMatrix::operator*(const BinMatrix& o) const {
  if (n_ != o.n_) throw std::invalid_argument("BinMatrix: dimension mismatch");
  // Row i of the product is the XOR of the rows of o selected by row i of this.
  BinMatrix r(n_);
  for (int i = 0; i < n_; ++i) {
    std::uint8_t acc = 0;
    for (int k = 0; k < n_; ++k)
      if ((rows_[i] >> k) & 1) acc ^= o.rows_[k];
    r.rows_[i] = acc;
  }
  return r;
}

BinMatrix BinMatrix::transpose() const {
  auto cols = columns();
  BinMatrix t(n_);
  for (int i = 0; i < n_; ++i) t.rows_[i] = cols[i];
  return t;
}

std::string BinMatrix::to_string() const {
  std::string out;
  char buf[4];
  for (int i = 0; i < n_; ++i) {
    if (i) out += ',';
    std::snprintf(buf, sizeof buf, "%02x", rows_[i]);
    out += buf;
  }
  return out;
}

BinMatrix BinMatrix::parse(const std::string& text) {
  std::vector<std::uint8_t> rows;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    unsigned long v = std::stoul(tok, &used, 16);
    if (used != tok.size() || v > 0xff) throw std::invalid_argument("bad matrix row: " + tok);
    rows.push_back(static_cast<std::uint8_t>(v));
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0 || n > 8) throw std::invalid_argument("bad matrix: " + text);
  BinMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (rows[i] >> n) throw std::invalid_argument("bad matrix row width: " + text);
    m.rows_[i] = rows[i];
  }
  return m;
}

int rank_of_rows(std::vector<std::uint64_t> rows) {
  int r = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] == 0) continue;
    const std::uint64_t pivot = rows[i] & (~rows[i] + 1);
    ++r;
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (rows[j] & pivot) rows[j] ^= rows[i];
  }
  return r;
}

int rank(const BinMatrix& m) {
  std::vector<std::uint64_t> rows(m.dim());
  for (int i = 0; i < m.dim(); ++i) rows[i] = m.row(i);
  return rank_of_rows(std::move(rows));
}

namespace {

// Reduced row echelon form over F_2 of rows with `width` columns.
// Returns the pivot column of each surviving row.
std::vector<int> rref(std::vector<std::uint64_t>& rows, int width) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < width && r < rows.size(); ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    std::size_t p = r;
    while (p < rows.size() && !(rows[p] & bit)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && (rows[i] & bit)) rows[i] ^= rows[r];
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::vector<BinVector> null_space(std::vector<std::uint64_t> rows, int width) {
  auto pivots = rref(rows, width);
  std::vector<bool> is_pivot(width, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<BinVector> basis;
  for (int f = 0; f < width; ++f) {
    if (is_pivot[f]) continue;
    BinVector v{width, std::uint64_t{1} << f};
    for (std::size_t i = 0; i < rows.size(); ++i)
      if ((rows[i] >> f) & 1) v.bits |= std::uint64_t{1} << pivots[i];
    basis.push_back(v);
  }
  return basis;
}

}  // namespace

std::vector<BinVector> kernel(const BinMatrix& m) {
  std::vector<std::uint64_t> rows(m.dim());
  for (int i = 0; i < m.dim(); ++i) rows[i] = m.row(i);
  return null_space(std::move(rows), m.dim());
}

std::optional<BinMatrix> invert(const BinMatrix& m) {
  const int n = m.dim();
  // Augmented rows [M | I] packed as low n bits and high n bits.
  std::vector<std::uint64_t> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = m.row(i) | (std::uint64_t{1} << (n + i));
  auto pivots = rref(rows, n);
  if (static_cast<int>(pivots.size()) != n) return std::nullopt;
  BinMatrix inv(n);
  for (int i = 0; i < n; ++i) inv.set_row(i, static_cast<std::uint8_t>(rows[i] >> n));
  return inv;
}

BinVector AffineSolutionSpace::member(std::uint64_t combo) const {
  BinVector v = particular;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if ((combo >> i) & 1) v.bits ^= basis[i].bits;
  return v;
}

void AffineSolutionSpace::for_each(const std::function<void(const BinVector&)>& visit) const {
  BinVector v = particular;
  visit(v);
  const std::uint64_t count = std::uint64_t{1} << basis.size();
  for (std::uint64_t i = 1; i < count; ++i) {
    v.bits ^= basis[std::countr_zero(i)].bits;
    visit(v);
  }
}

std::optional<AffineSolutionSpace> solve_affine(const std::vector<LinearEquation>& system,
                                                int unknowns) {
  if (unknowns < 0 || unknowns > 63) throw std::invalid_argument("solve_affine: too many unknowns");
  const std::uint64_t rhs_bit = std::uint64_t{1} << unknowns;
  std::vector<std::uint64_t> rows;
  rows.reserve(system.size());
  for (const auto& eq : system) {
    if (eq.coeffs.n != unknowns)
      throw std::invalid_argument("solve_affine: equation length mismatch");
    rows.push_back(eq.coeffs.bits | (eq.rhs ? rhs_bit : 0));
  }
  auto pivots = rref(rows, unknowns + 1);
  if (!pivots.empty() && pivots.back() == unknowns) return std::nullopt;

  AffineSolutionSpace space;
  space.particular = BinVector{unknowns, 0};
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i] & rhs_bit) space.particular.bits |= std::uint64_t{1} << pivots[i];
  for (auto& r : rows) r &= rhs_bit - 1;
  space.basis = null_space(std::move(rows), unknowns);
  return space;
}

}  // namespace gonality
