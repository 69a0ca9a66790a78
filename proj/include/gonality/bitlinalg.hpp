#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gonality {

/// Vector in F_2^n, n <= 64; bit i is coordinate i.
struct BinVector {
  int n = 0;
  std::uint64_t bits = 0;

  bool get(int i) const { return (bits >> i) & 1; }
  void set(int i, bool v) {
    bits = v ? (bits | (std::uint64_t{1} << i)) : (bits & ~(std::uint64_t{1} << i));
  }
  bool operator==(const BinVector&) const = default;
};

/// Parity of the dot product a.b over F_2.
inline bool dot(std::uint64_t a, std::uint64_t b) { return __builtin_parityll(a & b); }

/// Square n x n matrix over F_2, n <= 8. Row i is a bit mask; bit j of
/// row i is the entry (i, j). Acts on column vectors: (g x)_i = row_i . x.
class BinMatrix {
 public:
  BinMatrix() = default;
  explicit BinMatrix(int n) : n_(n) {}
  BinMatrix(int n, std::initializer_list<std::uint8_t> rows);

  static BinMatrix identity(int n);
  /// Matrix whose j-th column is cols[j].
  static BinMatrix from_columns(int n, const std::uint8_t* cols);
  static BinMatrix zero(int n) { return BinMatrix(n); }

  int dim() const { return n_; }
  std::uint8_t row(int i) const { return rows_[i]; }
  void set_row(int i, std::uint8_t mask) { rows_[i] = mask; }
  bool at(int i, int j) const { return (rows_[i] >> j) & 1; }
  void set(int i, int j, bool v);

  std::uint8_t column(int j) const;
  std::array<std::uint8_t, 8> columns() const;

  /// g x for x given as a bit mask.
  std::uint8_t apply(std::uint8_t x) const;
  BinMatrix operator*(const BinMatrix& o) const;
  BinMatrix transpose() const;

  auto operator<=>(const BinMatrix&) const = default;
  bool operator==(const BinMatrix&) const = default;

  /// "01,02,04,08,10": one hex row mask per row.
  std::string to_string() const;
  static BinMatrix parse(const std::string& text);

 private:
  int n_ = 0;
  std::array<std::uint8_t, 8> rows_{};
};

int rank(const BinMatrix& m);

/// Basis of the right null space {x : M x = 0}, in reduced echelon order
/// (one vector per free column, ascending).
std::vector<BinVector> kernel(const BinMatrix& m);

std::optional<BinMatrix> invert(const BinMatrix& m);

/// Rank of an arbitrary list of row vectors (any length <= 64).
int rank_of_rows(std::vector<std::uint64_t> rows);

/// Parametrized solution set of a linear system over F_2.
struct AffineSolutionSpace {
  BinVector particular;
  std::vector<BinVector> basis;

  std::size_t dimension() const { return basis.size(); }
  /// Member with coordinates `combo` (bit i selects basis[i]).
  BinVector member(std::uint64_t combo) const;
  /// Visits all 2^dim members in Gray-code order.
  void for_each(const std::function<void(const BinVector&)>& visit) const;
};

/// A single equation a . x = rhs.
struct LinearEquation {
  BinVector coeffs;
  bool rhs = false;
};

/// Solves the system over F_2 with `unknowns` variables; nullopt when
/// inconsistent. All coefficient vectors must have length `unknowns`.
std::optional<AffineSolutionSpace> solve_affine(const std::vector<LinearEquation>& system,
                                                int unknowns);

}  // namespace gonality
