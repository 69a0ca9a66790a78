#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gonality/binfield.hpp"
#include "gonality/bitlinalg.hpp"

namespace gonality {

/// Quadratic form Q(x) = sum_{i<=j} c_{i,j} x_i x_j over F_2 in n <= 5
/// variables. Coefficients are packed lexicographically in (i, j):
/// bit 0 is c_{1,1}, bit 1 is c_{1,2}, ..., the last bit is c_{n,n}.
/// This packing is part of the census file format.
class QuadraticForm {
 public:
  static constexpr int kMaxVars = 5;

  QuadraticForm() = default;
  QuadraticForm(int n, std::uint16_t coeffs);

  /// Number of coefficient slots n(n+1)/2.
  static int slots(int n) { return n * (n + 1) / 2; }
  /// Bit position of c_{i,j} (0-based, i <= j).
  static int bit_index(int n, int i, int j);

  /// Form with the single monomial x_i x_j (x_i^2 when i == j).
  static QuadraticForm monomial(int n, int i, int j);

  int vars() const { return n_; }
  std::uint16_t coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_ == 0; }
  bool coeff(int i, int j) const;

  /// Q at an F_2 point given as a bit mask.
  bool eval(std::uint32_t x) const;
  /// Q at a point over F_{2^k}; coordinates are field bit patterns.
  std::uint8_t eval(const FieldDesc& f, std::span<const std::uint8_t> x) const;
  /// Associated bilinear form b(x, y) = Q(x+y) - Q(x) - Q(y).
  bool polar(std::uint32_t x, std::uint32_t y) const;

  /// Alternating Gram matrix of b_Q.
  BinMatrix gram() const;

  QuadraticForm operator+(const QuadraticForm& o) const;
  bool operator==(const QuadraticForm&) const = default;
  auto operator<=>(const QuadraticForm&) const = default;

  /// Four hex digits of the packed coefficients, e.g. "0021".
  std::string hex() const;
  static QuadraticForm from_hex(int n, std::string_view text);

  /// Default variable names: v,w,x,y,z (n=5); x,y,z,w (n=4); x,y,z (n=3); x,y (n=2).
  static std::vector<std::string> default_vars(int n);
  /// Polynomial rendering such as "vw + xy + z^2".
  std::string to_string() const;
  std::string to_string(const std::vector<std::string>& vars) const;

 private:
  int n_ = 0;
  std::uint16_t coeffs_ = 0;
};

/// Coefficient vector of x -> Q(g x). g need not be invertible.
QuadraticForm substitute(const QuadraticForm& q, const BinMatrix& g);

/// Precomputed linear map Q -> Q o g on packed coefficients.
class SubstitutionTable {
 public:
  SubstitutionTable(int n, const BinMatrix& g);
  std::uint16_t apply(std::uint16_t coeffs) const { return lo_[coeffs & 0xff] ^ hi_[coeffs >> 8]; }
  QuadraticForm apply(const QuadraticForm& q) const { return {n_, apply(q.coeffs())}; }

 private:
  int n_;
  std::array<std::uint16_t, 256> lo_{};
  std::array<std::uint16_t, 128> hi_{};
};

struct FormAnatomy {
  BinMatrix gram;
  std::vector<BinVector> radical_basis;
  std::vector<BinVector> singular_basis;
  int proj_point_count = 0;
  int sing_proj_dim = -1;

  int gram_rank() const { return gram.dim() - static_cast<int>(radical_basis.size()); }
};

/// Radical, singular subspace and F_2-point count. Throws on the zero form.
FormAnatomy anatomy(const QuadraticForm& q);

/// Number of F_{2^k}-points of V(Q) in P^{n-1}.
long long count_proj_points(const QuadraticForm& q, int k = 1);

/// Linear-equivalence classes of quadratic forms in five variables.
/// The enumerator order is the order used by the census pencil filter.
enum class FormType { Zero, NotGeomIrreducible, I, II, III, IV };

std::string_view to_string(FormType t);

/// Type of the quadric hypersurface in P^4. Forms in fewer than five
/// variables are read as forms in five variables (a cone).
FormType classify(const QuadraticForm& q);

/// Embeds a form in n < 5 variables into five variables (first n slots).
QuadraticForm pad_to_five(const QuadraticForm& q);

/// x1^2 + x1 x2 + x2^2, the norm form of F_4 / F_2.
QuadraticForm norm_form();

enum class NormalShape { Hyperbolic, NormTail, SquareTail };

std::string_view to_string(NormalShape s);

struct NormalFormReport {
  NormalShape shape = NormalShape::Hyperbolic;
  int m = 0;
  /// Columns are the new basis; substitute(Q, transform) == form().
  BinMatrix transform;
  int n = 0;

  QuadraticForm form() const;
};

/// The named normal form in n variables:
///   Hyperbolic  x1x2 + ... + x_{m-1}x_m
///   NormTail    x1x2 + ... + x_{m-3}x_{m-2} + N(x_{m-1}, x_m)
///   SquareTail  x1x2 + ... + x_{m-2}x_{m-1} + x_m^2
QuadraticForm normal_form_of(NormalShape shape, int m, int n);

/// Constructive reduction to a normal form. Throws on the zero form.
NormalFormReport normal_form(const QuadraticForm& q);

/// Classification of all 2^15 - 1 nonzero forms in five variables.
class TypeTable {
 public:
  FormType operator[](std::uint16_t coeffs) const { return types_[coeffs]; }
  FormType type(const QuadraticForm& q) const { return types_[q.coeffs()]; }
  std::size_t size() const { return types_.size() - 1; }
  std::size_t count(FormType t) const { return counts_[static_cast<int>(t)]; }
  /// All forms of the given types, ascending by packed coefficients.
  std::vector<QuadraticForm> forms_of(std::initializer_list<FormType> types) const;

  friend TypeTable build_type_table();

 private:
  std::vector<FormType> types_;
  std::array<std::size_t, 6> counts_{};
};

TypeTable build_type_table();

/// Process-wide table, built on first use.
const TypeTable& type_table();

}  // namespace gonality
