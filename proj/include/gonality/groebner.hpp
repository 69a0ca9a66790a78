#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gonality/binfield.hpp"
#include "gonality/quadform.hpp"

namespace gonality {

/// Monomial in at most five variables: exponent of variable i in byte i,
/// total degree in bits 40..47. Exponents stay below 128.
class Monomial {
 public:
  static constexpr int kMaxVars = 5;
  static constexpr std::uint64_t kExpMask = 0xFFFFFFFFFFull;

  constexpr Monomial() = default;
  static constexpr Monomial from_packed(std::uint64_t p) {
    Monomial m;
    m.packed_ = p;
    return m;
  }
  static Monomial var(int i, int e = 1);
  static Monomial from_exponents(std::span<const int> e);

  std::uint64_t packed() const { return packed_; }
  int exponent(int i) const { return static_cast<int>((packed_ >> (8 * i)) & 0xFF); }
  int degree() const { return static_cast<int>(packed_ >> 40); }
  /// Bit i set iff variable i occurs.
  unsigned support() const;

  /// Sort key: larger key means larger in degrevlex.
  std::uint64_t key() const { return packed_ ^ kExpMask; }

  Monomial operator*(Monomial o) const { return from_packed(packed_ + o.packed_); }
  bool divides(Monomial o) const {
    constexpr std::uint64_t guard = 0x8080808080ull;
    return ((((o.packed_ & kExpMask) | guard) - (packed_ & kExpMask)) & guard) == guard;
  }
  /// o / this; requires divides(o).
  Monomial quotient_of(Monomial o) const { return from_packed(o.packed_ - packed_); }

  bool operator==(const Monomial&) const = default;
  /// degrevlex
  std::strong_ordering operator<=>(const Monomial& o) const { return key() <=> o.key(); }

 private:
  std::uint64_t packed_ = 0;
};

Monomial lcm(Monomial a, Monomial b);
bool coprime(Monomial a, Monomial b);

/// Polynomial over F_2: a set of monomials kept in descending degrevlex order.
class MultiPoly {
 public:
  MultiPoly() = default;
  /// Repeated monomials cancel in pairs.
  static MultiPoly from_terms(std::vector<Monomial> terms);
  static MultiPoly from_sorted_unique(std::vector<Monomial> terms);
  static MultiPoly monomial(Monomial m) { return from_sorted_unique({m}); }
  static MultiPoly one() { return monomial(Monomial{}); }

  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Monomial leading() const { return terms_.front(); }
  /// Maximum total degree; -1 for zero.
  int degree() const;
  bool is_homogeneous() const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(Monomial m) const;
  bool operator==(const MultiPoly&) const = default;

  /// Formal partial derivative in variable i.
  MultiPoly derivative(int i) const;

  /// Value at a point over F_{2^k}; coordinates are field bit patterns.
  std::uint8_t eval(const FieldDesc& f, std::span<const std::uint8_t> x) const;

  std::string to_string(const std::vector<std::string>& vars) const;

 private:
  std::vector<Monomial> terms_;
};

MultiPoly to_poly(const QuadraticForm& q);
/// Inverse of to_poly; throws unless the polynomial is a quadratic form in n variables.
QuadraticForm to_quadratic_form(const MultiPoly& p, int n);

/// Variable names for P^1..P^4: P2 is x,y,z; P3 is x,y,z,w; P4 is v,w,x,y,z.
std::vector<std::string> ambient_vars(int dim);

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "vw + xy + z^2", "x*(y+z)^2 + 1" etc. Variables are single
/// letters from `vars`; juxtaposition multiplies.
MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars);

struct Ideal {
  std::vector<MultiPoly> generators;
  int nvars = 5;

  bool homogeneous() const;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroebnerOptions {
  std::size_t reduction_budget = 1'000'000;
};

/// Reduced degrevlex Groebner basis (Buchberger with Gebauer-Moeller pair
/// criteria). Throws BudgetExceeded when the reduction budget runs out.
std::vector<MultiPoly> groebner_basis(const Ideal& ideal, const GroebnerOptions& opt = {});

/// Complete reduction of f by `basis`.
MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis);

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g);

/// Every S-polynomial of `basis` reduces to zero.
bool is_groebner_basis(const std::vector<MultiPoly>& basis);

/// Projective dimension of V(lt) from the leading monomials of a Groebner
/// basis in `nvars` variables; -1 when empty.
int proj_dimension_of_leading(const std::vector<Monomial>& leading, int nvars);

/// Projective dimension of V(I); -1 when V(I) is empty. Throws on
/// non-homogeneous input.
int proj_dimension(const Ideal& ideal, const GroebnerOptions& opt = {});

/// Number of degree-d monomials outside the leading-term ideal.
long long hilbert_function_of_leading(const std::vector<Monomial>& leading, int nvars, int d);
long long hilbert_function(const Ideal& ideal, int d);

/// The ten 3x3 minors of the Jacobian of three polynomials in five variables.
std::vector<MultiPoly> jacobian_minors(const std::vector<MultiPoly>& forms);

/// All r x r minors of the r x nvars Jacobian of r <= 3 polynomials.
std::vector<MultiPoly> jacobian_maximal_minors(const std::vector<MultiPoly>& forms, int nvars);

struct SmoothCurveVerdict {
  int proj_dim = -1;
  bool smooth = false;
  int degree = 0;
  int arithmetic_genus = 0;
  bool budget_exceeded = false;

  bool genus5_curve() const { return proj_dim == 1 && smooth && degree == 8 && arithmetic_genus == 5; }
};

/// Dimension of V(q1, q2, q3) in P^4 and, for curves, smoothness via the
/// Jacobian minors; degree and arithmetic genus from the Hilbert polynomial.
SmoothCurveVerdict smooth_curve_check(const QuadraticForm& q1, const QuadraticForm& q2,
                                      const QuadraticForm& q3, const GroebnerOptions& opt = {});

}  // namespace gonality
