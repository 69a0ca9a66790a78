#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gonality/binfield.hpp"
#include "gonality/groebner.hpp"
#include "gonality/quadform.hpp"

namespace gonality {

/// Point of P^n over F_{2^k}; first nonzero coordinate is 1.
struct ProjectivePoint {
  const FieldDesc* field = nullptr;
  std::vector<std::uint8_t> coords;

  /// Scales so the first nonzero coordinate is 1; throws on the zero vector.
  static ProjectivePoint normalized(const FieldDesc& f, std::vector<std::uint8_t> coords);
  bool operator==(const ProjectivePoint& o) const { return field == o.field && coords == o.coords; }
  /// "(1 : t^3 : t + 1 : t^2 + t)"
  std::string to_string() const;
};

/// Field element written as a polynomial in the generator t.
std::string format_in_t(std::uint8_t bits);

/// Number of points of P^dim(F_{2^k}).
std::uint64_t projective_space_size(int dim, int k);

/// Visits every normalized point of P^dim(F_{2^k}).
void for_each_point(int dim, int k, const std::function<void(std::span<const std::uint8_t>)>& visit);

/// Default enumeration budget for count_points.
inline constexpr std::uint64_t kPointBudget = 10'000'000;

/// #V(forms) in P^dim(F_{2^k}). Throws std::length_error above the budget.
long long count_points(const std::vector<MultiPoly>& forms, int ambient_dim, int k);
std::vector<ProjectivePoint> find_points(const std::vector<MultiPoly>& forms, int ambient_dim, int k);

/// Point counts of intersections of quadrics in P^4 over F_{2^k}, k = 1..4,
/// by per-point bit-plane masks of the products x_i x_j.
class QuadricPointSieve {
 public:
  static constexpr int kMaxDegree = 4;
  using PointSet = std::array<std::vector<std::uint32_t>, kMaxDegree>;

  QuadricPointSieve();
  static const QuadricPointSieve& shared();

  PointSet all() const;
  /// Points of `set` on V(q), per extension degree.
  PointSet restrict(const PointSet& set, const QuadraticForm& q) const;
  std::array<int, kMaxDegree> count(const PointSet& set, const QuadraticForm& q) const;
  std::array<int, kMaxDegree> count(const QuadraticForm& q1, const QuadraticForm& q2,
                                    const QuadraticForm& q3) const;

 private:
  bool vanishes(int k, std::uint32_t point, std::uint16_t coeffs) const {
    const std::uint16_t* m = &masks_[k - 1][static_cast<std::size_t>(point) * k];
    for (int b = 0; b < k; ++b)
      if (__builtin_parity(coeffs & m[b])) return false;
    return true;
  }

  std::array<std::vector<std::uint16_t>, kMaxDegree> masks_;
  std::array<std::uint32_t, kMaxDegree> sizes_{};
};

struct HyperellipticFamily {
  int genus = 0;
  /// y^2 + (x^{g+1} + x^g + 1) y + [x(x+1)]^{g-d} in variables (x, y).
  MultiPoly affine;
  /// z^2 + (w^{g+1} + w + 1) z + w^{2+2d} (1+w)^{g-d} in variables (w, z).
  MultiPoly at_infinity;
  int affine_points = 0;
  int infinity_points = 0;

  int rational_points() const { return affine_points + infinity_points; }
};

/// The genus-g hyperelliptic curve with six rational points; throws for g < 2.
HyperellipticFamily hyperelliptic_family(int g);

struct GonalityBound {
  int value = 0;
  std::string criterion;
};

struct GonalityCertificate {
  int genus = 0;
  GonalityBound lower;
  GonalityBound upper;
  int rational_points = 0;

  bool exact() const { return lower.value == upper.value; }
};

/// Bounds valid for every curve of the given genus.
GonalityCertificate gonality_bounds(int genus, bool has_point);

/// Smooth plane quartic in x, y, z. Throws std::invalid_argument when singular.
GonalityCertificate genus3_certificate(const MultiPoly& quartic);

enum class QuadricSurfaceKind { Split, Cone, Anisotropic };

std::string_view to_string(QuadricSurfaceKind k);

/// Kind of a quadric surface in P^3; throws for geometrically reducible forms.
QuadricSurfaceKind quadric_surface_kind(const QuadraticForm& q4);

/// Canonical genus-4 curve V(quadric, cubic) in P^3 with variables x, y, z, w.
/// Throws when the intersection is not a smooth curve.
GonalityCertificate genus4_certificate(const QuadraticForm& quadric, const MultiPoly& cubic);

/// Three quadrics in v, w, x, y, z with their counts over F_{2^k}, k = 1..4.
struct CurveRecord {
  QuadraticForm q1, q2, q3;
  std::array<int, 4> counts{};
  SmoothCurveVerdict verdict;

  int n(int k) const { return counts[k - 1]; }
};

CurveRecord make_curve_record(const QuadraticForm& q1, const QuadraticForm& q2, const QuadraticForm& q3);

/// Throws std::invalid_argument unless the record is a smooth genus-5 curve.
GonalityCertificate genus5_certificate(const CurveRecord& record);

enum class Singularity { Cusp, SplitNode, NonsplitNode };

std::string_view to_string(Singularity s);

/// Plane quintic f(x, y, z) with a double point at (0:0:1).
struct QuinticModel {
  MultiPoly f;
  Singularity singularity = Singularity::SplitNode;
  /// Degree-2 part at (0:0:1), in x, y.
  QuadraticForm f2;
};

/// Reads off f2 and the singularity type. Throws when f is not a quintic
/// with multiplicity exactly 2 at (0:0:1) or when a cusp is not ordinary.
QuinticModel quintic_model(const MultiPoly& f);

/// F_2-points of the smooth model. Throws unless (0:0:1) is the only
/// singular point.
int quintic_smooth_model_count(const QuinticModel& model);

/// |N_k - (2^k + 1)| <= 2 g 2^{k/2} for every stored k.
bool weil_bound_holds(std::span<const int> counts, int genus);
/// N_1 <= N_2, N_1 <= N_3 and the orbit congruences
/// N_2 = N_1 mod 2, N_3 = N_1 mod 3, N_4 = N_2 mod 4.
bool frobenius_congruences_hold(std::span<const int> counts);

}  // namespace gonality
