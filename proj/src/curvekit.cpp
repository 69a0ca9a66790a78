#include "gonality/curvekit.hpp"

#include <cmath>
#include <stdexcept>

#include "gonality/bitlinalg.hpp"

namespace gonality {

ProjectivePoint ProjectivePoint::normalized(const FieldDesc& f, std::vector<std::uint8_t> coords) {
  std::size_t lead = 0;
  while (lead < coords.size() && coords[lead] == 0) ++lead;
  if (lead == coords.size()) throw std::invalid_argument("projective point: all coordinates zero");
  const std::uint8_t s = f.pow(coords[lead], f.size() - 2);
  for (auto& c : coords) c = f.mul(c, s);
  return {&f, std::move(coords)};
}

std::string format_in_t(std::uint8_t bits) {
  if (!bits) return "0";
  std::string out;
  for (int e = 7; e >= 0; --e) {
    if (!((bits >> e) & 1)) continue;
    if (!out.empty()) out += " + ";
    out += e == 0 ? "1" : e == 1 ? "t" : "t^" + std::to_string(e);
  }
  return out;
}

std::string ProjectivePoint::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += " : ";
    out += format_in_t(coords[i]);
  }
  return out + ")";
}

std::uint64_t projective_space_size(int dim, int k) {
  const std::uint64_t q = std::uint64_t{1} << k;
  std::uint64_t total = 0, power = 1;
  for (int i = 0; i <= dim; ++i) {
    total += power;
    power *= q;
  }
  return total;
}

void for_each_point(int dim, int k, const std::function<void(std::span<const std::uint8_t>)>& visit) {
  const std::uint32_t q = FieldDesc::get(k).size();
  std::vector<std::uint8_t> x(dim + 1);
  for (int lead = 0; lead <= dim; ++lead) {
    std::fill(x.begin(), x.end(), 0);
    x[lead] = 1;
    // Odometer over the coordinates after the leading 1.
    for (;;) {
      visit(x);
      int i = dim;
      while (i > lead && x[i] == q - 1) x[i--] = 0;
      if (i == lead) break;
      ++x[i];
    }
  }
}

namespace {

void check_budget(int dim, int k) {
  if (projective_space_size(dim, k) > kPointBudget)
    throw std::length_error("point enumeration budget exceeded");
}

bool all_vanish(const std::vector<MultiPoly>& forms, const FieldDesc& f, std::span<const std::uint8_t> x) {
  for (const auto& g : forms)
    if (g.eval(f, x)) return false;
  return true;
}

}  // namespace

long long count_points(const std::vector<MultiPoly>& forms, int ambient_dim, int k) {
  check_budget(ambient_dim, k);
  const FieldDesc& f = FieldDesc::get(k);
  long long n = 0;
  for_each_point(ambient_dim, k, [&](std::span<const std::uint8_t> x) {
    if (all_vanish(forms, f, x)) ++n;
  });
  return n;
}

std::vector<ProjectivePoint> find_points(const std::vector<MultiPoly>& forms, int ambient_dim, int k) {
  check_budget(ambient_dim, k);
  const FieldDesc& f = FieldDesc::get(k);
  std::vector<ProjectivePoint> out;
  for_each_point(ambient_dim, k, [&](std::span<const std::uint8_t> x) {
    if (all_vanish(forms, f, x)) out.push_back({&f, {x.begin(), x.end()}});
  });
  return out;
}

QuadricPointSieve::QuadricPointSieve() {
  for (int k = 1; k <= kMaxDegree; ++k) {
    const FieldDesc& f = FieldDesc::get(k);
    auto& masks = masks_[k - 1];
    for_each_point(4, k, [&](std::span<const std::uint8_t> x) {
      std::array<std::uint16_t, kMaxDegree> m{};
      int slot = 0;
      for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j, ++slot) {
          const std::uint8_t p = f.mul(x[i], x[j]);
          for (int b = 0; b < k; ++b)
            if ((p >> b) & 1) m[b] |= static_cast<std::uint16_t>(1u << slot);
        }
      masks.insert(masks.end(), m.begin(), m.begin() + k);
    });
    sizes_[k - 1] = static_cast<std::uint32_t>(masks.size() / k);
  }
}

const QuadricPointSieve& QuadricPointSieve::shared() {
  static const QuadricPointSieve sieve;
  return sieve;
}

QuadricPointSieve::PointSet QuadricPointSieve::all() const {
  PointSet s;
  for (int k = 1; k <= kMaxDegree; ++k) {
    s[k - 1].resize(sizes_[k - 1]);
    for (std::uint32_t i = 0; i < sizes_[k - 1]; ++i) s[k - 1][i] = i;
  }
  return s;
}

QuadricPointSieve::PointSet QuadricPointSieve::restrict(const PointSet& set, const QuadraticForm& q) const {
  const std::uint16_t c = pad_to_five(q).coeffs();
  PointSet out;
  for (int k = 1; k <= kMaxDegree; ++k)
    for (std::uint32_t p : set[k - 1])
      if (vanishes(k, p, c)) out[k - 1].push_back(p);
  return out;
}

std::array<int, QuadricPointSieve::kMaxDegree> QuadricPointSieve::count(const PointSet& set,
                                                                         const QuadraticForm& q) const {
  const std::uint16_t c = pad_to_five(q).coeffs();
  std::array<int, kMaxDegree> n{};
  for (int k = 1; k <= kMaxDegree; ++k)
    for (std::uint32_t p : set[k - 1])
      if (vanishes(k, p, c)) ++n[k - 1];
  return n;
}

std::array<int, QuadricPointSieve::kMaxDegree> QuadricPointSieve::count(const QuadraticForm& q1,
                                                                         const QuadraticForm& q2,
                                                                         const QuadraticForm& q3) const {
  return count(restrict(restrict(all(), q1), q2), q3);
}

namespace {

MultiPoly power(const MultiPoly& p, int e) {
  MultiPoly r = MultiPoly::one();
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

MultiPoly var_poly(int i) { return MultiPoly::monomial(Monomial::var(i)); }

int count_affine_f2(const MultiPoly& f, int vars) {
  const FieldDesc& f2 = FieldDesc::get(1);
  int n = 0;
  for (std::uint8_t a = 0; a < (1u << vars); ++a) {
    std::array<std::uint8_t, 2> x{static_cast<std::uint8_t>(a & 1), static_cast<std::uint8_t>((a >> 1) & 1)};
    if (!f.eval(f2, std::span<const std::uint8_t>(x.data(), vars))) ++n;
  }
  return n;
}

}  // namespace

HyperellipticFamily hyperelliptic_family(int g) {
  if (g < 2) throw std::invalid_argument("hyperelliptic family needs genus >= 2");
  const int d = g % 2;
  const MultiPoly one = MultiPoly::one();
  HyperellipticFamily h;
  h.genus = g;
  {
    const MultiPoly x = var_poly(0), y = var_poly(1);
    h.affine = y * y + (power(x, g + 1) + power(x, g) + one) * y + power(x * (x + one), g - d);
  }
  {
    const MultiPoly w = var_poly(0), z = var_poly(1);
    h.at_infinity = z * z + (power(w, g + 1) + w + one) * z + power(w, 2 + 2 * d) * power(one + w, g - d);
  }
  h.affine_points = count_affine_f2(h.affine, 2);
  // Points at infinity are the points of the second chart with w = 0.
  const FieldDesc& f2 = FieldDesc::get(1);
  for (std::uint8_t z = 0; z < 2; ++z) {
    const std::array<std::uint8_t, 2> pt{0, z};
    if (!h.at_infinity.eval(f2, pt)) ++h.infinity_points;
  }
  return h;
}

GonalityCertificate gonality_bounds(int genus, bool has_point) {
  if (genus < 0) throw std::invalid_argument("genus must be non-negative");
  GonalityCertificate c;
  c.genus = genus;
  c.lower = {1, "nonconstant map"};
  if (genus == 0)
    c.upper = {1, "genus 0 curve is a conic with a rational point"};
  else if (genus <= 2)
    c.upper = {2, genus == 1 ? "genus 1: |2P| for a rational point P" : "genus 2: canonical map"};
  else if (has_point)
    c.upper = {genus, "rational point P: |K - (g-2)P|"};
  else
    c.upper = {genus + 1, "divisor of degree 1: |(g+1)D|"};
  return c;
}

namespace {

void require_form(const MultiPoly& f, int degree, int nvars, const char* what) {
  if (f.is_zero() || !f.is_homogeneous() || f.degree() != degree)
    throw std::invalid_argument(std::string(what) + ": expected a nonzero form of degree " + std::to_string(degree));
  for (auto t : f.terms())
    for (int i = nvars; i < Monomial::kMaxVars; ++i)
      if (t.exponent(i)) throw std::invalid_argument(std::string(what) + ": too many variables");
}

std::vector<MultiPoly> with_partials(const MultiPoly& f, int nvars) {
  std::vector<MultiPoly> gens{f};
  for (int i = 0; i < nvars; ++i) {
    MultiPoly d = f.derivative(i);
    if (!d.is_zero()) gens.push_back(std::move(d));
  }
  return gens;
}

}  // namespace

GonalityCertificate genus3_certificate(const MultiPoly& quartic) {
  require_form(quartic, 4, 3, "genus-3 certificate");
  if (proj_dimension(Ideal{with_partials(quartic, 3), 3}) != -1)
    throw std::invalid_argument("genus-3 certificate: quartic is singular");
  GonalityCertificate c;
  c.genus = 3;
  c.rational_points = static_cast<int>(count_points({quartic}, 2, 1));
  c.lower = {3, "smooth plane quartic is not hyperelliptic"};
  if (c.rational_points > 0) {
    c.upper = {3, "projection from a rational point"};
  } else {
    c.lower = {4, "no rational point, so no line meets the curve in a rational triple"};
    c.upper = {4, "genus + 1"};
  }
  return c;
}

std::string_view to_string(QuadricSurfaceKind k) {
  switch (k) {
    case QuadricSurfaceKind::Split: return "split";
    case QuadricSurfaceKind::Cone: return "cone";
    case QuadricSurfaceKind::Anisotropic: return "anisotropic";
  }
  return "?";
}

QuadricSurfaceKind quadric_surface_kind(const QuadraticForm& q4) {
  if (q4.vars() != 4) throw std::invalid_argument("quadric surface needs four variables");
  const NormalFormReport nf = normal_form(q4);
  if (nf.shape == NormalShape::Hyperbolic && nf.m == 4) return QuadricSurfaceKind::Split;
  if (nf.shape == NormalShape::SquareTail && nf.m == 3) return QuadricSurfaceKind::Cone;
  if (nf.shape == NormalShape::NormTail && nf.m == 4) return QuadricSurfaceKind::Anisotropic;
  throw std::invalid_argument("quadric surface is geometrically reducible");
}

GonalityCertificate genus4_certificate(const QuadraticForm& quadric, const MultiPoly& cubic) {
  require_form(cubic, 3, 4, "genus-4 certificate");
  const QuadricSurfaceKind kind = quadric_surface_kind(quadric);
  const std::vector<MultiPoly> forms{to_poly(quadric), cubic};
  if (proj_dimension(Ideal{forms, 4}) != 1)
    throw std::invalid_argument("genus-4 certificate: not a curve");
  std::vector<MultiPoly> sing = forms;
  for (auto& m : jacobian_maximal_minors(forms, 4))
    if (!m.is_zero()) sing.push_back(std::move(m));
  if (proj_dimension(Ideal{sing, 4}) != -1) throw std::invalid_argument("genus-4 certificate: curve is singular");

  GonalityCertificate c;
  c.genus = 4;
  c.rational_points = static_cast<int>(count_points(forms, 3, 1));
  c.lower = {3, "canonical curve is not hyperelliptic"};
  if (kind == QuadricSurfaceKind::Split) {
    c.upper = {3, "ruling of the split quadric"};
    return c;
  }
  if (kind == QuadricSurfaceKind::Cone) {
    c.upper = {3, "lines through the cone vertex"};
    return c;
  }
  c.lower = {4, "quadric has no rational ruling"};
  if (c.rational_points > 0) {
    c.upper = {4, "rational point P: |K - 2P|"};
    return c;
  }
  if (count_points(forms, 3, 2) > 0) {
    c.upper = {4, "point over F4"};
    return c;
  }
  for (const auto& p : find_points(forms, 3, 4)) {
    std::vector<std::uint64_t> rows(p.coords.begin(), p.coords.end());
    if (rank_of_rows(rows) < 4) {
      c.upper = {4, "degree-4 point on a rational hyperplane " + p.to_string()};
      return c;
    }
  }
  c.lower = {5, "no point over F4 and no degree-4 point on a rational hyperplane"};
  c.upper = {5, "genus + 1"};
  return c;
}

CurveRecord make_curve_record(const QuadraticForm& q1, const QuadraticForm& q2, const QuadraticForm& q3) {
  CurveRecord r{pad_to_five(q1), pad_to_five(q2), pad_to_five(q3), {}, {}};
  r.verdict = smooth_curve_check(r.q1, r.q2, r.q3);
  r.counts = QuadricPointSieve::shared().count(r.q1, r.q2, r.q3);
  return r;
}

GonalityCertificate genus5_certificate(const CurveRecord& record) {
  if (!record.verdict.genus5_curve())
    throw std::invalid_argument("genus-5 certificate: not a smooth genus-5 curve");
  GonalityCertificate c;
  c.genus = 5;
  c.rational_points = record.n(1);
  c.lower = {4, "smooth intersection of three quadrics is not trigonal"};
  for (unsigned s = 1; s < 8; ++s) {
    std::uint16_t f = 0;
    if (s & 1) f ^= record.q1.coeffs();
    if (s & 2) f ^= record.q2.coeffs();
    if (s & 4) f ^= record.q3.coeffs();
    const FormType t = classify(QuadraticForm(5, f));
    if (t == FormType::I || t == FormType::II) {
      c.upper = {4, "net contains a quadric of type " + std::string(to_string(t))};
      return c;
    }
  }
  c.lower = {5, "net has no quadric of type I or II"};
  if (record.n(1) > 0)
    c.upper = {5, "rational point P: |K - 3P|"};
  else if (record.n(3) > 0)
    c.upper = {5, "point over F8"};
  else
    c.upper = {6, "genus + 1"};
  return c;
}

std::string_view to_string(Singularity s) {
  switch (s) {
    case Singularity::Cusp: return "cusp";
    case Singularity::SplitNode: return "split node";
    case Singularity::NonsplitNode: return "nonsplit node";
  }
  return "?";
}

QuinticModel quintic_model(const MultiPoly& f) {
  require_form(f, 5, 3, "quintic model");
  // f = sum_d f_d(x, y) z^{5-d}.
  std::array<std::vector<Monomial>, 6> parts;
  for (auto t : f.terms()) parts[5 - t.exponent(2)].push_back(t);
  if (!parts[0].empty() || !parts[1].empty())
    throw std::invalid_argument("quintic model: (0:0:1) is not a singular point");
  if (parts[2].empty()) throw std::invalid_argument("quintic model: multiplicity at (0:0:1) exceeds 2");

  QuinticModel m;
  m.f = f;
  std::uint16_t c = 0;
  for (auto t : parts[2]) c |= static_cast<std::uint16_t>(1u << QuadraticForm::bit_index(2, t.exponent(0) ? 0 : 1, t.exponent(1) ? 1 : 0));
  m.f2 = QuadraticForm(2, c);
  const bool xx = m.f2.coeff(0, 0), xy = m.f2.coeff(0, 1), yy = m.f2.coeff(1, 1);
  if (xy) {
    m.singularity = (xx && yy) ? Singularity::NonsplitNode : Singularity::SplitNode;
    return m;
  }
  // f2 = (a x + c y)^2; the cusp is ordinary iff f3 is nonzero on the tangent line.
  m.singularity = Singularity::Cusp;
  const MultiPoly f3 = MultiPoly::from_sorted_unique(parts[3]);
  const std::array<std::uint8_t, 3> dir{static_cast<std::uint8_t>(yy), static_cast<std::uint8_t>(xx), 1};
  if (f3.eval(FieldDesc::get(1), dir) == 0)
    throw std::invalid_argument("quintic model: cusp is not ordinary");
  return m;
}

int quintic_smooth_model_count(const QuinticModel& model) {
  const auto jac = with_partials(model.f, 3);
  if (proj_dimension(Ideal{jac, 3}) != 0)
    throw std::invalid_argument("quintic model: singular locus is not finite");
  for (int k = 1; k <= 5; ++k) {
    const auto sing = find_points(jac, 2, k);
    if (sing.size() != 1 || sing.front().coords != std::vector<std::uint8_t>{0, 0, 1})
      throw std::invalid_argument("quintic model: singular point other than (0:0:1) over F" +
                                  std::to_string(1u << k));
  }
  const int on_curve = static_cast<int>(count_points({model.f}, 2, 1)) - 1;
  switch (model.singularity) {
    case Singularity::SplitNode: return on_curve + 2;
    case Singularity::NonsplitNode: return on_curve;
    case Singularity::Cusp: return on_curve + 1;
  }
  return on_curve;
}

bool weil_bound_holds(std::span<const int> counts, int genus) {
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    const double q = std::ldexp(1.0, k);
    if (std::abs(counts[i] - (q + 1)) > 2.0 * genus * std::sqrt(q)) return false;
  }
  return true;
}

bool frobenius_congruences_hold(std::span<const int> counts) {
  const auto n = [&](int k) { return counts[k - 1]; };
  if (counts.size() >= 2 && (n(1) > n(2) || (n(2) - n(1)) % 2)) return false;
  if (counts.size() >= 3 && (n(1) > n(3) || (n(3) - n(1)) % 3)) return false;
  if (counts.size() >= 4 && (n(4) - n(2)) % 4) return false;
  return true;
}

}  // namespace gonality
