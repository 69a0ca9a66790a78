#include "gonality/verification.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gonality/census.hpp"
#include "gonality/orthgroup.hpp"

namespace gonality {

std::string_view to_string(VerifyScope s) {
  switch (s) {
    case VerifyScope::All: return "all";
    case VerifyScope::Genus1: return "genus1";
    case VerifyScope::Genus2: return "genus2";
    case VerifyScope::Genus3: return "genus3";
    case VerifyScope::Genus4: return "genus4";
    case VerifyScope::Genus5: return "genus5";
    case VerifyScope::AppendixA: return "appendixA";
  }
  return "?";
}

VerifyScope parse_scope(std::string_view text) {
  for (auto s : {VerifyScope::All, VerifyScope::Genus1, VerifyScope::Genus2, VerifyScope::Genus3,
                 VerifyScope::Genus4, VerifyScope::Genus5, VerifyScope::AppendixA})
    if (to_string(s) == text) return s;
  throw std::invalid_argument("unknown scope: " + std::string(text));
}

namespace examples {

namespace {
MultiPoly plane(const char* text) { return parse_poly(text, ambient_vars(2)); }
MultiPoly space(const char* text) { return parse_poly(text, ambient_vars(3)); }
QuadraticForm quadric4(const char* text) { return to_quadratic_form(space(text), 4); }
QuadraticForm quadric5(const char* text) { return to_quadratic_form(parse_poly(text, ambient_vars(4)), 5); }
}  // namespace

MultiPoly elliptic_curve() { return plane("y^2z + yz^2 + x^3 + xz^2"); }
MultiPoly quartic_with_seven_points() { return plane("x^3y + x^2y^2 + xz^3 + x^2z^2 + y^3z + yz^3"); }
MultiPoly pointless_quartic() {
  return plane("x^4 + y^4 + z^4 + x^2y^2 + x^2z^2 + y^2z^2 + x^2yz + xy^2z + xyz^2");
}
QuadraticForm genus4_split_quadric() { return quadric4("xy + zw"); }
MultiPoly genus4_trigonal_cubic() { return space("xy^2 + y^3 + x^2z + y^2z + xz^2 + x^2w + y^2w + xw^2"); }
QuadraticForm genus4_cone_quadric() { return quadric4("xy + z^2"); }
QuadraticForm genus4_nonsplit_quadric() { return quadric4("xy + z^2 + zw + w^2"); }
MultiPoly genus4_tetragonal_cubic() { return space("xy^2 + x^2z + y^2z + yz^2 + x^2w + z^2w"); }
MultiPoly genus4_pentagonal_cubic() { return space("x^3 + y^3 + z^3 + y^2w + xzw"); }
MultiPoly trigonal_quintic() {
  return plane("xyz^3 + x^3z^2 + y^3z^2 + x^4z + xy^3z + y^4z + x^4y + x^2y^3");
}
CurveRecord tetragonal_genus5() {
  return make_curve_record(quadric5("vw + xy"), quadric5("vx + z(v + w + z)"), quadric5("(x + y)^2 + y(v + w)"));
}
CurveRecord pentagonal_genus5() {
  const auto w = witness_triple();
  return make_curve_record(w[0], w[1], w[2]);
}

}  // namespace examples

bool VerificationReport::all_pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

namespace {

std::string cell_value(const TableCell& c) { return c.value ? std::to_string(*c.value) : "-inf"; }

std::string upper_text(const TableCell& c) { return c.upper_assumed ? c.upper + " (assumed [external])" : c.upper; }

}  // namespace

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  for (const auto& e : entries)
    os << (e.pass ? "PASS  " : "FAIL  ") << e.id << ": claimed " << e.claimed << ", computed " << e.computed << '\n';
  if (!table.empty()) {
    os << "\nN2(g, gonality)\n";
    for (const auto& c : table)
      os << "  g=" << c.genus << " gonality=" << c.gonality << "  " << cell_value(c)
         << (c.verified ? "" : "  [unverified]") << "\n    lower: " << c.lower << "\n    upper: " << upper_text(c)
         << '\n';
  }
  os << (all_pass() ? "all checks passed\n" : "some checks FAILED\n");
  return os.str();
}

std::string VerificationReport::to_kv() const {
  std::ostringstream os;
  for (const auto& e : entries)
    os << "entry\tid=" << e.id << "\tclaimed=" << e.claimed << "\tcomputed=" << e.computed
       << "\tstatus=" << (e.pass ? "pass" : "fail") << '\n';
  for (const auto& c : table)
    os << "table\tgenus=" << c.genus << "\tgonality=" << c.gonality << "\tvalue=" << cell_value(c)
       << "\tverified=" << (c.verified ? 1 : 0) << "\tlower=" << c.lower << "\tupper=" << upper_text(c) << '\n';
  os << "status=" << (all_pass() ? "pass" : "fail") << '\n';
  return os.str();
}

namespace {

class Battery {
 public:
  explicit Battery(VerificationReport& r) : r_(r) {}

  bool check(const std::string& id, long long claimed, long long computed) {
    return check(id, std::to_string(claimed), std::to_string(computed));
  }
  bool check(const std::string& id, const std::string& claimed, const std::string& computed) {
    r_.entries.push_back({id, claimed, computed, claimed == computed});
    return claimed == computed;
  }
  void fail(const std::string& id, const std::string& claimed, const std::string& why) {
    r_.entries.push_back({id, claimed, "error: " + why, false});
  }
  void cell(int g, int gon, std::optional<int> value, std::string lower, std::string upper, bool assumed,
            bool verified) {
    r_.table.push_back({g, gon, value, std::move(lower), std::move(upper), assumed, verified});
  }

 private:
  VerificationReport& r_;
};

std::string gonality_text(const GonalityCertificate& c) {
  return c.exact() ? std::to_string(c.lower.value)
                   : "[" + std::to_string(c.lower.value) + ", " + std::to_string(c.upper.value) + "]";
}

void genus0_and_1(Battery& b) {
  const long long p1 = static_cast<long long>(projective_space_size(1, 1));
  bool ok = b.check("genus0.points_on_P1", 3, p1);
  b.cell(0, 1, 3, "P^1 has " + std::to_string(p1) + " points", "every genus-0 curve is P^1", false, ok);

  const long long e = count_points({examples::elliptic_curve()}, 2, 1);
  ok = b.check("genus1.elliptic_curve.points", 5, e);
  const int weil = static_cast<int>(std::floor(3 + 2 * std::sqrt(2.0)));
  ok &= b.check("genus1.weil_bound", 5, weil);
  b.cell(1, 2, 5, "y^2 + y = x^3 + x has " + std::to_string(e) + " points",
         "Weil bound floor(3 + 2 sqrt 2) = " + std::to_string(weil), false, ok);
}

bool hyperelliptic(Battery& b, int g_lo, int g_hi) {
  bool ok = true;
  for (int g = g_lo; g <= g_hi; ++g)
    ok &= b.check("hyperelliptic.genus" + std::to_string(g) + ".points", 6, hyperelliptic_family(g).rational_points());
  return ok;
}

void hyperelliptic_cell(Battery& b, int g, bool ok) {
  b.cell(g, 2, 6, "hyperelliptic family member with 6 points", "at most 3 points over each point of P^1: 3 * 2",
         false, ok);
}

void genus3(Battery& b) {
  const bool hyp = hyperelliptic(b, 3, 3);
  hyperelliptic_cell(b, 3, hyp);

  const auto c3 = genus3_certificate(examples::quartic_with_seven_points());
  bool ok = b.check("genus3.gonality3.points", 7, c3.rational_points);
  ok &= b.check("genus3.gonality3.gonality", "3", gonality_text(c3));
  const long long plane = static_cast<long long>(projective_space_size(2, 1));
  ok &= b.check("genus3.plane_points", 7, plane);
  b.cell(3, 3, 7, "plane quartic through all 7 points, " + c3.upper.criterion,
         "canonical model is a plane quartic; P^2 has " + std::to_string(plane) + " points", false, ok);

  const auto c4 = genus3_certificate(examples::pointless_quartic());
  ok = b.check("genus3.gonality4.points", 0, c4.rational_points);
  ok &= b.check("genus3.gonality4.gonality", "4", gonality_text(c4));
  const auto any = gonality_bounds(3, true);
  ok &= b.check("genus3.point_forces_gonality_at_most", 3, any.upper.value);
  b.cell(3, 4, 0, "pointless plane quartic, " + c4.lower.criterion, any.upper.criterion + " gives gonality <= 3",
         false, ok);
}

void genus4(Battery& b) {
  const bool hyp = hyperelliptic(b, 4, 4);
  hyperelliptic_cell(b, 4, hyp);

  for (auto [kind, pts] : {std::pair{QuadricSurfaceKind::Split, 9}, {QuadricSurfaceKind::Cone, 7},
                           {QuadricSurfaceKind::Anisotropic, 5}}) {
    const QuadraticForm q = kind == QuadricSurfaceKind::Split  ? examples::genus4_split_quadric()
                            : kind == QuadricSurfaceKind::Cone ? examples::genus4_cone_quadric()
                                                               : examples::genus4_nonsplit_quadric();
    b.check("genus4.quadric." + std::string(to_string(kind)) + ".kind", std::string(to_string(kind)),
            std::string(to_string(quadric_surface_kind(q))));
    b.check("genus4.quadric." + std::string(to_string(kind)) + ".points", pts, count_proj_points(q));
  }

  const auto c3 = genus4_certificate(examples::genus4_split_quadric(), examples::genus4_trigonal_cubic());
  bool ok = b.check("genus4.gonality3.points", 8, c3.rational_points);
  ok &= b.check("genus4.gonality3.gonality", "3", gonality_text(c3));
  b.cell(4, 3, 8, "curve on the split quadric with 8 points, " + c3.upper.criterion,
         "N2(4) <= 8 for every genus-4 curve", true, ok);

  const QuadraticForm ns = examples::genus4_nonsplit_quadric();
  const auto c4 = genus4_certificate(ns, examples::genus4_tetragonal_cubic());
  ok = b.check("genus4.gonality4.points", 5, c4.rational_points);
  ok &= b.check("genus4.gonality4.gonality", "4", gonality_text(c4));
  const long long surface = count_proj_points(ns);
  ok &= b.check("genus4.nonsplit_quadric.points", 5, surface);
  b.cell(4, 4, 5, "curve on the nonsplit quadric with 5 points, " + c4.upper.criterion,
         "gonality 4 forces the nonsplit quadric, which has " + std::to_string(surface) + " points", false, ok);

  const auto cubic = examples::genus4_pentagonal_cubic();
  const auto c5 = genus4_certificate(ns, cubic);
  const std::vector<MultiPoly> eqs{to_poly(ns), cubic};
  ok = b.check("genus4.gonality5.points", 0, c5.rational_points);
  ok &= b.check("genus4.gonality5.gonality", "5", gonality_text(c5));
  ok &= b.check("genus4.gonality5.points_over_F4", 0, count_points(eqs, 3, 2));
  ok &= b.check("genus4.gonality5.points_over_F16", 4, count_points(eqs, 3, 4));
  const auto any = gonality_bounds(4, true);
  ok &= b.check("genus4.point_forces_gonality_at_most", 4, any.upper.value);
  b.cell(4, 5, 0, "pointless curve, " + c5.lower.criterion, any.upper.criterion + " gives gonality <= 4", false, ok);
}

void genus5_examples(Battery& b) {
  const bool hyp = hyperelliptic(b, 5, 5);
  hyperelliptic_cell(b, 5, hyp);

  const auto model = quintic_model(examples::trigonal_quintic());
  bool ok = b.check("genus5.gonality3.singularity", "split node", std::string(to_string(model.singularity)));
  const int smooth = quintic_smooth_model_count(model);
  ok &= b.check("genus5.gonality3.points", 8, smooth);
  b.cell(5, 3, 8, "nodal plane quintic, smooth model has " + std::to_string(smooth) + " points",
         "trigonal plane quintic model: q^2 + q points off the node plus 2 over it", false, ok);

  const auto r4 = examples::tetragonal_genus5();
  ok = b.check("genus5.gonality4.dimension", 1, r4.verdict.proj_dim);
  ok &= b.check("genus5.gonality4.smooth", 1, r4.verdict.smooth ? 1 : 0);
  ok &= b.check("genus5.gonality4.points", 9, r4.n(1));
  const auto c4 = genus5_certificate(r4);
  ok &= b.check("genus5.gonality4.gonality", "4", gonality_text(c4));
  b.cell(5, 4, 9, "intersection of three quadrics with 9 points, " + c4.upper.criterion,
         "N2(5) <= 9 for every genus-5 curve", true, ok);

  const auto r5 = examples::pentagonal_genus5();
  b.check("genus5.gonality5.example.points", 3, r5.n(1));
  const auto c5 = genus5_certificate(r5);
  b.check("genus5.gonality5.example.gonality", "5", gonality_text(c5));
}

void genus5_census(Battery& b, const std::vector<CurveRecord>* census) {
  if (!census) {
    b.fail("genus5.census", "present", "no census file given");
    b.cell(5, 5, 3, "census witness", "census maximum", false, false);
    b.cell(5, 6, std::nullopt, "none", "census: every pointless curve has a point over F8", false, false);
    return;
  }
  try {
    const TheoremReport rep = derive_theorems(*census);
    bool ok5 = b.check("genus5.census.max_points", 3, rep.max_points);
    ok5 &= b.check("genus5.census.witness_present", 1, rep.witness_present ? 1 : 0);
    bool ok6 = b.check("genus5.census.pointless", 11864, static_cast<long long>(rep.pointless));
    ok6 &= b.check("genus5.census.pointless_with_F8_point", 11864,
                   static_cast<long long>(rep.pointless_with_cubic_point));
    b.cell(5, 5, 3, "census net through three rational points", "census maximum over all nets without type I or II",
           false, ok5);
    b.cell(5, 6, std::nullopt, "none", "census: every pointless curve has a point over F8, so gonality <= 5", false,
           ok6);
  } catch (const std::exception& e) {
    b.fail("genus5.census", "consistent", e.what());
    b.cell(5, 5, 3, "census witness", "census maximum", false, false);
    b.cell(5, 6, std::nullopt, "none", "census", false, false);
  }
}

void appendix(Battery& b) {
  const QuadraticForm forms[] = {normal_form_of(NormalShape::SquareTail, 3, 5),
                                 normal_form_of(NormalShape::Hyperbolic, 4, 5),
                                 normal_form_of(NormalShape::NormTail, 4, 5),
                                 normal_form_of(NormalShape::SquareTail, 5, 5)};
  const long long orders[] = {2304, 1152, 1920, 720};
  for (int i = 0; i < 4; ++i) {
    FastSearchStats st;
    const OrthGroup g = orth_fast(forms[i], &st);
    b.check("orthogonal_group." + forms[i].to_string() + ".order", orders[i], static_cast<long long>(g.order()));
    if (i == 0) {
      const WittStrata w = witt_strata(forms[i]);
      std::string sizes;
      for (const auto& f : w.y_factors) sizes += (sizes.empty() ? "" : ",") + std::to_string(f.size());
      b.check("orthogonal_group." + forms[i].to_string() + ".strata", "12,4,3", sizes);
      b.check("orthogonal_group." + forms[i].to_string() + ".Y", 144, static_cast<long long>(st.y_size));
      b.check("orthogonal_group." + forms[i].to_string() + ".candidates", 1179648,
              static_cast<long long>(st.candidates));
    }
  }
}

}  // namespace

VerificationReport run_verification(VerifyScope scope, const std::vector<CurveRecord>* census) {
  VerificationReport r;
  Battery b(r);
  auto in = [&](VerifyScope s) { return scope == VerifyScope::All || scope == s; };
  auto guarded = [&](const char* id, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      b.fail(id, "runs", e.what());
    }
  };
  if (in(VerifyScope::Genus1)) guarded("genus1", [&] { genus0_and_1(b); });
  if (in(VerifyScope::Genus2)) guarded("genus2", [&] {
      const bool ok = hyperelliptic(b, 2, 2);
      hyperelliptic_cell(b, 2, ok);
    });
  if (in(VerifyScope::Genus3)) guarded("genus3", [&] { genus3(b); });
  if (in(VerifyScope::Genus4)) guarded("genus4", [&] { genus4(b); });
  if (in(VerifyScope::Genus5)) {
    guarded("genus5", [&] { genus5_examples(b); });
    if (scope == VerifyScope::All) guarded("hyperelliptic", [&] { hyperelliptic(b, 6, 10); });
    genus5_census(b, census);
  }
  if (in(VerifyScope::AppendixA)) guarded("appendixA", [&] { appendix(b); });
  return r;
}

}  // namespace gonality
