#include <doctest.h>

#include <algorithm>
#include <random>

#include "gonality/census.hpp"
#include "gonality/curvekit.hpp"
#include "gonality/groebner.hpp"

using namespace gonality;

namespace {

const std::vector<std::string> kVars = ambient_vars(4);

MultiPoly p5(const char* text) { return parse_poly(text, kVars); }
QuadraticForm q5(const char* text) { return to_quadratic_form(p5(text), 5); }

std::vector<Monomial> monomials_of_degree(int d, int nvars) {
  std::vector<Monomial> out;
  std::array<int, 5> e{};
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == nvars - 1) {
      e[i] = left;
      out.push_back(Monomial::from_exponents(std::span<const int>(e.data(), nvars)));
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[i] = a;
      self(self, i + 1, left - a);
    }
  };
  rec(rec, 0, d);
  return out;
}

// Hilbert function from the rank of the degree-d Macaulay matrix.
long long macaulay_hilbert(const std::vector<MultiPoly>& gens, int d) {
  const auto cols = monomials_of_degree(d, 5);
  const std::size_t words = (cols.size() + 63) / 64;
  auto col_of = [&](Monomial m) {
    return static_cast<std::size_t>(std::find(cols.begin(), cols.end(), m) - cols.begin());
  };
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& g : gens) {
    if (g.degree() > d) continue;
    for (Monomial m : monomials_of_degree(d - g.degree(), 5)) {
      std::vector<std::uint64_t> row(words, 0);
      for (Monomial t : g.terms()) {
        const std::size_t c = col_of(t * m);
        row[c / 64] ^= std::uint64_t{1} << (c % 64);
      }
      rows.push_back(std::move(row));
    }
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols.size() && rank < rows.size(); ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t piv = rank;
    while (piv < rows.size() && !(rows[piv][w] & bit)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && (rows[r][w] & bit))
        for (std::size_t k = 0; k < words; ++k) rows[r][k] ^= rows[rank][k];
    ++rank;
  }
  return static_cast<long long>(cols.size() - rank);
}

MultiPoly random_form(std::mt19937& rng, int degree) {
  std::vector<Monomial> terms;
  for (Monomial m : monomials_of_degree(degree, 5))
    if (rng() % 3 == 0) terms.push_back(m);
  return MultiPoly::from_terms(terms);
}

BinMatrix random_invertible(std::mt19937& rng) {
  for (;;) {
    BinMatrix m(5);
    for (int i = 0; i < 5; ++i) m.set_row(i, rng() & 31);
    if (rank(m) == 5) return m;
  }
}

std::vector<MultiPoly> triple(const QuadraticForm& a, const QuadraticForm& b, const QuadraticForm& c) {
  return {to_poly(a), to_poly(b), to_poly(c)};
}

bool reduced(const std::vector<MultiPoly>& gb) {
  for (std::size_t i = 0; i < gb.size(); ++i)
    for (std::size_t j = 0; j < gb.size(); ++j)
      for (Monomial t : gb[j].terms())
        if (i != j && gb[i].leading().divides(t)) return false;
  return true;
}

}  // namespace

TEST_CASE("monomial order and divisibility") {
  const Monomial x = Monomial::var(2), y = Monomial::var(3), z = Monomial::var(4);
  CHECK(x > y);
  CHECK(y > z);
  CHECK(x * x > x * y);
  CHECK(x * z * z < x * y * z);  // degrevlex: smaller last exponent wins
  CHECK_FALSE(x * y > z * z * z);
  CHECK(x.divides(x * y));
  CHECK_FALSE((x * x).divides(x * y));
  CHECK(lcm(x * x * y, x * z) == x * x * y * z);
  CHECK(coprime(x, y));
  CHECK_FALSE(coprime(x * y, y * z));
}

TEST_CASE("parser") {
  CHECK(p5("vw + xy + z^2").to_string(kVars) == "vw + xy + z^2");
  CHECK(p5("x*(y+z)^2") == p5("xy^2 + xz^2"));
  CHECK(p5("x - y") == p5("x + y"));
  CHECK(p5("2x + 3y") == p5("y"));
  CHECK(p5("x + x").is_zero());
  CHECK(p5("(x + y)(x + y)") == p5("x^2 + y^2"));
  CHECK(p5("1") == MultiPoly::one());
  CHECK_THROWS_AS(p5(""), ParseError);
  CHECK_THROWS_AS(p5("x^"), ParseError);
  CHECK_THROWS_AS(p5("(x + y"), ParseError);
  CHECK_THROWS_AS(p5("q"), ParseError);
  CHECK_THROWS_AS(p5("x + "), ParseError);
  CHECK_THROWS(to_quadratic_form(p5("x^3"), 5));
  CHECK(to_quadratic_form(p5("vw + z^2"), 5) == QuadraticForm::from_hex(5, "4002"));
}

TEST_CASE("polynomial arithmetic") {
  CHECK(p5("x + y") * p5("x + y") == p5("x^2 + y^2"));
  CHECK(p5("x^2 y + z^3").derivative(2) == MultiPoly{});
  CHECK(p5("x^3 + xyz").derivative(2) == p5("x^2 + yz"));
  CHECK(p5("x^2y + z").degree() == 3);
  CHECK_FALSE(p5("x^2y + z").is_homogeneous());
  const auto& f = FieldDesc::get(2);
  const std::uint8_t pt[5] = {0, 0, 2, 3, 1};
  CHECK(p5("x^2 + xy + y^2").eval(f, pt) == 0);
}

TEST_CASE("groebner basis examples") {
  auto xy = groebner_basis({{p5("x"), p5("y")}});
  REQUIRE(xy.size() == 2);
  CHECK(((xy[0] == p5("x") && xy[1] == p5("y")) || (xy[0] == p5("y") && xy[1] == p5("x"))));
  const auto gb = groebner_basis({{p5("xy + z^2"), p5("x^2")}});
  CHECK(is_groebner_basis(gb));
  std::vector<Monomial> lt;
  for (const auto& g : gb) lt.push_back(g.leading());
  auto in_lt = [&](const MultiPoly& m) {
    return std::any_of(lt.begin(), lt.end(), [&](Monomial l) { return l.divides(m.leading()); });
  };
  CHECK(in_lt(p5("x^2")));
  CHECK(in_lt(p5("xy")));
  CHECK(in_lt(p5("xz^2")));
  CHECK(groebner_basis({{p5("vw + xy"), p5("vw + xy")}}) == std::vector<MultiPoly>{p5("vw + xy")});
  CHECK(groebner_basis({{}}).empty());
}

TEST_CASE("every emitted basis passes the S-pair check") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    Ideal id;
    const int count = 2 + rng() % 3;
    for (int i = 0; i < count; ++i) id.generators.push_back(random_form(rng, 2 + rng() % 2));
    const auto gb = groebner_basis(id);
    CHECK(is_groebner_basis(gb));
    CHECK(reduced(gb));
    for (const auto& g : id.generators) CHECK(normal_form(g, gb).is_zero());
    for (std::size_t i = 0; i < gb.size(); ++i)
      for (std::size_t j = i + 1; j < gb.size(); ++j) CHECK(normal_form(s_polynomial(gb[i], gb[j]), gb).is_zero());
  }
}

TEST_CASE("budget") {
  GroebnerOptions tiny;
  tiny.reduction_budget = 1;
  const auto w = witness_triple();
  CHECK_THROWS_AS(groebner_basis({triple(w[0], w[1], w[2])}, tiny), BudgetExceeded);
  CHECK(smooth_curve_check(w[0], w[1], w[2], tiny).budget_exceeded);
}

TEST_CASE("proj_dimension") {
  CHECK(proj_dimension({{p5("vw + xy")}}) == 3);
  CHECK(proj_dimension({{p5("v"), p5("w"), p5("x"), p5("y"), p5("z")}}) == -1);
  CHECK(proj_dimension({{}}) == 4);
  CHECK(proj_dimension({{p5("x"), p5("y")}}) == 2);
  CHECK_THROWS(proj_dimension({{p5("x + y^2")}}));
  const auto t = triple(q5("vw + xy"), q5("vx + z(v + w + z)"), q5("(x + y)^2 + y(v + w)"));
  CHECK(proj_dimension({t}) == 1);
}

TEST_CASE("proj_dimension is invariant under coordinate changes") {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<QuadraticForm> forms;
    const int count = 1 + rng() % 4;
    for (int i = 0; i < count; ++i) forms.emplace_back(5, rng() & 0x7fff);
    Ideal id;
    for (const auto& f : forms) id.generators.push_back(to_poly(f));
    const int d = proj_dimension(id);
    for (int r = 0; r < 10; ++r) {
      const BinMatrix g = random_invertible(rng);
      Ideal moved;
      for (const auto& f : forms) moved.generators.push_back(to_poly(substitute(f, g)));
      CHECK(proj_dimension(moved) == d);
    }
  }
}

TEST_CASE("hilbert function") {
  CHECK(hilbert_function({{}}, 2) == 15);
  const auto t = triple(q5("vw + xy"), q5("vx + z(v + w + z)"), q5("(x + y)^2 + y(v + w)"));
  CHECK(hilbert_function({t}, 2) == 12);
  for (int d = 5; d <= 8; ++d) CHECK(hilbert_function({t}, d) == 8 * d - 4);
}

TEST_CASE("hilbert function agrees with the Macaulay matrix") {
  std::mt19937 rng(15);
  std::vector<std::vector<MultiPoly>> ideals{
      triple(q5("vw + xy"), q5("vx + z(v + w + z)"), q5("(x + y)^2 + y(v + w)"))};
  for (int i = 0; i < 12; ++i) {
    std::vector<MultiPoly> gens;
    const int count = 1 + rng() % 3;
    for (int j = 0; j < count; ++j) gens.push_back(random_form(rng, 2 + rng() % 2));
    ideals.push_back(gens);
  }
  for (const auto& gens : ideals)
    for (int d = 0; d <= 5; ++d) CHECK(hilbert_function({gens}, d) == macaulay_hilbert(gens, d));
}

TEST_CASE("jacobian minors") {
  const auto m = jacobian_minors({p5("vw"), p5("xy"), p5("z^2")});
  CHECK(m.size() == 10);
  for (const auto& f : m) CHECK(f.is_zero());
  for (const auto& f : jacobian_minors({p5("vw + xy"), p5("vw + xy"), p5("vx + yz")})) CHECK(f.is_zero());
  CHECK_THROWS(jacobian_minors({p5("vw"), p5("xy")}));
  const auto w = witness_triple();
  auto gens = triple(w[0], w[1], w[2]);
  for (const auto& f : jacobian_minors(gens)) gens.push_back(f);
  CHECK(proj_dimension({gens}) == -1);
}

TEST_CASE("smooth_curve_check examples") {
  const auto v4 = smooth_curve_check(q5("vw + xy"), q5("vx + z(v + w + z)"), q5("(x + y)^2 + y(v + w)"));
  CHECK(v4.proj_dim == 1);
  CHECK(v4.smooth);
  CHECK(v4.degree == 8);
  CHECK(v4.arithmetic_genus == 5);
  CHECK(v4.genus5_curve());
  const auto w = witness_triple();
  const auto v5 = smooth_curve_check(w[0], w[1], w[2]);
  CHECK(v5.proj_dim == 1);
  CHECK(v5.smooth);
  const auto v3 = smooth_curve_check(q5("vw + x^2"), q5("vw + x^2"), q5("vw + x^2"));
  CHECK(v3.proj_dim == 3);
  CHECK_FALSE(v3.genus5_curve());
}

TEST_CASE("smoothness agrees with a point-level oracle") {
  std::mt19937 rng(16);
  int smooth = 0, singular = 0, singular_seen = 0;
  while (smooth + singular < 150) {
    const QuadraticForm a(5, rng() & 0x7fff), b(5, rng() & 0x7fff), c(5, rng() & 0x7fff);
    const auto v = smooth_curve_check(a, b, c);
    if (v.proj_dim != 1) continue;
    auto eqs = triple(a, b, c);
    for (const auto& f : jacobian_minors(eqs)) eqs.push_back(f);
    long long bad = 0;
    for (int k = 1; k <= 3; ++k) bad += count_points(eqs, 4, k);
    if (v.smooth) {
      ++smooth;
      CHECK(bad == 0);
    } else {
      ++singular;
      singular_seen += bad > 0;
    }
  }
  CHECK(smooth > 0);
  CHECK(singular > 0);
  CHECK(singular_seen > 0);
}

TEST_CASE("census-type curves have Hilbert function 8d - 4") {
  std::mt19937 rng(17);
  const QuadraticForm q1 = standard_q1(FormType::III);
  const auto b = build_B(q1);
  int found = 0;
  while (found < 20) {
    const QuadraticForm q2 = b[rng() % b.size()], q3 = b[rng() % b.size()];
    if (!pencil_filter(q1, q2, q3)) continue;
    if (!smooth_curve_check(q1, q2, q3).genus5_curve()) continue;
    ++found;
    const Ideal id{triple(q1, q2, q3)};
    for (int d = 4; d <= 8; ++d) CHECK(hilbert_function(id, d) == 8 * d - 4);
  }
}
