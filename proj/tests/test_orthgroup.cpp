#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gonality/groebner.hpp"
#include "gonality/orthgroup.hpp"

using namespace gonality;

namespace {

QuadraticForm q5(const char* text) { return to_quadratic_form(parse_poly(text, ambient_vars(4)), 5); }

const char* const kNormalForms[] = {"vw + x^2", "vw + xy", "vw + x^2 + xy + y^2", "vw + xy + z^2"};

}  // namespace

TEST_CASE("act") {
  const QuadraticForm q = q5("vw + x^2");
  CHECK(act(BinMatrix::identity(5), q) == q);
  const BinMatrix swap(5, {0b00010, 0b00001, 0b00100, 0b01000, 0b10000});
  CHECK(act(swap, q) == q);
  CHECK_THROWS_AS(act(BinMatrix::zero(5), q), std::invalid_argument);
  std::mt19937 rng(10);
  for (int i = 0; i < 100; ++i) {
    BinMatrix g(5);
    for (int r = 0; r < 5; ++r) g.set_row(r, rng() & 31);
    const auto gi = invert(g);
    if (!gi) continue;
    const QuadraticForm f(5, rng() & 0x7fff);
    CHECK(act(g, act(*gi, f)) == f);
  }
}

TEST_CASE("naive orders") {
  CHECK(orth_naive(QuadraticForm(2, 0b010)).order() == 2);
  CHECK(orth_naive(q5("vw + x^2 + xy + y^2")).order() == 1920);
  CHECK(orth_naive(q5("vw + xy + z^2")).order() == 720);
}

TEST_CASE("fast equals naive on the normal forms") {
  const std::size_t orders[] = {2304, 1152, 1920, 720};
  for (int i = 0; i < 4; ++i) {
    const QuadraticForm q = q5(kNormalForms[i]);
    const OrthGroup fast = orth_fast(q), naive = orth_naive(q);
    CHECK(fast.order() == orders[i]);
    CHECK(fast.elements == naive.elements);
    CHECK(fast.contains(BinMatrix::identity(5)));
    CHECK(9999360 % fast.order() == 0);
  }
}

TEST_CASE("fast equals naive on random forms of each type") {
  std::mt19937 rng(11);
  const TypeTable& t = type_table();
  for (auto type : {FormType::I, FormType::II, FormType::III, FormType::IV}) {
    auto forms = t.forms_of({type});
    for (int i = 0; i < 3; ++i) {
      const QuadraticForm q = forms[rng() % forms.size()];
      CHECK(orth_fast(q).elements == orth_naive(q).elements);
    }
  }
}

TEST_CASE("witt strata") {
  FastSearchStats st;
  const auto w1 = witt_strata(q5("vw + x^2"));
  REQUIRE(w1.i() == 3);
  CHECK(w1.y_factors[0].size() == 12);
  CHECK(w1.y_factors[1].size() == 4);
  CHECK(w1.y_factors[2].size() == 3);
  CHECK(w1.y_size() == 144);
  orth_fast(q5("vw + x^2"), &st);
  CHECK(st.y_size == 144);
  CHECK(st.solution_dim == 13);
  CHECK(st.candidates == 1179648);

  const auto w4 = witt_strata(q5("vw + xy + z^2"));
  CHECK(w4.sset.empty());
  CHECK(w4.rset == std::vector<std::uint8_t>{0b10000});
  CHECK(w4.i() == 2);

  const auto w2 = witt_strata(to_quadratic_form(parse_poly("xy + zw", ambient_vars(3)), 4));
  CHECK(w2.rset.empty());
  CHECK(w2.i() == 1);
  CHECK(w2.y_factors[0] == w2.qset);
}

TEST_CASE("transitivity on Y") {
  for (const char* f : kNormalForms) {
    const QuadraticForm q = q5(f);
    const OrthGroup g = orth_fast(q);
    const auto ys = witt_strata(q).y_elements();
    const std::set<std::array<std::uint8_t, 3>> all(ys.begin(), ys.end());
    for (const auto& y : ys) {
      std::set<std::array<std::uint8_t, 3>> orbit;
      for (const auto& m : g.elements) {
        std::array<std::uint8_t, 3> img{};
        for (int j = 0; j < 3; ++j) img[j] = y[j] ? m.apply(y[j]) : 0;
        orbit.insert(img);
      }
      REQUIRE(orbit == all);
    }
  }
}

TEST_CASE("elements preserve the singular subspace and the radical") {
  for (const char* f : kNormalForms) {
    const QuadraticForm q = q5(f);
    const auto a = anatomy(q);
    auto in_span = [](const std::vector<BinVector>& basis, std::uint8_t v) {
      std::vector<std::uint64_t> rows;
      for (const auto& b : basis) rows.push_back(b.bits);
      const int r = rank_of_rows(rows);
      rows.push_back(v);
      return rank_of_rows(rows) == r;
    };
    for (const auto& g : orth_fast(q).elements) {
      for (const auto& s : a.singular_basis) REQUIRE(in_span(a.singular_basis, g.apply(s.bits)));
      for (const auto& r : a.radical_basis) REQUIRE(in_span(a.radical_basis, g.apply(r.bits)));
    }
  }
}

TEST_CASE("group axioms") {
  std::mt19937 rng(12);
  const QuadraticForm q = q5("vw + x^2 + xy + y^2");
  const OrthGroup g = orth_fast(q);
  for (const auto& m : g.elements) CHECK(preserves(m, q));
  for (int i = 0; i < 500; ++i) {
    const auto& a = g.elements[rng() % g.order()];
    const auto& b = g.elements[rng() % g.order()];
    CHECK(g.contains(a * b));
    CHECK(g.contains(*invert(a)));
  }
}

TEST_CASE("orbit representatives") {
  const QuadraticForm q1 = q5("vw + xy + z^2");
  const OrthGroup g = orth_fast(q1);
  const auto forms = type_table().forms_of({FormType::IV});
  const auto part = orbit_representatives(g, forms);
  std::size_t total = 0;
  for (auto s : part.orbit_sizes) total += s;
  CHECK(total == forms.size());
  for (std::size_t o = 0; o < part.representatives.size(); ++o) {
    const QuadraticForm r = part.representatives[o];
    std::size_t stab = 0;
    for (const auto& m : g.elements) stab += act(m, r) == r;
    CHECK(part.orbit_sizes[o] * stab == g.order());
    for (const auto& f : forms)
      if (part.orbit_of[f.coeffs()] == static_cast<int>(o)) CHECK(r.coeffs() <= f.coeffs());
  }
  CHECK(orbit_representatives(g, {q1}).representatives.size() == 1);
  CHECK_THROWS_AS(orbit_representatives(g, {q5("vw + xy")}), std::logic_error);
}

TEST_CASE("span discard") {
  const QuadraticForm q3 = q5("vw + x^2 + xy + y^2");
  const auto g3 = orth_fast(q3);
  const auto reps3 = orbit_representatives(g3, type_table().forms_of({FormType::III, FormType::IV}));
  const auto a3 = span_discard(q3, reps3.representatives, {FormType::III, FormType::IV});
  CHECK(reps3.representatives.size() == 48);
  CHECK(a3.size() == 17);
  CHECK(std::find(a3.begin(), a3.end(), q3) == a3.end());

  const QuadraticForm q4 = q5("vw + xy + z^2");
  const auto reps4 = orbit_representatives(orth_fast(q4), type_table().forms_of({FormType::IV}));
  const auto a4 = span_discard(q4, reps4.representatives, {FormType::IV});
  CHECK(reps4.representatives.size() == 45);
  CHECK(a4.size() == 10);
  for (const auto& r : a4) {
    CHECK(classify(r) == FormType::IV);
    CHECK(classify(r + q4) == FormType::IV);
  }
  CHECK(span_discard(q4, {q4}, {FormType::IV}).empty());
  // q4 + (vw + x^2 + z^2) = xy + x^2, not geometrically irreducible
  CHECK(span_discard(q4, {q5("vw + x^2 + z^2")}, {FormType::I, FormType::IV}).empty());
}

TEST_CASE("span discard removes reps whose sum with Q1 is type I") {
  const QuadraticForm q4 = q5("vw + xy + z^2");
  const QuadraticForm rep = q5("xy + x^2");  // q4 + rep = vw + x^2 + z^2, type I
  REQUIRE(classify(q4 + rep) == FormType::I);
  CHECK(span_discard(q4, {rep}, {FormType::NotGeomIrreducible, FormType::IV}).empty());
}

TEST_CASE("serialization") {
  const OrthGroup g = orth_fast(q5("vw + xy + z^2"));
  const std::string text = serialize(g);
  CHECK(text.rfind("orthgroup form=4402 n=5 method=fast order=720\n", 0) == 0);
  const OrthGroup back = parse_group(text);
  CHECK(back.elements == g.elements);
  CHECK(back.form == g.form);
  CHECK(back.method == g.method);
  CHECK_THROWS(parse_group("nonsense"));
}
