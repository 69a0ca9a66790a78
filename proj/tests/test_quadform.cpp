#include <doctest.h>

#include <random>

#include "gonality/groebner.hpp"
#include "gonality/quadform.hpp"

using namespace gonality;

namespace {

QuadraticForm q5(const char* text) { return to_quadratic_form(parse_poly(text, ambient_vars(4)), 5); }
QuadraticForm qn(const char* text, int n) { return to_quadratic_form(parse_poly(text, ambient_vars(n - 1)), n); }

BinMatrix random_invertible(std::mt19937& rng, int n) {
  for (;;) {
    BinMatrix m(n);
    for (int i = 0; i < n; ++i) m.set_row(i, rng() & ((1u << n) - 1));
    if (rank(m) == n) return m;
  }
}

// Evaluation straight from the definition Q(x) = sum c_ij x_i x_j.
bool eval_by_definition(const QuadraticForm& q, std::uint32_t x) {
  const int n = q.vars();
  bool s = false;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (q.coeff(i, j)) s ^= ((x >> i) & 1) && ((x >> j) & 1);
  return s;
}

}  // namespace

TEST_CASE("packing") {
  CHECK(QuadraticForm::bit_index(5, 0, 0) == 0);
  CHECK(QuadraticForm::bit_index(5, 0, 1) == 1);
  CHECK(QuadraticForm::bit_index(5, 1, 1) == 5);
  CHECK(QuadraticForm::bit_index(5, 4, 4) == 14);
  CHECK(q5("vw + xy + z^2").hex() == "4402");
  CHECK(q5("v^2").hex() == "0001");
  CHECK(QuadraticForm::from_hex(5, "4402") == q5("vw + xy + z^2"));
  CHECK(q5("vw + xy + z^2").to_string() == "vw + xy + z^2");
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    const QuadraticForm q(5, rng() & 0x7fff);
    for (std::uint32_t x = 0; x < 32; ++x) CHECK(q.eval(x) == eval_by_definition(q, x));
  }
}

TEST_CASE("polar identity") {
  std::mt19937 rng(6);
  for (int i = 0; i < 500; ++i) {
    const QuadraticForm q(5, rng() & 0x7fff);
    const std::uint32_t a = rng() & 31, b = rng() & 31;
    CHECK(q.eval(a ^ b) == (q.polar(a, b) ^ q.eval(a) ^ q.eval(b)));
    const BinMatrix g = q.gram();
    for (int r = 0; r < 5; ++r) CHECK_FALSE(g.at(r, r));
    CHECK(g == g.transpose());
  }
}

TEST_CASE("anatomy") {
  const auto a1 = anatomy(q5("vw + x^2"));
  CHECK(a1.radical_basis.size() == 3);
  CHECK(a1.singular_basis.size() == 2);
  CHECK(a1.sing_proj_dim == 1);
  CHECK(a1.proj_point_count == 15);
  std::uint64_t rad = 0, sing = 0;
  for (const auto& v : a1.radical_basis) rad |= v.bits;
  for (const auto& v : a1.singular_basis) sing |= v.bits;
  CHECK(rad == 0b11100);
  CHECK(sing == 0b11000);

  const auto a4 = anatomy(q5("vw + xy + z^2"));
  CHECK(a4.radical_basis.size() == 1);
  CHECK(a4.radical_basis[0].bits == 0b10000);
  CHECK(a4.singular_basis.empty());
  CHECK(a4.sing_proj_dim == -1);
  CHECK(a4.proj_point_count == 15);

  const auto a3 = anatomy(q5("vw + x^2 + xy + y^2"));
  CHECK(a3.radical_basis.size() == 1);
  CHECK(a3.singular_basis.size() == 1);
  CHECK(a3.singular_basis[0].bits == 0b10000);
  CHECK(a3.sing_proj_dim == 0);
  CHECK(a3.proj_point_count == 11);

  CHECK_THROWS(anatomy(QuadraticForm(5, 0)));
}

TEST_CASE("singular subspace has codimension at most one in the radical") {
  for (std::uint32_t c = 1; c < (1u << 15); ++c) {
    const QuadraticForm q(5, static_cast<std::uint16_t>(c));
    const auto a = anatomy(q);
    const auto r = a.radical_basis.size(), s = a.singular_basis.size();
    REQUIRE(s <= r);
    REQUIRE(r - s <= 1);
    for (const auto& v : a.singular_basis) REQUIRE_FALSE(q.eval(static_cast<std::uint32_t>(v.bits)));
  }
}

TEST_CASE("count_proj_points") {
  CHECK(count_proj_points(q5("vw + xy"), 1) == 19);
  CHECK(count_proj_points(q5("x^2"), 1) == 15);
  CHECK(count_proj_points(qn("xy + z^2 + zw + w^2", 4), 1) == 5);
  // brute force over F_4 and F_16 for a few forms
  for (const char* f : {"vw + xy + z^2", "vw + x^2 + xy + y^2", "v^2 + wx"}) {
    const QuadraticForm q = q5(f);
    for (int k : {2, 4}) {
      const auto& fd = FieldDesc::get(k);
      long long affine = 0;
      std::array<std::uint8_t, 5> x{};
      const std::uint32_t size = fd.size();
      for (std::uint32_t code = 1; code < size * size * size * size * size; ++code) {
        std::uint32_t c = code;
        for (auto& xi : x) {
          xi = static_cast<std::uint8_t>(c % size);
          c /= size;
        }
        affine += q.eval(fd, x) == 0;
      }
      CHECK(count_proj_points(q, k) == affine / (size - 1));
    }
  }
}

TEST_CASE("classify") {
  CHECK(classify(q5("vw + x^2")) == FormType::I);
  CHECK(classify(q5("vw + xy")) == FormType::II);
  CHECK(classify(q5("vw + x^2 + xy + y^2")) == FormType::III);
  CHECK(classify(q5("vw + xy + z^2")) == FormType::IV);
  CHECK(classify(q5("v^2")) == FormType::NotGeomIrreducible);
  CHECK(classify(q5("x^2 + xy + y^2")) == FormType::NotGeomIrreducible);
  CHECK(classify(q5("vw")) == FormType::NotGeomIrreducible);
  CHECK(classify(QuadraticForm(5, 0)) == FormType::Zero);
  CHECK(classify(qn("xy + z^2", 3)) == FormType::I);
}

TEST_CASE("classify is invariant under GL5") {
  std::mt19937 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const QuadraticForm q(5, rng() & 0x7fff);
    const BinMatrix g = random_invertible(rng, 5);
    CHECK(classify(substitute(q, g)) == classify(q));
  }
}

TEST_CASE("norm form") {
  const QuadraticForm n = norm_form();
  CHECK(n.vars() == 2);
  CHECK(n.eval(0b01));
  CHECK(n.eval(0b11));
  CHECK(count_proj_points(n, 1) == 0);
  CHECK(count_proj_points(n, 2) == 2);
}

TEST_CASE("normal_form examples") {
  const auto r4 = normal_form(q5("vw + xy + z^2"));
  CHECK(r4.shape == NormalShape::SquareTail);
  CHECK(r4.m == 5);
  CHECK(r4.form() == q5("vw + xy + z^2"));

  const auto rn = normal_form(q5("v^2 + vw + w^2 + x^2"));
  CHECK(rn.shape == NormalShape::SquareTail);
  CHECK(rn.m == 3);
  CHECK(rn.form() == q5("vw + x^2"));

  std::mt19937 rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto r = normal_form(substitute(q5("vw + x^2 + xy + y^2"), random_invertible(rng, 5)));
    CHECK(r.shape == NormalShape::NormTail);
    CHECK(r.m == 4);
  }
  CHECK_THROWS(normal_form(QuadraticForm(5, 0)));
}

TEST_CASE("normal_form round trip on every form") {
  for (int n = 2; n <= 5; ++n)
    for (std::uint32_t c = 1; c < (1u << QuadraticForm::slots(n)); ++c) {
      const QuadraticForm q(n, static_cast<std::uint16_t>(c));
      const auto r = normal_form(q);
      REQUIRE(rank(r.transform) == n);
      REQUIRE(substitute(q, r.transform) == normal_form_of(r.shape, r.m, n));
    }
}

TEST_CASE("type table") {
  const TypeTable& t = type_table();
  CHECK(t.size() == 32767);
  CHECK(t.count(FormType::IV) == 13888);
  CHECK(t.count(FormType::III) + t.count(FormType::IV) == 19096);
  CHECK(t.count(FormType::III) == 5208);
  std::size_t total = 0;
  for (auto ty : {FormType::I, FormType::II, FormType::III, FormType::IV, FormType::NotGeomIrreducible})
    total += t.count(ty);
  CHECK(total == 32767);
  for (std::uint32_t c = 1; c < (1u << 15); c += 37)
    CHECK(t[static_cast<std::uint16_t>(c)] == classify(QuadraticForm(5, static_cast<std::uint16_t>(c))));
  // derived counts
  CHECK(t.count(FormType::I) == 4340);
  CHECK(t.count(FormType::II) == 8680);
}

TEST_CASE("substitution table matches substitute") {
  std::mt19937 rng(9);
  for (int i = 0; i < 50; ++i) {
    BinMatrix g(5);
    for (int r = 0; r < 5; ++r) g.set_row(r, rng() & 31);
    const SubstitutionTable st(5, g);
    for (int j = 0; j < 100; ++j) {
      const QuadraticForm q(5, rng() & 0x7fff);
      CHECK(st.apply(q) == substitute(q, g));
      for (std::uint32_t x = 0; x < 32; ++x) CHECK(substitute(q, g).eval(x) == q.eval(g.apply(x)));
    }
  }
}
