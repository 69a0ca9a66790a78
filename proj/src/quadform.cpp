#include "gonality/quadform.hpp"

#include <bit>
#include <cstdio>
#include <stdexcept>

namespace gonality {

namespace {

// For each n <= 5 and F_2 point x < 2^n: mask of the coefficient slots
// (i, j) with x_i x_j = 1.
struct MonomialMasks {
  std::array<std::array<std::uint16_t, 32>, 6> masks{};
  MonomialMasks() {
    for (int n = 1; n <= 5; ++n)
      for (std::uint32_t x = 0; x < (1u << n); ++x) {
        std::uint16_t m = 0;
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j)
            if (((x >> i) & 1) && ((x >> j) & 1))
              m |= static_cast<std::uint16_t>(1u << QuadraticForm::bit_index(n, i, j));
        masks[n][x] = m;
      }
  }
};

const MonomialMasks& monomial_masks() {
  static const MonomialMasks t;
  return t;
}

}  // namespace

QuadraticForm::QuadraticForm(int n, std::uint16_t coeffs) : n_(n), coeffs_(coeffs) {
  if (n < 1 || n > kMaxVars) throw std::invalid_argument("QuadraticForm: 1..5 variables");
  if (coeffs >> slots(n)) throw std::invalid_argument("QuadraticForm: coefficient out of range");
}

int QuadraticForm::bit_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

QuadraticForm QuadraticForm::monomial(int n, int i, int j) {
  return {n, static_cast<std::uint16_t>(1u << bit_index(n, i, j))};
}

bool QuadraticForm::coeff(int i, int j) const { return (coeffs_ >> bit_index(n_, i, j)) & 1; }

bool QuadraticForm::eval(std::uint32_t x) const {
  return std::popcount(static_cast<unsigned>(coeffs_ & monomial_masks().masks[n_][x])) & 1;
}

std::uint8_t QuadraticForm::eval(const FieldDesc& f, std::span<const std::uint8_t> x) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("eval: arity mismatch");
  std::uint8_t acc = 0;
  int bit = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j, ++bit)
      if ((coeffs_ >> bit) & 1) acc ^= f.mul(x[i], x[j]);
  return acc;
}

bool QuadraticForm::polar(std::uint32_t x, std::uint32_t y) const {
  return eval(x ^ y) ^ eval(x) ^ eval(y);
}

BinMatrix QuadraticForm::gram() const {
  BinMatrix g(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (coeff(i, j)) {
        g.set(i, j, true);
        g.set(j, i, true);
      }
  return g;
}

QuadraticForm QuadraticForm::operator+(const QuadraticForm& o) const {
  if (n_ != o.n_) throw std::invalid_argument("QuadraticForm: arity mismatch");
  return {n_, static_cast<std::uint16_t>(coeffs_ ^ o.coeffs_)};
}

std::string QuadraticForm::hex() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%04x", coeffs_);
  return buf;
}

QuadraticForm QuadraticForm::from_hex(int n, std::string_view text) {
  std::size_t used = 0;
  const std::string s(text);
  unsigned long v = 0;
  try {
    v = std::stoul(s, &used, 16);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad form id: " + s);
  }
  if (used != s.size() || v >= (1ul << slots(n))) throw std::invalid_argument("bad form id: " + s);
  return {n, static_cast<std::uint16_t>(v)};
}

std::vector<std::string> QuadraticForm::default_vars(int n) {
  switch (n) {
    case 5: return {"v", "w", "x", "y", "z"};
    case 4: return {"x", "y", "z", "w"};
    case 3: return {"x", "y", "z"};
    case 2: return {"x", "y"};
    default: return {"x"};
  }
}

std::string QuadraticForm::to_string() const { return to_string(default_vars(n_)); }

std::string QuadraticForm::to_string(const std::vector<std::string>& vars) const {
  std::string out;
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) {
      if (!coeff(i, j)) continue;
      if (!out.empty()) out += " + ";
      out += i == j ? vars[i] + "^2" : vars[i] + vars[j];
    }
  return out.empty() ? "0" : out;
}

QuadraticForm substitute(const QuadraticForm& q, const BinMatrix& g) {
  const int n = q.vars();
  if (g.dim() != n) throw std::invalid_argument("substitute: dimension mismatch");
  std::uint16_t out = 0;
  auto toggle = [&](int a, int b) {
    out ^= static_cast<std::uint16_t>(1u << QuadraticForm::bit_index(n, a, b));
  };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (!q.coeff(i, j)) continue;
      // (g x)_i (g x)_j expanded; in characteristic 2 a square of a sum is
      // the sum of squares and the two cross terms g_ik g_jl, g_il g_jk pair up.
      for (int k = 0; k < n; ++k) {
        if (i == j) {
          if (g.at(i, k)) toggle(k, k);
          continue;
        }
        if (g.at(i, k) && g.at(j, k)) toggle(k, k);
        for (int l = k + 1; l < n; ++l)
          if ((g.at(i, k) && g.at(j, l)) != (g.at(i, l) && g.at(j, k))) toggle(k, l);
      }
    }
  return {n, out};
}

SubstitutionTable::SubstitutionTable(int n, const BinMatrix& g) : n_(n) {
  const int s = QuadraticForm::slots(n);
  std::array<std::uint16_t, 15> images{};
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++bit)
      images[bit] = substitute(QuadraticForm::monomial(n, i, j), g).coeffs();
  for (unsigned c = 0; c < 256; ++c) {
    std::uint16_t v = 0;
    for (int b = 0; b < 8 && b < s; ++b)
      if ((c >> b) & 1) v ^= images[b];
    lo_[c] = v;
  }
  for (unsigned c = 0; c < 128; ++c) {
    std::uint16_t v = 0;
    for (int b = 0; b < 7 && b + 8 < s; ++b)
      if ((c >> b) & 1) v ^= images[b + 8];
    hi_[c] = v;
  }
}

FormAnatomy anatomy(const QuadraticForm& q) {
  if (q.is_zero()) throw std::invalid_argument("anatomy: zero form");
  const int n = q.vars();
  FormAnatomy a;
  a.gram = q.gram();
  a.radical_basis = kernel(a.gram);
  // Q is additive on the radical and x -> x^2 is the identity on F_2, so
  // v -> Q(v) is a linear functional there; S is its kernel.
  const int r = static_cast<int>(a.radical_basis.size());
  if (r > 0) {
    BinMatrix functional(r);
    std::uint8_t row = 0;
    for (int i = 0; i < r; ++i)
      if (q.eval(static_cast<std::uint32_t>(a.radical_basis[i].bits))) row |= 1u << i;
    functional.set_row(0, row);
    for (const auto& coords : kernel(functional)) {
      BinVector v{n, 0};
      for (int i = 0; i < r; ++i)
        if (coords.get(i)) v.bits ^= a.radical_basis[i].bits;
      a.singular_basis.push_back(v);
    }
  }
  a.sing_proj_dim = static_cast<int>(a.singular_basis.size()) - 1;
  for (std::uint32_t x = 1; x < (1u << n); ++x)
    if (!q.eval(x)) ++a.proj_point_count;
  return a;
}

long long count_proj_points(const QuadraticForm& q, int k) {
  const FieldDesc& f = FieldDesc::get(k);
  const int n = q.vars();
  const std::uint32_t size = f.size();
  std::array<std::uint8_t, 5> x{};
  long long count = 0;
  // Normalized points: first nonzero coordinate is 1.
  for (int lead = 0; lead < n; ++lead) {
    const int free = n - lead - 1;
    std::uint64_t total = 1;
    for (int i = 0; i < free; ++i) total *= size;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      for (int i = 0; i < lead; ++i) x[i] = 0;
      x[lead] = 1;
      std::uint64_t rest = idx;
      for (int i = lead + 1; i < n; ++i) {
        x[i] = static_cast<std::uint8_t>(rest % size);
        rest /= size;
      }
      if (q.eval(f, std::span<const std::uint8_t>(x.data(), n)) == 0) ++count;
    }
  }
  return count;
}

std::string_view to_string(FormType t) {
  switch (t) {
    case FormType::Zero: return "Zero";
    case FormType::NotGeomIrreducible: return "NotGeomIrreducible";
    case FormType::I: return "I";
    case FormType::II: return "II";
    case FormType::III: return "III";
    case FormType::IV: return "IV";
  }
  return "?";
}

std::string_view to_string(NormalShape s) {
  switch (s) {
    case NormalShape::Hyperbolic: return "hyperbolic";
    case NormalShape::NormTail: return "norm-tail";
    case NormalShape::SquareTail: return "square-tail";
  }
  return "?";
}

QuadraticForm pad_to_five(const QuadraticForm& q) {
  if (q.vars() == 5) return q;
  std::uint16_t out = 0;
  for (int i = 0; i < q.vars(); ++i)
    for (int j = i; j < q.vars(); ++j)
      if (q.coeff(i, j)) out |= static_cast<std::uint16_t>(1u << QuadraticForm::bit_index(5, i, j));
  return {5, out};
}

namespace {

FormType type_from_invariants(int sing_proj_dim, int points) {
  if (sing_proj_dim == 1 && points == 15) return FormType::I;
  if (sing_proj_dim == 0 && points == 19) return FormType::II;
  if (sing_proj_dim == 0 && points == 11) return FormType::III;
  if (sing_proj_dim == -1 && points == 15) return FormType::IV;
  return FormType::NotGeomIrreducible;
}

}  // namespace

FormType classify(const QuadraticForm& q) {
  const QuadraticForm q5 = pad_to_five(q);
  if (q5.is_zero()) return FormType::Zero;
  const FormAnatomy a = anatomy(q5);
  return type_from_invariants(a.sing_proj_dim, a.proj_point_count);
}

QuadraticForm norm_form() { return {2, 0b111}; }

QuadraticForm normal_form_of(NormalShape shape, int m, int n) {
  if (m < 1 || m > n) throw std::invalid_argument("normal_form_of: bad m");
  std::uint16_t c = 0;
  auto put = [&](int i, int j) { c |= static_cast<std::uint16_t>(1u << QuadraticForm::bit_index(n, i, j)); };
  switch (shape) {
    case NormalShape::Hyperbolic:
      if (m % 2) throw std::invalid_argument("normal_form_of: hyperbolic needs even m");
      for (int i = 0; i + 1 < m; i += 2) put(i, i + 1);
      break;
    case NormalShape::NormTail:
      if (m % 2) throw std::invalid_argument("normal_form_of: norm tail needs even m");
      for (int i = 0; i + 3 < m; i += 2) put(i, i + 1);
      put(m - 2, m - 2);
      put(m - 2, m - 1);
      put(m - 1, m - 1);
      break;
    case NormalShape::SquareTail:
      if (m % 2 == 0) throw std::invalid_argument("normal_form_of: square tail needs odd m");
      for (int i = 0; i + 2 < m; i += 2) put(i, i + 1);
      put(m - 1, m - 1);
      break;
  }
  return {n, c};
}

QuadraticForm NormalFormReport::form() const { return normal_form_of(shape, m, n); }

namespace {

// Basis of the span of `vecs` (nonzero, independent), by elimination.
std::vector<std::uint8_t> span_basis(const std::vector<std::uint8_t>& vecs) {
  std::vector<std::uint8_t> basis;
  for (std::uint8_t v : vecs) {
    for (std::uint8_t b : basis)
      if (v & (b & -b)) v ^= b;
    if (!v) continue;
    for (auto& b : basis)
      if (b & (v & -v)) b ^= v;
    basis.push_back(v);
  }
  return basis;
}

std::uint8_t combine(const std::vector<std::uint8_t>& basis, std::uint32_t sel) {
  std::uint8_t v = 0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if ((sel >> i) & 1) v ^= basis[i];
  return v;
}

// Project W onto the b-orthogonal complement of the plane (u, v), b(u,v) = 1.
std::vector<std::uint8_t> split_off(const QuadraticForm& q, const std::vector<std::uint8_t>& w,
                                    std::uint8_t u, std::uint8_t v) {
  std::vector<std::uint8_t> out;
  for (std::uint8_t x : w) {
    std::uint8_t y = x;
    if (q.polar(x, v)) y ^= u;
    if (q.polar(x, u)) y ^= v;
    out.push_back(y);
  }
  return span_basis(out);
}

}  // namespace

NormalFormReport normal_form(const QuadraticForm& q) {
  if (q.is_zero()) throw std::invalid_argument("normal_form: zero form");
  const int n = q.vars();
  std::vector<std::uint8_t> w;
  for (int i = 0; i < n; ++i) w.push_back(static_cast<std::uint8_t>(1u << i));

  std::vector<std::uint8_t> cols;
  int pairs = 0;
  // Greedily split off hyperbolic planes spanned by isotropic vectors.
  for (;;) {
    std::uint8_t u = 0, v = 0;
    for (std::uint32_t sel = 1; sel < (1u << w.size()) && !u; ++sel) {
      const std::uint8_t cand = combine(w, sel);
      if (q.eval(cand)) continue;
      for (std::uint8_t b : w)
        if (q.polar(cand, b)) {
          u = cand;
          v = b;
          break;
        }
    }
    if (!u) break;
    if (q.eval(v)) v ^= u;
    cols.push_back(u);
    cols.push_back(v);
    ++pairs;
    w = split_off(q, w, u, v);
  }

  // What is left of the nondegenerate part is anisotropic: at most one norm plane.
  std::uint8_t nu = 0, nv = 0;
  for (std::size_t i = 0; i < w.size() && !nu; ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (q.polar(w[i], w[j])) {
        nu = w[i];
        nv = w[j];
        break;
      }
  if (nu) w = split_off(q, w, nu, nv);

  // w now spans the radical; Q is linear on it.
  std::uint8_t r0 = 0;
  std::vector<std::uint8_t> singular;
  for (std::uint8_t r : w) {
    if (!q.eval(r)) {
      singular.push_back(r);
    } else if (!r0) {
      r0 = r;
    } else {
      singular.push_back(r ^ r0);
    }
  }

  NormalFormReport rep;
  rep.n = n;
  if (r0) {
    rep.shape = NormalShape::SquareTail;
    if (nu) {
      // N(x, y) + z^2 ~ xy + z^2 via x -> x + y, z -> x + y + z.
      cols.push_back(static_cast<std::uint8_t>(nu ^ r0));
      cols.push_back(static_cast<std::uint8_t>(nu ^ nv ^ r0));
      ++pairs;
    }
    cols.push_back(r0);
    rep.m = 2 * pairs + 1;
  } else if (nu) {
    rep.shape = NormalShape::NormTail;
    cols.push_back(nu);
    cols.push_back(nv);
    rep.m = 2 * pairs + 2;
  } else {
    rep.shape = NormalShape::Hyperbolic;
    rep.m = 2 * pairs;
  }
  for (std::uint8_t s : singular) cols.push_back(s);
  if (static_cast<int>(cols.size()) != n) throw std::logic_error("normal_form: basis size");
  rep.transform = BinMatrix::from_columns(n, cols.data());
  return rep;
}

std::vector<QuadraticForm> TypeTable::forms_of(std::initializer_list<FormType> types) const {
  std::vector<QuadraticForm> out;
  for (std::size_t c = 1; c < types_.size(); ++c)
    for (FormType t : types)
      if (types_[c] == t) {
        out.emplace_back(5, static_cast<std::uint16_t>(c));
        break;
      }
  return out;
}

TypeTable build_type_table() {
  TypeTable t;
  t.types_.assign(1u << 15, FormType::Zero);
  t.counts_[static_cast<int>(FormType::Zero)] = 0;
  for (std::uint32_t c = 1; c < (1u << 15); ++c) {
    const QuadraticForm q(5, static_cast<std::uint16_t>(c));
    const FormAnatomy a = anatomy(q);
    const NormalFormReport nf = normal_form(q);
    FormType type = FormType::NotGeomIrreducible;
    if (nf.m > 2) {
      type = type_from_invariants(a.sing_proj_dim, a.proj_point_count);
      if (type == FormType::NotGeomIrreducible)
        throw std::logic_error("type table: irreducible form with unknown invariants " + q.hex());
    }
    t.types_[c] = type;
    ++t.counts_[static_cast<int>(type)];
  }
  return t;
}

const TypeTable& type_table() {
  static const TypeTable table = build_type_table();
  return table;
}

}  // namespace gonality
