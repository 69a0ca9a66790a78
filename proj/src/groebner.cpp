#include "gonality/groebner.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>

namespace gonality {

Monomial Monomial::var(int i, int e) {
  if (i < 0 || i >= kMaxVars || e < 0 || e > 127) throw std::out_of_range("Monomial::var");
  return from_packed((static_cast<std::uint64_t>(e) << (8 * i)) | (static_cast<std::uint64_t>(e) << 40));
}

Monomial Monomial::from_exponents(std::span<const int> e) {
  if (e.size() > kMaxVars) throw std::out_of_range("Monomial: too many variables");
  Monomial m;
  for (std::size_t i = 0; i < e.size(); ++i) m = m * var(static_cast<int>(i), e[i]);
  return m;
}

unsigned Monomial::support() const {
  unsigned s = 0;
  for (int i = 0; i < kMaxVars; ++i)
    if (exponent(i)) s |= 1u << i;
  return s;
}

Monomial lcm(Monomial a, Monomial b) {
  std::uint64_t p = 0;
  int deg = 0;
  for (int i = 0; i < Monomial::kMaxVars; ++i) {
    const int e = std::max(a.exponent(i), b.exponent(i));
    p |= static_cast<std::uint64_t>(e) << (8 * i);
    deg += e;
  }
  return Monomial::from_packed(p | (static_cast<std::uint64_t>(deg) << 40));
}

bool coprime(Monomial a, Monomial b) { return (a.support() & b.support()) == 0; }

namespace {

using Terms = std::vector<Monomial>;

// Symmetric difference of two descending term lists.
void merge_xor(const Monomial* a, const Monomial* ae, const Monomial* b, const Monomial* be, Terms& out) {
  out.clear();
  out.reserve((ae - a) + (be - b));
  while (a != ae && b != be) {
    const std::uint64_t ka = a->key(), kb = b->key();
    if (ka > kb) {
      out.push_back(*a++);
    } else if (kb > ka) {
      out.push_back(*b++);
    } else {
      ++a;
      ++b;
    }
  }
  out.insert(out.end(), a, ae);
  out.insert(out.end(), b, be);
}

}  // namespace

MultiPoly MultiPoly::from_terms(std::vector<Monomial> terms) {
  std::sort(terms.begin(), terms.end(), [](Monomial a, Monomial b) { return a.key() > b.key(); });
  MultiPoly p;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) % 2) p.terms_.push_back(terms[i]);
    i = j;
  }
  return p;
}

MultiPoly MultiPoly::from_sorted_unique(std::vector<Monomial> terms) {
  MultiPoly p;
  p.terms_ = std::move(terms);
  return p;
}

int MultiPoly::degree() const {
  int d = -1;
  for (auto m : terms_) d = std::max(d, m.degree());
  return d;
}

bool MultiPoly::is_homogeneous() const {
  for (auto m : terms_)
    if (m.degree() != terms_.front().degree()) return false;
  return true;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r;
  merge_xor(terms_.data(), terms_.data() + terms_.size(), o.terms_.data(),
            o.terms_.data() + o.terms_.size(), r.terms_);
  return r;
}

MultiPoly MultiPoly::operator*(Monomial m) const {
  MultiPoly r;
  r.terms_.reserve(terms_.size());
  for (auto t : terms_) r.terms_.push_back(t * m);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  std::vector<Monomial> all;
  all.reserve(terms_.size() * o.terms_.size());
  for (auto a : terms_)
    for (auto b : o.terms_) all.push_back(a * b);
  return from_terms(std::move(all));
}

MultiPoly MultiPoly::derivative(int i) const {
  std::vector<Monomial> out;
  const Monomial xi = Monomial::var(i);
  for (auto t : terms_)
    if (t.exponent(i) % 2) out.push_back(xi.quotient_of(t));
  return from_terms(std::move(out));
}

std::uint8_t MultiPoly::eval(const FieldDesc& f, std::span<const std::uint8_t> x) const {
  std::uint8_t acc = 0;
  for (auto t : terms_) {
    std::uint8_t v = 1;
    for (std::size_t i = 0; i < x.size() && v; ++i) {
      const int e = t.exponent(static_cast<int>(i));
      if (e) v = f.mul(v, f.pow(x[i], static_cast<std::uint32_t>(e)));
    }
    for (std::size_t i = x.size(); i < static_cast<std::size_t>(Monomial::kMaxVars); ++i)
      if (t.exponent(static_cast<int>(i))) throw std::invalid_argument("eval: too few coordinates");
    acc ^= v;
  }
  return acc;
}

std::string MultiPoly::to_string(const std::vector<std::string>& vars) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.degree() == 0) {
      out += "1";
      continue;
    }
    for (int i = 0; i < Monomial::kMaxVars; ++i) {
      const int e = t.exponent(i);
      if (!e) continue;
      out += i < static_cast<int>(vars.size()) ? vars[i] : "x" + std::to_string(i);
      if (e > 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

MultiPoly to_poly(const QuadraticForm& q) {
  std::vector<Monomial> terms;
  for (int i = 0; i < q.vars(); ++i)
    for (int j = i; j < q.vars(); ++j)
      if (q.coeff(i, j)) terms.push_back(Monomial::var(i) * Monomial::var(j));
  return MultiPoly::from_terms(std::move(terms));
}

QuadraticForm to_quadratic_form(const MultiPoly& p, int n) {
  std::uint16_t c = 0;
  for (auto t : p.terms()) {
    if (t.degree() != 2) throw std::invalid_argument("not a quadratic form: " + p.to_string(ambient_vars(4)));
    int i = -1, j = -1;
    for (int v = 0; v < Monomial::kMaxVars; ++v) {
      const int e = t.exponent(v);
      if (e && v >= n) throw std::invalid_argument("quadratic form uses too many variables");
      if (e == 2) i = j = v;
      if (e == 1) (i < 0 ? i : j) = v;
    }
    c |= static_cast<std::uint16_t>(1u << QuadraticForm::bit_index(n, i, j));
  }
  return {n, c};
}

std::vector<std::string> ambient_vars(int dim) {
  switch (dim) {
    case 1: return {"x", "y"};
    case 2: return {"x", "y", "z"};
    case 3: return {"x", "y", "z", "w"};
    case 4: return {"v", "w", "x", "y", "z"};
    default: throw std::out_of_range("ambient dimension must be 1..4");
  }
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  MultiPoly parse() {
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    MultiPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool starts_factor() {
    skip();
    return pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(');
  }
  int number() {
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected number");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > 1000) fail("number too large");
    }
    return static_cast<int>(v);
  }
  MultiPoly expr() {
    MultiPoly p = term();
    for (;;) {
      skip();
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        ++pos_;
        p += term();
      } else {
        return p;
      }
    }
  }
  MultiPoly term() {
    MultiPoly p = factor();
    for (;;) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        p = p * factor();
      } else if (starts_factor()) {
        p = p * factor();
      } else {
        return p;
      }
    }
  }
  MultiPoly factor() {
    MultiPoly base = atom();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      const int e = number();
      MultiPoly r = MultiPoly::one();
      for (int i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }
  MultiPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly p = expr();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number() % 2 ? MultiPoly::one() : MultiPoly{};
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::string name(1, c);
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) {
          ++pos_;
          return MultiPoly::monomial(Monomial::var(static_cast<int>(i)));
        }
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  return PolyParser(text, vars).parse();
}

bool Ideal::homogeneous() const {
  for (const auto& g : generators)
    if (!g.is_homogeneous()) return false;
  return true;
}

namespace {

struct Pair {
  int i, j;
  Monomial lcm;
};

class Buchberger {
 public:
  explicit Buchberger(std::size_t budget) : budget_(budget) {}

  std::vector<MultiPoly> run(const std::vector<MultiPoly>& gens) {
    std::vector<MultiPoly> input;
    for (const auto& g : gens)
      if (!g.is_zero()) input.push_back(g);
    std::sort(input.begin(), input.end(), [](const MultiPoly& a, const MultiPoly& b) {
      return a.leading().key() < b.leading().key();
    });
    for (const auto& g : input) {
      Terms r = reduce(g.terms());
      if (!r.empty()) add(std::move(r));
    }
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [](const Pair& a, const Pair& b) {
        if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
        if (a.lcm.key() != b.lcm.key()) return a.lcm.key() < b.lcm.key();
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
      });
      const Pair p = *best;
      *best = pairs_.back();
      pairs_.pop_back();
      Terms r = reduce(spoly(polys_[p.i], polys_[p.j]));
      if (!r.empty()) add(std::move(r));
    }
    return interreduce();
  }

 private:
  Terms spoly(const Terms& f, const Terms& g) {
    const Monomial l = lcm(f.front(), g.front());
    Terms a, b, out;
    const Monomial mf = f.front().quotient_of(l), mg = g.front().quotient_of(l);
    a.reserve(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) a.push_back(f[i] * mf);
    b.reserve(g.size() - 1);
    for (std::size_t i = 1; i < g.size(); ++i) b.push_back(g[i] * mg);
    merge_xor(a.data(), a.data() + a.size(), b.data(), b.data() + b.size(), out);
    return out;
  }

  const Terms* find_reducer(Monomial t) const {
    for (int idx : active_)
      if (polys_[idx].front().divides(t)) return &polys_[idx];
    return nullptr;
  }

  // Complete reduction by the active basis.
  Terms reduce(Terms f) {
    Terms result, scratch, multiple;
    std::size_t pos = 0;
    while (pos < f.size()) {
      const Monomial t = f[pos];
      const Terms* g = find_reducer(t);
      if (!g) {
        result.push_back(t);
        ++pos;
        continue;
      }
      if (++steps_ > budget_) throw BudgetExceeded("Groebner reduction budget exceeded");
      const Monomial m = g->front().quotient_of(t);
      multiple.clear();
      for (std::size_t i = 1; i < g->size(); ++i) multiple.push_back((*g)[i] * m);
      merge_xor(f.data() + pos + 1, f.data() + f.size(), multiple.data(), multiple.data() + multiple.size(),
                scratch);
      std::swap(f, scratch);
      pos = 0;
    }
    return result;
  }

  // Gebauer-Moeller update with the new element h.
  void add(Terms h_terms) {
    const int h = static_cast<int>(polys_.size());
    polys_.push_back(std::move(h_terms));
    const Monomial lh = polys_[h].front();

    std::vector<Pair> c;
    for (int g : active_) c.push_back({g, h, lcm(polys_[g].front(), lh)});
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Pair& p = c[k];
      bool keep = coprime(polys_[p.i].front(), lh);
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < c.size() && keep; ++l)
          if (c[l].lcm.divides(p.lcm)) keep = false;
        for (std::size_t l = 0; l < d.size() && keep; ++l)
          if (d[l].lcm.divides(p.lcm)) keep = false;
      }
      if (keep) d.push_back(p);
    }
    std::vector<Pair> next;
    for (const Pair& p : pairs_) {
      if (lh.divides(p.lcm) && lcm(polys_[p.i].front(), lh) != p.lcm &&
          lcm(polys_[p.j].front(), lh) != p.lcm)
        continue;
      next.push_back(p);
    }
    for (const Pair& p : d)
      if (!coprime(polys_[p.i].front(), lh)) next.push_back(p);
    pairs_ = std::move(next);

    std::vector<int> kept;
    for (int g : active_)
      if (!lh.divides(polys_[g].front())) kept.push_back(g);
    kept.push_back(h);
    active_ = std::move(kept);
  }

  std::vector<MultiPoly> interreduce() {
    std::vector<int> minimal;
    for (int g : active_) {
      bool redundant = false;
      for (int o : active_)
        if (o != g && polys_[o].front().divides(polys_[g].front())) redundant = true;
      if (!redundant) minimal.push_back(g);
    }
    std::vector<MultiPoly> out;
    for (int g : minimal) {
      active_.clear();
      for (int o : minimal)
        if (o != g) active_.push_back(o);
      Terms tail(polys_[g].begin() + 1, polys_[g].end());
      Terms reduced = reduce(std::move(tail));
      reduced.insert(reduced.begin(), polys_[g].front());
      out.push_back(MultiPoly::from_sorted_unique(std::move(reduced)));
    }
    std::sort(out.begin(), out.end(), [](const MultiPoly& a, const MultiPoly& b) {
      return a.leading().key() < b.leading().key();
    });
    return out;
  }

  std::size_t budget_;
  std::size_t steps_ = 0;
  std::vector<Terms> polys_;
  std::vector<int> active_;
  std::vector<Pair> pairs_;
};

}  // namespace

std::vector<MultiPoly> groebner_basis(const Ideal& ideal, const GroebnerOptions& opt) {
  std::vector<MultiPoly> gens;
  for (const auto& g : ideal.generators) {
    for (auto t : g.terms())
      for (int i = ideal.nvars; i < Monomial::kMaxVars; ++i)
        if (t.exponent(i)) throw std::invalid_argument("generator uses a variable outside the ring");
    gens.push_back(g);
  }
  return Buchberger(opt.reduction_budget).run(gens);
}

MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis) {
  std::vector<Monomial> result;
  MultiPoly rest = f;
  while (!rest.is_zero()) {
    const Monomial t = rest.leading();
    const MultiPoly* g = nullptr;
    for (const auto& b : basis)
      if (!b.is_zero() && b.leading().divides(t)) {
        g = &b;
        break;
      }
    if (!g) {
      result.push_back(t);
      rest = rest + MultiPoly::monomial(t);
    } else {
      rest = rest + (*g) * g->leading().quotient_of(t);
    }
  }
  return MultiPoly::from_sorted_unique(std::move(result));
}

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g) {
  const Monomial l = lcm(f.leading(), g.leading());
  return f * f.leading().quotient_of(l) + g * g.leading().quotient_of(l);
}

bool is_groebner_basis(const std::vector<MultiPoly>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!normal_form(s_polynomial(basis[i], basis[j]), basis).is_zero()) return false;
  return true;
}

int proj_dimension_of_leading(const std::vector<Monomial>& leading, int nvars) {
  std::vector<unsigned> supports;
  for (auto m : leading) supports.push_back(m.support());
  int best = -1;
  for (unsigned u = 0; u < (1u << nvars); ++u) {
    bool independent = true;
    for (unsigned s : supports)
      if ((s & ~u) == 0) {
        independent = false;
        break;
      }
    if (independent) best = std::max(best, std::popcount(u));
  }
  // best is the Krull dimension of the affine cone (or -1 for the unit ideal).
  return best <= 0 ? -1 : best - 1;
}

namespace {

std::vector<Monomial> leading_terms(const std::vector<MultiPoly>& basis) {
  std::vector<Monomial> lt;
  for (const auto& b : basis) lt.push_back(b.leading());
  return lt;
}

void require_homogeneous(const Ideal& ideal) {
  if (!ideal.homogeneous()) throw std::invalid_argument("ideal is not homogeneous");
}

}  // namespace

int proj_dimension(const Ideal& ideal, const GroebnerOptions& opt) {
  require_homogeneous(ideal);
  return proj_dimension_of_leading(leading_terms(groebner_basis(ideal, opt)), ideal.nvars);
}

long long hilbert_function_of_leading(const std::vector<Monomial>& leading, int nvars, int d) {
  long long count = 0;
  std::vector<int> e(nvars, 0);
  std::function<void(int, int)> walk = [&](int i, int left) {
    if (i == nvars - 1) {
      e[i] = left;
      const Monomial m = Monomial::from_exponents(e);
      for (auto l : leading)
        if (l.divides(m)) return;
      ++count;
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      walk(i + 1, left - k);
    }
  };
  if (nvars == 0) return d == 0 && leading.empty() ? 1 : 0;
  walk(0, d);
  return count;
}

long long hilbert_function(const Ideal& ideal, int d) {
  require_homogeneous(ideal);
  if (d < 0) return 0;
  return hilbert_function_of_leading(leading_terms(groebner_basis(ideal)), ideal.nvars, d);
}

std::vector<MultiPoly> jacobian_maximal_minors(const std::vector<MultiPoly>& forms, int nvars) {
  const int r = static_cast<int>(forms.size());
  if (r < 1 || r > 3 || nvars < r || nvars > Monomial::kMaxVars)
    throw std::invalid_argument("jacobian_maximal_minors: bad arity");
  std::vector<std::vector<MultiPoly>> jac(r, std::vector<MultiPoly>(nvars));
  for (int i = 0; i < r; ++i)
    for (int c = 0; c < nvars; ++c) jac[i][c] = forms[i].derivative(c);
  // Signs vanish in characteristic 2: each determinant is a permanent.
  std::vector<int> perm(r);
  std::vector<MultiPoly> minors;
  for (unsigned cols = 0; cols < (1u << nvars); ++cols) {
    if (std::popcount(cols) != r) continue;
    std::vector<int> col;
    for (int c = 0; c < nvars; ++c)
      if ((cols >> c) & 1) col.push_back(c);
    for (int i = 0; i < r; ++i) perm[i] = i;
    MultiPoly det;
    do {
      MultiPoly prod = MultiPoly::one();
      for (int i = 0; i < r && !prod.is_zero(); ++i) prod = prod * jac[i][col[perm[i]]];
      det += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    minors.push_back(det);
  }
  return minors;
}

std::vector<MultiPoly> jacobian_minors(const std::vector<MultiPoly>& forms) {
  if (forms.size() != 3) throw std::invalid_argument("jacobian_minors: need exactly three forms");
  return jacobian_maximal_minors(forms, 5);
}

SmoothCurveVerdict smooth_curve_check(const QuadraticForm& q1, const QuadraticForm& q2,
                                      const QuadraticForm& q3, const GroebnerOptions& opt) {
  SmoothCurveVerdict v;
  const std::vector<MultiPoly> forms = {to_poly(pad_to_five(q1)), to_poly(pad_to_five(q2)),
                                        to_poly(pad_to_five(q3))};
  try {
    const auto basis = groebner_basis(Ideal{forms, 5}, opt);
    const auto lt = leading_terms(basis);
    v.proj_dim = proj_dimension_of_leading(lt, 5);
    if (v.proj_dim != 1) return v;
    const long long h5 = hilbert_function_of_leading(lt, 5, 5);
    const long long h6 = hilbert_function_of_leading(lt, 5, 6);
    v.degree = static_cast<int>(h6 - h5);
    v.arithmetic_genus = static_cast<int>(1 - (h5 - 5 * (h6 - h5)));

    std::vector<MultiPoly> gens = basis;
    for (auto& m : jacobian_minors(forms))
      if (!m.is_zero()) gens.push_back(std::move(m));
    const auto sing = groebner_basis(Ideal{gens, 5}, opt);
    v.smooth = proj_dimension_of_leading(leading_terms(sing), 5) == -1;
  } catch (const BudgetExceeded&) {
    v.budget_exceeded = true;
    v.smooth = false;
  }
  return v;
}

}  // namespace gonality
