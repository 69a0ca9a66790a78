#include "gonality/orthgroup.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gonality {

std::string_view to_string(OrthMethod m) {
  return m == OrthMethod::Naive ? "naive" : "fast";
}

bool OrthGroup::contains(const BinMatrix& g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

QuadraticForm act(const BinMatrix& g, const QuadraticForm& q) {
  if (!invert(g)) throw std::invalid_argument("act: singular matrix");
  return substitute(q, g);
}

bool preserves(const BinMatrix& g, const QuadraticForm& q) {
  const int n = q.vars();
  if (g.dim() != n) return false;
  const auto cols = g.columns();
  for (int j = 0; j < n; ++j) {
    if (q.eval(cols[j]) != q.coeff(j, j)) return false;
    for (int i = 0; i < j; ++i)
      if (q.polar(cols[i], cols[j]) != q.coeff(i, j)) return false;
  }
  return true;
}

namespace {

// Column-by-column search: column j must satisfy Q(col_j) = c_jj,
// b(col_i, col_j) = c_ij for i < j, and be independent of earlier columns.
void search_columns(const QuadraticForm& q, int j, std::array<std::uint8_t, 8>& cols,
                    std::vector<std::uint8_t>& echelon, std::vector<BinMatrix>& out) {
  const int n = q.vars();
  if (j == n) {
    out.push_back(BinMatrix::from_columns(n, cols.data()));
    return;
  }
  for (std::uint32_t c = 1; c < (1u << n); ++c) {
    if (q.eval(c) != q.coeff(j, j)) continue;
    bool ok = true;
    for (int i = 0; i < j && ok; ++i) ok = q.polar(cols[i], c) == q.coeff(i, j);
    if (!ok) continue;
    std::uint8_t r = static_cast<std::uint8_t>(c);
    for (std::uint8_t b : echelon)
      if (r & (b & -b)) r ^= b;
    if (!r) continue;
    auto saved = echelon;
    for (auto& b : echelon)
      if (b & (r & -r)) b ^= r;
    echelon.push_back(r);
    cols[j] = static_cast<std::uint8_t>(c);
    search_columns(q, j + 1, cols, echelon, out);
    echelon = std::move(saved);
  }
}

}  // namespace

OrthGroup orth_naive(const QuadraticForm& q) {
  OrthGroup g;
  g.form = q;
  g.method = OrthMethod::Naive;
  std::array<std::uint8_t, 8> cols{};
  std::vector<std::uint8_t> echelon;
  search_columns(q, 0, cols, echelon, g.elements);
  std::sort(g.elements.begin(), g.elements.end());
  return g;
}

std::size_t WittStrata::y_size() const {
  if (y_factors.empty()) return 0;
  std::size_t s = 1;
  for (const auto& f : y_factors) s *= f.size();
  return s;
}

std::vector<std::array<std::uint8_t, 3>> WittStrata::y_elements() const {
  std::vector<std::array<std::uint8_t, 3>> out;
  if (y_factors.empty()) return out;
  std::array<std::size_t, 3> idx{};
  const int k = i();
  for (;;) {
    std::array<std::uint8_t, 3> t{};
    for (int j = 0; j < k; ++j) t[j] = y_factors[j][idx[j]];
    out.push_back(t);
    int j = k - 1;
    while (j >= 0 && ++idx[j] == y_factors[j].size()) idx[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

WittStrata witt_strata(const QuadraticForm& q) {
  const int n = q.vars();
  const BinMatrix gram = q.gram();
  WittStrata s;
  for (std::uint32_t p = 1; p < (1u << n); ++p) {
    const bool in_q = !q.eval(p);
    const bool in_r = gram.apply(static_cast<std::uint8_t>(p)) == 0;
    if (in_q) s.qset.push_back(static_cast<std::uint8_t>(p));
    if (in_r) s.rset.push_back(static_cast<std::uint8_t>(p));
    if (in_q && in_r) s.sset.push_back(static_cast<std::uint8_t>(p));
  }
  auto minus_s = [&](const std::vector<std::uint8_t>& from) {
    std::vector<std::uint8_t> out;
    for (auto p : from)
      if (!std::binary_search(s.sset.begin(), s.sset.end(), p)) out.push_back(p);
    return out;
  };
  for (auto f : {minus_s(s.qset), minus_s(s.rset), s.sset})
    if (!f.empty()) s.y_factors.push_back(std::move(f));
  return s;
}

OrthGroup orth_fast(const QuadraticForm& q, FastSearchStats* stats) {
  const int n = q.vars();
  const WittStrata strata = witt_strata(q);
  const auto ys = strata.y_elements();
  if (ys.empty()) throw std::invalid_argument("orth_fast: empty Y");
  const int k = strata.i();
  const int unknowns = n * n + k;
  const auto& p0 = ys.front();
  const std::uint8_t row_mask = static_cast<std::uint8_t>((1u << n) - 1);

  OrthGroup g;
  g.form = q;
  g.method = OrthMethod::Transitivity;
  FastSearchStats local;
  local.y_size = ys.size();

  for (const auto& p : ys) {
    // Unknown g_{r,c} sits at bit r*n + c; lambda_j at bit n*n + j.
    std::vector<LinearEquation> system;
    for (int j = 0; j < k; ++j)
      for (int r = 0; r < n; ++r) {
        LinearEquation eq{BinVector{unknowns, 0}, false};
        for (int c = 0; c < n; ++c)
          if ((p0[j] >> c) & 1) eq.coeffs.set(r * n + c, true);
        if ((p[j] >> r) & 1) eq.coeffs.set(n * n + j, true);
        system.push_back(eq);
      }
    const auto space = solve_affine(system, unknowns);
    if (!space) continue;
    local.solution_dim = static_cast<int>(space->dimension());
    local.candidates += std::uint64_t{1} << space->dimension();
    space->for_each([&](const BinVector& v) {
      BinMatrix m(n);
      for (int r = 0; r < n; ++r) m.set_row(r, static_cast<std::uint8_t>((v.bits >> (r * n)) & row_mask));
      if (preserves(m, q) && rank(m) == n) g.elements.push_back(m);
    });
  }
  std::sort(g.elements.begin(), g.elements.end());
  g.elements.erase(std::unique(g.elements.begin(), g.elements.end()), g.elements.end());
  if (stats) *stats = local;
  return g;
}

OrbitPartition orbit_representatives(const OrthGroup& g, const std::vector<QuadraticForm>& forms) {
  OrbitPartition part;
  if (forms.empty()) return part;
  const int n = forms.front().vars();
  std::vector<SubstitutionTable> tables;
  tables.reserve(g.elements.size());
  for (const auto& m : g.elements) tables.emplace_back(n, m);

  const std::size_t space = std::size_t{1} << QuadraticForm::slots(n);
  std::vector<char> member(space, 0);
  for (const auto& f : forms) member[f.coeffs()] = 1;
  part.orbit_of.assign(space, -1);

  std::vector<QuadraticForm> sorted = forms;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& seed : sorted) {
    if (part.orbit_of[seed.coeffs()] >= 0) continue;
    const int idx = static_cast<int>(part.representatives.size());
    std::size_t size = 0;
    for (const auto& t : tables) {
      const std::uint16_t img = t.apply(seed.coeffs());
      if (!member[img]) throw std::logic_error("orbit leaves the form set: " + seed.hex());
      if (part.orbit_of[img] < 0) {
        part.orbit_of[img] = idx;
        ++size;
      }
    }
    // Ascending seeds make the seed the orbit minimum.
    part.representatives.push_back(seed);
    part.orbit_sizes.push_back(size);
  }
  return part;
}

std::vector<QuadraticForm> span_discard(const QuadraticForm& q1,
                                        const std::vector<QuadraticForm>& reps,
                                        std::initializer_list<FormType> allowed) {
  auto ok = [&](const QuadraticForm& f) {
    if (f.is_zero()) return true;
    const FormType t = classify(f);
    return std::find(allowed.begin(), allowed.end(), t) != allowed.end();
  };
  std::vector<QuadraticForm> out;
  for (const auto& q : reps) {
    if (q == q1) continue;
    if (ok(q) && ok(q1) && ok(q1 + q)) out.push_back(q);
  }
  return out;
}

std::string serialize(const OrthGroup& g) {
  std::ostringstream os;
  os << "orthgroup form=" << g.form.hex() << " n=" << g.form.vars()
     << " method=" << to_string(g.method) << " order=" << g.order() << '\n';
  for (const auto& m : g.elements) os << m.to_string() << '\n';
  return os.str();
}

OrthGroup parse_group(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header)) throw std::invalid_argument("group: empty input");
  std::istringstream hs(header);
  std::string tok, form_hex, method;
  int n = 0;
  std::size_t order = 0;
  hs >> tok;
  if (tok != "orthgroup") throw std::invalid_argument("group: bad header");
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("group: bad header field " + tok);
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "form") form_hex = val;
    else if (key == "n") n = std::stoi(val);
    else if (key == "method") method = val;
    else if (key == "order") order = std::stoul(val);
  }
  OrthGroup g;
  g.form = QuadraticForm::from_hex(n, form_hex);
  g.method = method == "naive" ? OrthMethod::Naive : OrthMethod::Transitivity;
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) g.elements.push_back(BinMatrix::parse(line));
  if (g.elements.size() != order) throw std::invalid_argument("group: order mismatch");
  std::sort(g.elements.begin(), g.elements.end());
  return g;
}

}  // namespace gonality
