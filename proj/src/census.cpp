#include "gonality/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "gonality/groebner.hpp"
#include "gonality/orthgroup.hpp"

namespace gonality {

namespace fs = std::filesystem;

QuadraticForm standard_q1(FormType type) {
  if (type == FormType::III) return normal_form_of(NormalShape::NormTail, 4, 5);
  if (type == FormType::IV) return normal_form_of(NormalShape::SquareTail, 5, 5);
  throw std::invalid_argument("census Q1 must be of type III or IV");
}

std::vector<FormType> allowed_types(FormType q1_type) {
  if (q1_type == FormType::III) return {FormType::III, FormType::IV};
  if (q1_type == FormType::IV) return {FormType::IV};
  throw std::invalid_argument("census Q1 must be of type III or IV");
}

namespace {

std::vector<QuadraticForm> build_A_with(const QuadraticForm& q1, const OrthGroup& g) {
  const FormType t = classify(q1);
  const auto part = orbit_representatives(g, build_B(q1));
  if (t == FormType::III) return span_discard(q1, part.representatives, {FormType::III, FormType::IV});
  return span_discard(q1, part.representatives, {FormType::IV});
}

}  // namespace

std::vector<QuadraticForm> build_A(const QuadraticForm& q1) { return build_A_with(q1, orth_fast(q1)); }

std::vector<QuadraticForm> build_B(const QuadraticForm& q1) {
  if (classify(q1) == FormType::III) return type_table().forms_of({FormType::III, FormType::IV});
  if (classify(q1) == FormType::IV) return type_table().forms_of({FormType::IV});
  throw std::invalid_argument("census Q1 must be of type III or IV");
}

bool pencil_filter(const QuadraticForm& q1, const QuadraticForm& q2, const QuadraticForm& q3) {
  const TypeTable& t = type_table();
  const FormType floor = t.type(q1);
  const std::uint16_t a = q1.coeffs(), b = q2.coeffs(), c = q3.coeffs();
  const std::uint16_t span[7] = {a, b, static_cast<std::uint16_t>(a ^ b), c, static_cast<std::uint16_t>(a ^ c),
                                 static_cast<std::uint16_t>(b ^ c), static_cast<std::uint16_t>(a ^ b ^ c)};
  for (std::uint16_t f : span)
    if (f == 0 || t[f] < floor) return false;
  return true;
}

const Q1Summary* CensusSummary::find(FormType t) const {
  for (const auto& s : per_q1)
    if (s.type == t) return &s;
  return nullptr;
}

std::string CensusSummary::to_kv() const {
  std::ostringstream os;
  for (const auto& s : per_q1) {
    const std::string p = std::string(to_string(s.type)) + ".";
    os << p << "q1=" << s.q1.hex() << '\n'
       << p << "q1_form=" << s.q1.to_string() << '\n'
       << p << "group_order=" << s.group_order << '\n'
       << p << "A=" << s.a_count << '\n'
       << p << "B=" << s.b_count << '\n'
       << p << "pairs=" << s.pairs << '\n'
       << p << "pencil_passed=" << s.pencil_passed << '\n'
       << p << "curves=" << s.curves << '\n'
       << p << "histogram=" << s.histogram[0] << ',' << s.histogram[1] << ',' << s.histogram[2] << ','
       << s.histogram[3] << ',' << s.histogram[4] << '\n'
       << p << "budget_flags=" << s.budget_flags << '\n'
       << p << "weil_violations=" << s.weil_violations << '\n';
  }
  os << "# timing\n";
  for (const auto& s : per_q1) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", s.seconds);
    os << to_string(s.type) << ".seconds=" << buf << '\n';
  }
  return os.str();
}

CensusSummary CensusSummary::from_kv(std::string_view text) {
  CensusSummary out;
  auto slot = [&](const std::string& tag) -> Q1Summary& {
    const FormType t = tag == "III" ? FormType::III : tag == "IV" ? FormType::IV : FormType::Zero;
    if (t == FormType::Zero) throw std::invalid_argument("summary: unknown section " + tag);
    for (auto& s : out.per_q1)
      if (s.type == t) return s;
    out.per_q1.push_back({});
    out.per_q1.back().type = t;
    return out.per_q1.back();
  };
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('='), dot = line.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
      throw std::invalid_argument("summary: bad line " + line);
    Q1Summary& s = slot(line.substr(0, dot));
    const std::string key = line.substr(dot + 1, eq - dot - 1), val = line.substr(eq + 1);
    if (key == "q1") s.q1 = QuadraticForm::from_hex(5, val);
    else if (key == "group_order") s.group_order = std::stoul(val);
    else if (key == "A") s.a_count = std::stoul(val);
    else if (key == "B") s.b_count = std::stoul(val);
    else if (key == "pairs") s.pairs = std::stoul(val);
    else if (key == "pencil_passed") s.pencil_passed = std::stoul(val);
    else if (key == "curves") s.curves = std::stoul(val);
    else if (key == "budget_flags") s.budget_flags = std::stoul(val);
    else if (key == "weil_violations") s.weil_violations = std::stoul(val);
    else if (key == "seconds") s.seconds = std::stod(val);
    else if (key == "histogram") {
      std::istringstream hs(val);
      std::string tok;
      for (std::size_t i = 0; i < 5 && std::getline(hs, tok, ','); ++i) s.histogram[i] = std::stoul(tok);
    }
  }
  return out;
}

std::string format_record(const CurveRecord& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04x\t%04x\t%04x\t%d\t%d\t%d\t%d", r.q1.coeffs(), r.q2.coeffs(), r.q3.coeffs(),
                r.counts[0], r.counts[1], r.counts[2], r.counts[3]);
  return buf;
}

CurveRecord parse_record(std::string_view line) {
  std::istringstream is{std::string(line)};
  std::string a, b, c;
  CurveRecord r;
  if (!(is >> a >> b >> c >> r.counts[0] >> r.counts[1] >> r.counts[2] >> r.counts[3]))
    throw std::invalid_argument("bad census record: " + std::string(line));
  r.q1 = QuadraticForm::from_hex(5, a);
  r.q2 = QuadraticForm::from_hex(5, b);
  r.q3 = QuadraticForm::from_hex(5, c);
  return r;
}

std::vector<CurveRecord> read_census(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CensusError("cannot read census file " + path);
  std::vector<CurveRecord> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(parse_record(line));
  return out;
}

namespace {

struct Unit {
  FormType type;
  std::size_t q2_index;
  std::size_t begin, end;
  std::string name;
};

struct UnitStats {
  std::size_t pencil = 0, budget = 0, weil = 0;
};

void write_atomic(const fs::path& path, const std::string& body) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CensusError("cannot write " + tmp.string());
    out << body;
    if (!out.flush()) throw CensusError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw CensusError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Q1Setup {
  FormType type;
  QuadraticForm q1;
  std::size_t group_order;
  std::vector<QuadraticForm> a, b;
  QuadricPointSieve::PointSet on_q1;
};

bool weil_sane(const CurveRecord& r) {
  for (int k = 1; k <= 4; ++k)
    if (std::abs(r.n(k) - ((1 << k) + 1)) > 10.0 * std::pow(2.0, k / 2.0)) return false;
  return true;
}

std::string run_unit(const Q1Setup& s, const Unit& u) {
  const QuadricPointSieve& sieve = QuadricPointSieve::shared();
  const QuadraticForm& q2 = s.a[u.q2_index];
  const auto on_q12 = sieve.restrict(s.on_q1, q2);
  UnitStats st;
  std::string body;
  for (std::size_t i = u.begin; i < u.end; ++i) {
    const QuadraticForm& q3 = s.b[i];
    if (!pencil_filter(s.q1, q2, q3)) continue;
    ++st.pencil;
    CurveRecord r{s.q1, q2, q3, {}, smooth_curve_check(s.q1, q2, q3)};
    if (r.verdict.budget_exceeded) ++st.budget;
    if (!r.verdict.genus5_curve()) continue;
    r.counts = sieve.count(on_q12, q3);
    if (!weil_sane(r)) ++st.weil;
    body += format_record(r);
    body += '\n';
  }
  return "#unit pencil=" + std::to_string(st.pencil) + " budget=" + std::to_string(st.budget) +
         " weil=" + std::to_string(st.weil) + "\n" + body;
}

UnitStats parse_unit_header(const std::string& body) {
  UnitStats st;
  if (std::sscanf(body.c_str(), "#unit pencil=%zu budget=%zu weil=%zu", &st.pencil, &st.budget, &st.weil) != 3)
    throw CensusError("corrupt part file header");
  return st;
}

}  // namespace

CensusSummary run_census(const CensusConfig& config) {
  if (config.workers < 1) throw std::invalid_argument("census: workers must be >= 1");
  if (config.output_path.empty()) throw std::invalid_argument("census: output path required");
  if (config.chunk_size == 0) throw std::invalid_argument("census: chunk size must be positive");
  auto log = [&](const std::string& m) {
    if (config.log) config.log(m);
  };

  std::vector<FormType> types;
  if (config.q1_choice != Q1Choice::IV) types.push_back(FormType::III);
  if (config.q1_choice != Q1Choice::III) types.push_back(FormType::IV);

  const fs::path out(config.output_path);
  const fs::path summary_path = out.string() + ".summary";
  const fs::path parts = out.string() + ".parts";

  if (config.resume && fs::exists(out) && fs::exists(summary_path)) {
    CensusSummary done = CensusSummary::from_kv(read_file(summary_path));
    bool complete = done.per_q1.size() == types.size();
    for (auto t : types) complete = complete && done.find(t);
    if (complete) {
      log("census already complete: " + out.string());
      return done;
    }
  }
  if (!config.resume && fs::exists(parts)) fs::remove_all(parts);
  fs::create_directories(parts);

  std::vector<Q1Setup> setups;
  std::vector<Unit> units;
  for (auto t : types) {
    Q1Setup s;
    s.type = t;
    s.q1 = standard_q1(t);
    const OrthGroup g = orth_fast(s.q1);
    s.group_order = g.order();
    s.a = build_A_with(s.q1, g);
    s.b = build_B(s.q1);
    s.on_q1 = QuadricPointSieve::shared().restrict(QuadricPointSieve::shared().all(), s.q1);
    log(std::string("Q1 type ") + std::string(to_string(t)) + ": |O| = " + std::to_string(s.group_order) +
        ", #A = " + std::to_string(s.a.size()) + ", #B = " + std::to_string(s.b.size()));
    for (std::size_t i = 0; i < s.a.size(); ++i)
      for (std::size_t b = 0, chunk = 0; b < s.b.size(); b += config.chunk_size, ++chunk)
        units.push_back({t, i, b, std::min(b + config.chunk_size, s.b.size()),
                         std::string(to_string(t)) + "-" + s.a[i].hex() + "-" + std::to_string(chunk) + ".tsv"});
    setups.push_back(std::move(s));
  }
  auto setup_of = [&](FormType t) -> const Q1Setup& {
    for (const auto& s : setups)
      if (s.type == t) return s;
    throw std::logic_error("census: missing setup");
  };

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < units.size(); ++i)
    if (!fs::exists(parts / units[i].name)) todo.push_back(i);
  log("work units: " + std::to_string(units.size()) + " total, " + std::to_string(todo.size()) + " to run");

  std::map<FormType, double> seconds;
  std::mutex mu;
  std::atomic<std::size_t> next{0}, finished{0};
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= todo.size()) return;
      const Unit& u = units[todo[j]];
      try {
        const auto t0 = std::chrono::steady_clock::now();
        const std::string body = run_unit(setup_of(u.type), u);
        write_atomic(parts / u.name, body);
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::lock_guard lock(mu);
        seconds[u.type] += dt;
        const std::size_t f = ++finished;
        if (f % 50 == 0 || f == todo.size())
          log("finished " + std::to_string(f) + "/" + std::to_string(todo.size()) + " units");
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = todo.size();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::min<int>(config.workers, std::max<std::size_t>(todo.size(), 1));
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  CensusSummary summary;
  std::vector<CurveRecord> records;
  for (const auto& s : setups) {
    Q1Summary q;
    q.type = s.type;
    q.q1 = s.q1;
    q.group_order = s.group_order;
    q.a_count = s.a.size();
    q.b_count = s.b.size();
    q.pairs = s.a.size() * s.b.size();
    q.seconds = seconds[s.type];
    for (const auto& u : units) {
      if (u.type != s.type) continue;
      const std::string body = read_file(parts / u.name);
      const UnitStats st = parse_unit_header(body);
      q.pencil_passed += st.pencil;
      q.budget_flags += st.budget;
      q.weil_violations += st.weil;
      std::istringstream is(body);
      std::string line;
      while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        CurveRecord r = parse_record(line);
        ++q.curves;
        ++q.histogram[std::min(r.n(1), 4)];
        records.push_back(r);
      }
    }
    summary.per_q1.push_back(q);
  }
  std::sort(records.begin(), records.end(), [](const CurveRecord& a, const CurveRecord& b) {
    return std::tuple(a.q1.coeffs(), a.q2.coeffs(), a.q3.coeffs()) <
           std::tuple(b.q1.coeffs(), b.q2.coeffs(), b.q3.coeffs());
  });
  std::string body;
  body.reserve(records.size() * 32);
  for (const auto& r : records) body += format_record(r) + '\n';
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_atomic(out, body);
  write_atomic(summary_path, summary.to_kv());
  fs::remove_all(parts);
  return summary;
}

std::array<QuadraticForm, 3> witness_triple() {
  const auto vars = ambient_vars(4);
  auto form = [&](const char* text) { return to_quadratic_form(parse_poly(text, vars), 5); };
  return {form("vw + xy + z^2"), form("vx + y^2 + vz + wz"), form("x^2 + wy + xy + vz + xz")};
}

namespace {

using SpanKey = std::array<std::uint16_t, 7>;

SpanKey span_key(std::uint16_t a, std::uint16_t b, std::uint16_t c) {
  SpanKey k = {a, b, static_cast<std::uint16_t>(a ^ b), c, static_cast<std::uint16_t>(a ^ c),
               static_cast<std::uint16_t>(b ^ c), static_cast<std::uint16_t>(a ^ b ^ c)};
  std::sort(k.begin(), k.end());
  return k;
}

std::string describe(const CurveRecord& r) { return format_record(r); }

}  // namespace

TheoremReport derive_theorems(const std::vector<CurveRecord>& records) {
  TheoremReport rep;
  rep.records = records.size();
  for (const auto& r : records) {
    rep.max_points = std::max(rep.max_points, r.n(1));
    if (r.n(1) > 3) throw CensusError("record with more than 3 rational points: " + describe(r));
    if (r.n(1) == 0) {
      ++rep.pointless;
      if (r.n(3) == 0) throw CensusError("pointless record without a point over F8: " + describe(r));
      ++rep.pointless_with_cubic_point;
    }
  }
  const auto w = witness_triple();
  const OrthGroup g = orth_fast(w[0]);
  std::set<SpanKey> images;
  for (const auto& m : g.elements) {
    const SubstitutionTable t(5, m);
    images.insert(span_key(t.apply(w[0].coeffs()), t.apply(w[1].coeffs()), t.apply(w[2].coeffs())));
  }
  for (const auto& r : records)
    if (r.q1 == w[0] && images.count(span_key(r.q1.coeffs(), r.q2.coeffs(), r.q3.coeffs()))) {
      rep.witness_present = true;
      break;
    }
  if (!rep.witness_present) throw CensusError("witness net with three rational points not found");
  return rep;
}

}  // namespace gonality
