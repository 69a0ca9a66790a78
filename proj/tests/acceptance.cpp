#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "gonality/census.hpp"
#include "gonality/curvekit.hpp"
#include "gonality/orthgroup.hpp"
#include "gonality/verification.hpp"

using namespace gonality;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Result {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Result& r) {
  std::cout << (r.pass ? "PASS" : "FAIL") << "  [" << id << "] " << name << ": " << r.detail << std::endl;
  failures += !r.pass;
}

template <typename F>
Result guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << " s";
  return os.str();
}

const QuadraticForm kNormalForms[] = {normal_form_of(NormalShape::SquareTail, 3, 5),
                                      normal_form_of(NormalShape::Hyperbolic, 4, 5),
                                      normal_form_of(NormalShape::NormTail, 4, 5),
                                      normal_form_of(NormalShape::SquareTail, 5, 5)};

Result type_table_check() {
  const auto t0 = Clock::now();
  const TypeTable t = build_type_table();
  const double s = since(t0);
  const std::size_t iv = t.count(FormType::IV), iii_iv = t.count(FormType::III) + iv;
  std::ostringstream os;
  os << t.size() << " forms, type IV " << iv << ", type III or IV " << iii_iv << ", built in " << fmt_seconds(s);
  return {t.size() == 32767 && iv == 13888 && iii_iv == 19096 && s < 10, os.str()};
}

Result orth_check() {
  bool ok = true;
  std::ostringstream os;
  for (const auto& q : kNormalForms) {
    auto t0 = Clock::now();
    const OrthGroup fast = orth_fast(q);
    const double fast_s = since(t0);
    t0 = Clock::now();
    const OrthGroup naive = orth_naive(q);
    const double naive_s = since(t0);
    const bool same = fast.elements == naive.elements;
    ok &= same && fast_s < 60 && naive_s < 3600;
    os << (os.tellp() > 0 ? "; " : "") << "|O(" << q.to_string() << ")| = " << fast.order()
       << (same ? " (fast = naive)" : " (fast != naive)");
  }
  const std::size_t o3 = orth_fast(standard_q1(FormType::III)).order();
  const std::size_t o4 = orth_fast(standard_q1(FormType::IV)).order();
  ok &= o3 == 1920 && o4 == 720;
  return {ok, os.str()};
}

Result orbit_check() {
  const std::size_t a3 = build_A(standard_q1(FormType::III)).size();
  const std::size_t a4 = build_A(standard_q1(FormType::IV)).size();
  return {a3 == 17 && a4 == 10, "#A = " + std::to_string(a3) + " (type III), " + std::to_string(a4) + " (type IV)"};
}

Result census_check(const CensusSummary& s, double seconds) {
  const Q1Summary* iii = s.find(FormType::III);
  const Q1Summary* iv = s.find(FormType::IV);
  if (!iii || !iv) return {false, "summary incomplete"};
  const bool ok = iii->curves == 30296 && iv->curves == 8296 &&
                  iii->histogram == std::array<std::size_t, 5>{11864, 13184, 5248, 0, 0} &&
                  iv->histogram == std::array<std::size_t, 5>{0, 0, 0, 8296, 0} && seconds < 7200;
  std::ostringstream os;
  auto hist = [&](const Q1Summary& q) {
    return std::to_string(q.histogram[0]) + "," + std::to_string(q.histogram[1]) + "," +
           std::to_string(q.histogram[2]) + "," + std::to_string(q.histogram[3]) + "," +
           std::to_string(q.histogram[4]);
  };
  os << "curves " << iii->curves << " / " << iv->curves << ", histograms (" << hist(*iii) << ") / (" << hist(*iv)
     << "), " << fmt_seconds(seconds);
  return {ok, os.str()};
}

Result theorem_check(const std::vector<CurveRecord>& records) {
  const TheoremReport r = derive_theorems(records);
  std::ostringstream os;
  os << "max points " << r.max_points << ", pointless " << r.pointless << " with a point over F8 "
     << r.pointless_with_cubic_point << ", witness net " << (r.witness_present ? "present" : "missing");
  return {r.max_points == 3 && r.pointless == 11864 && r.pointless_with_cubic_point == 11864 && r.witness_present,
          os.str()};
}

Result battery_check(const std::vector<CurveRecord>& records) {
  std::size_t total = 0, failed = 0;
  std::string first_failure;
  for (auto s : {VerifyScope::Genus1, VerifyScope::Genus2, VerifyScope::Genus3, VerifyScope::Genus4,
                 VerifyScope::Genus5}) {
    const auto r = run_verification(s, &records);
    for (const auto& e : r.entries) {
      ++total;
      if (!e.pass) {
        ++failed;
        if (first_failure.empty()) first_failure = e.id + " computed " + e.computed;
      }
    }
    if (s == VerifyScope::Genus5)
      for (int g = 6; g <= 10; ++g) {
        ++total;
        failed += hyperelliptic_family(g).rational_points() != 6;
      }
  }
  std::string detail = std::to_string(total - failed) + "/" + std::to_string(total) + " example checks";
  if (!first_failure.empty()) detail += "; first failure " + first_failure;
  return {failed == 0 && total > 0, detail};
}

Result property_check(const std::vector<CurveRecord>& records) {
  std::ostringstream os;
  bool ok = true;

  std::size_t pairs = 0;
  for (const auto& q : kNormalForms) {
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
      ok &= orbit == all;
      pairs += ys.size();
    }
  }
  os << "transitivity on " << pairs << " pairs; ";

  const std::size_t step = std::max<std::size_t>(records.size() / 100, 1);
  std::size_t sampled = 0, bases = 0;
  for (std::size_t i = 0; i < records.size() && sampled < 100; i += step, ++sampled) {
    const auto& r = records[i];
    const Ideal id{{to_poly(r.q1), to_poly(r.q2), to_poly(r.q3)}};
    const auto gb = groebner_basis(id);
    ok &= is_groebner_basis(gb);
    ++bases;
    for (int d = 4; d <= 8; ++d) ok &= hilbert_function(id, d) == 8 * d - 4;
    auto with_minors = id.generators;
    for (const auto& m : jacobian_minors(id.generators)) with_minors.push_back(m);
    ok &= is_groebner_basis(groebner_basis({with_minors}));
    ++bases;
  }
  os << "S-pair check on " << bases << " bases; Hilbert 8d-4 on " << sampled << " curves; ";

  std::size_t weil = 0, frob = 0;
  for (const auto& r : records) {
    weil += !weil_bound_holds(r.counts, 5);
    frob += !frobenius_congruences_hold(r.counts);
  }
  ok &= weil == 0 && frob == 0;
  os << "Weil/Frobenius failures " << weil << "/" << frob << " on " << records.size() << " records; ";

  std::size_t certs = 0, bad = 0;
  auto cert = [&](const GonalityCertificate& c, bool census_member) {
    ++certs;
    bad += c.rational_points > 3 * c.upper.value || c.lower.value > c.upper.value ||
           (census_member && c.lower.value != 5);
  };
  cert(genus3_certificate(examples::quartic_with_seven_points()), false);
  cert(genus3_certificate(examples::pointless_quartic()), false);
  cert(genus4_certificate(examples::genus4_split_quadric(), examples::genus4_trigonal_cubic()), false);
  cert(genus4_certificate(examples::genus4_nonsplit_quadric(), examples::genus4_tetragonal_cubic()), false);
  cert(genus4_certificate(examples::genus4_nonsplit_quadric(), examples::genus4_pentagonal_cubic()), false);
  cert(genus5_certificate(examples::tetragonal_genus5()), false);
  for (const auto& r : records) {
    CurveRecord full = r;
    full.verdict = smooth_curve_check(r.q1, r.q2, r.q3);
    cert(genus5_certificate(full), true);
  }
  ok &= bad == 0;
  os << certs - bad << "/" << certs << " certificates satisfy N1 <= 3 * gonality";
  return {ok, os.str()};
}

Result strata_check() {
  const QuadraticForm q = kNormalForms[0];
  const WittStrata w = witt_strata(q);
  FastSearchStats st;
  orth_fast(q, &st);
  std::string sizes;
  for (const auto& f : w.y_factors) sizes += (sizes.empty() ? "" : ", ") + std::to_string(f.size());
  const bool ok = sizes == "12, 4, 3" && w.y_size() == 144 && st.y_size == 144 && st.candidates == 1179648;
  return {ok, q.to_string() + ": strata (" + sizes + "), #Y = " + std::to_string(w.y_size()) + ", candidates " +
                  std::to_string(st.candidates)};
}

int default_jobs() {
  if (const char* env = std::getenv("GONALITY_JOBS")) {
    try {
      if (int n = std::stoi(env); n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::string workdir = "acceptance_census";
  int jobs = default_jobs();
  bool resume = false;
  app.add_option("--workdir", workdir, "Directory for the census files");
  app.add_option("--jobs", jobs, "Census worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--resume", resume, "Reuse a previous census in the work directory");
  CLI11_PARSE(app, argc, argv);

  report(1, "type table", guarded(type_table_check));
  report(2, "orthogonal groups", guarded(orth_check));
  report(3, "orbit representatives", guarded(orbit_check));

  std::vector<CurveRecord> records;
  CensusSummary summary;
  double census_seconds = 0;
  std::string census_error;
  try {
    std::filesystem::create_directories(workdir);
    CensusConfig c;
    c.output_path = (std::filesystem::path(workdir) / "census.tsv").string();
    c.workers = jobs;
    c.resume = resume;
    const auto t0 = Clock::now();
    summary = run_census(c);
    census_seconds = since(t0);
    records = read_census(c.output_path);
  } catch (const std::exception& e) {
    census_error = e.what();
  }
  if (!census_error.empty()) {
    for (auto [id, name] : {std::pair{4, "census"}, {5, "derived theorems"}})
      report(id, name, {false, "census failed: " + census_error});
  } else {
    report(4, "census", guarded([&] { return census_check(summary, census_seconds); }));
    report(5, "derived theorems", guarded([&] { return theorem_check(records); }));
  }
  report(6, "example battery", guarded([&] { return battery_check(records); }));
  report(7, "property suites", guarded([&] { return property_check(records); }));
  report(8, "stratification example", guarded(strata_check));
  return failures == 0 ? 0 : 1;
}
