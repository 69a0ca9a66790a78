#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gonality/census.hpp"
#include "gonality/curvekit.hpp"
#include "gonality/orthgroup.hpp"
#include "gonality/verification.hpp"

using namespace gonality;

namespace {

enum class Format { Text, Kv };

struct Output {
  Format format = Format::Text;
  std::ostringstream body;

  void field(const std::string& key, const std::string& value) {
    if (format == Format::Kv)
      body << key << '=' << value << '\n';
    else
      body << key << ": " << value << '\n';
  }
  void field(const std::string& key, long long value) { field(key, std::to_string(value)); }
};

QuadraticForm read_form(const std::string& text, int ambient) {
  if (ambient < 1 || ambient > 4) throw std::invalid_argument("ambient dimension must be 1..4");
  return to_quadratic_form(parse_poly(text, ambient_vars(ambient)), ambient + 1);
}

int cmd_classify(Output& out, const std::string& text, int ambient) {
  const QuadraticForm q = read_form(text, ambient);
  if (q.is_zero()) throw std::invalid_argument("zero form");
  const FormAnatomy a = anatomy(q);
  const NormalFormReport nf = normal_form(q);
  out.field("form", q.to_string());
  out.field("id", q.hex());
  out.field("type", std::string(to_string(classify(q))));
  out.field("gram_rank", a.gram_rank());
  out.field("radical_dim", static_cast<long long>(a.radical_basis.size()));
  out.field("singular_dim", static_cast<long long>(a.singular_basis.size()));
  out.field("normal_form", nf.form().to_string());
  out.field("normal_shape", std::string(to_string(nf.shape)) + " m=" + std::to_string(nf.m));
  for (int k = 1; k <= 4; ++k) out.field("points_F" + std::to_string(1 << k), count_proj_points(q, k));
  return 0;
}

int cmd_orth(Output& out, const std::string& text, int ambient, const std::string& method, bool elements) {
  const QuadraticForm q = read_form(text, ambient);
  FastSearchStats st;
  const OrthGroup g = method == "naive" ? orth_naive(q) : orth_fast(q, &st);
  if (elements) {
    out.body << serialize(g);
    return 0;
  }
  out.field("form", q.to_string());
  out.field("method", std::string(to_string(g.method)));
  out.field("order", static_cast<long long>(g.order()));
  if (method == "fast") {
    out.field("Y", static_cast<long long>(st.y_size));
    out.field("solution_dim", st.solution_dim);
    out.field("candidates", static_cast<long long>(st.candidates));
  }
  return 0;
}

void print_summary(Output& out, const CensusSummary& s) {
  if (out.format == Format::Kv) {
    out.body << s.to_kv();
    return;
  }
  auto& os = out.body;
  os << "Q1                     type  |O(Q1)|  #A    #B     pairs    pencil  curves\n";
  for (const auto& q : s.per_q1) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-22s %-5s %-8zu %-5zu %-6zu %-8zu %-7zu %zu\n", q.q1.to_string().c_str(),
                  std::string(to_string(q.type)).c_str(), q.group_order, q.a_count, q.b_count, q.pairs,
                  q.pencil_passed, q.curves);
    os << buf;
  }
  os << "\nrational points        0      1      2      3      >=4\n";
  for (const auto& q : s.per_q1) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "type %-17s %-6zu %-6zu %-6zu %-6zu %zu\n", std::string(to_string(q.type)).c_str(),
                  q.histogram[0], q.histogram[1], q.histogram[2], q.histogram[3], q.histogram[4]);
    os << buf;
  }
  for (const auto& q : s.per_q1)
    if (q.budget_flags || q.weil_violations)
      os << "warning: type " << to_string(q.type) << " budget flags " << q.budget_flags << ", Weil violations "
         << q.weil_violations << '\n';
  os << "\ntiming\n";
  for (const auto& q : s.per_q1) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "  type %s: %.1f s\n", std::string(to_string(q.type)).c_str(), q.seconds);
    os << buf;
  }
}

int cmd_census(Output& out, const std::string& q1, int jobs, const std::string& path, bool resume,
               std::size_t chunk, bool quiet) {
  CensusConfig c;
  c.q1_choice = q1 == "3" ? Q1Choice::III : q1 == "4" ? Q1Choice::IV : Q1Choice::Both;
  c.workers = jobs;
  c.output_path = path;
  c.resume = resume;
  c.chunk_size = chunk;
  if (!quiet) c.log = [](const std::string& m) { std::cerr << m << '\n'; };
  print_summary(out, run_census(c));
  return 0;
}

int cmd_count(Output& out, const std::vector<std::string>& polys, int ambient, const std::vector<int>& degrees) {
  const auto vars = ambient_vars(ambient);
  std::vector<MultiPoly> forms;
  for (const auto& p : polys) forms.push_back(parse_poly(p, vars));
  for (int k : degrees) out.field("points_F" + std::to_string(1 << k), count_points(forms, ambient, k));
  return 0;
}

std::vector<CurveRecord> load_census(const std::string& path) { return read_census(path); }

int cmd_verify(Output& out, const std::string& scope, const std::string& census_path) {
  std::vector<CurveRecord> records;
  if (!census_path.empty()) records = load_census(census_path);
  const auto report = run_verification(parse_scope(scope), census_path.empty() ? nullptr : &records);
  out.body << (out.format == Format::Kv ? report.to_kv() : report.to_text());
  return report.all_pass() ? 0 : 1;
}

int cmd_tables(Output& out, const std::string& census_path) {
  std::vector<CurveRecord> records;
  if (!census_path.empty()) records = load_census(census_path);
  auto report = run_verification(VerifyScope::All, census_path.empty() ? nullptr : &records);
  report.entries.clear();
  const bool ok = std::all_of(report.table.begin(), report.table.end(), [](const TableCell& c) { return c.verified; });
  if (out.format == Format::Kv) {
    out.body << report.to_kv();
  } else {
    out.body << " g  gonality  N2    lower bound / upper bound\n";
    for (const auto& c : report.table) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%2d  %8d  %-4s  ", c.genus, c.gonality,
                    c.value ? std::to_string(*c.value).c_str() : "-inf");
      out.body << buf << c.lower << "\n                    "
               << (c.upper_assumed ? c.upper + " (assumed [external])" : c.upper) << (c.verified ? "" : " [unverified]")
               << '\n';
    }
  }
  if (!census_path.empty()) {
    std::ifstream in(census_path + ".summary");
    if (in) {
      std::stringstream ss;
      ss << in.rdbuf();
      out.body << '\n';
      print_summary(out, CensusSummary::from_kv(ss.str()));
    }
  }
  return ok ? 0 : 1;
}

int default_jobs() {
  if (const char* env = std::getenv("GONALITY_JOBS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational points and gonality of curves over F2"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "kv"}));

  std::string form, method = "fast", q1 = "both", out_path = "census.tsv", scope = "all", census_path;
  int ambient = 4, jobs = default_jobs();
  bool elements = false, resume = false, quiet = false;
  std::size_t chunk = 2048;
  std::vector<std::string> polys;
  std::vector<int> degrees{1, 2, 3, 4};

  auto* classify_cmd = app.add_subcommand("classify", "Type, anatomy and normal form of a quadratic form");
  classify_cmd->add_option("form", form, "Quadratic form, e.g. vw+xy")->required();
  classify_cmd->add_option("--ambient", ambient, "Projective dimension (variables v,w,x,y,z for 4)")
      ->check(CLI::Range(1, 4));

  auto* orth_cmd = app.add_subcommand("orth", "Orthogonal group of a quadratic form");
  orth_cmd->add_option("form", form, "Quadratic form")->required();
  orth_cmd->add_option("--ambient", ambient, "Projective dimension")->check(CLI::Range(1, 4));
  orth_cmd->add_option("--method", method, "naive or fast")->check(CLI::IsMember({"naive", "fast"}));
  orth_cmd->add_flag("--elements", elements, "Print every element");

  auto* census_cmd = app.add_subcommand("census", "Run the genus-5 census");
  census_cmd->add_option("--q1", q1, "3, 4 or both")->check(CLI::IsMember({"3", "4", "both"}));
  census_cmd->add_option("--jobs", jobs, "Worker threads (default $GONALITY_JOBS or 1)")->check(CLI::PositiveNumber);
  census_cmd->add_option("--out", out_path, "Record file");
  census_cmd->add_flag("--resume", resume, "Reuse finished work units");
  census_cmd->add_option("--chunk", chunk, "Q3 candidates per work unit")->check(CLI::PositiveNumber);
  census_cmd->add_flag("--quiet", quiet, "No progress messages");

  auto* count_cmd = app.add_subcommand("count", "Count points of a projective variety");
  count_cmd->add_option("polys", polys, "Defining forms")->required();
  count_cmd->add_option("--ambient", ambient, "Projective dimension (x,y,z for 2)")->check(CLI::Range(1, 4));
  count_cmd->add_option("--k", degrees, "Extension degrees")->check(CLI::Range(1, 8));

  auto* verify_cmd = app.add_subcommand("verify", "Check the example battery");
  verify_cmd->add_option("--scope", scope, "all, genus1..genus5, appendixA")
      ->check(CLI::IsMember({"all", "genus1", "genus2", "genus3", "genus4", "genus5", "appendixA"}));
  verify_cmd->add_option("--census", census_path, "Census record file");

  auto* tables_cmd = app.add_subcommand("tables", "Table of N2(g, gonality) with the source of each bound");
  tables_cmd->add_option("--census", census_path, "Census record file");

  CLI11_PARSE(app, argc, argv);

  Output out;
  out.format = format == "kv" ? Format::Kv : Format::Text;
  int status = 0;
  try {
    if (*classify_cmd) status = cmd_classify(out, form, ambient);
    else if (*orth_cmd) status = cmd_orth(out, form, ambient, method, elements);
    else if (*census_cmd) status = cmd_census(out, q1, jobs, out_path, resume, chunk, quiet);
    else if (*count_cmd) status = cmd_count(out, polys, ambient, degrees);
    else if (*verify_cmd) status = cmd_verify(out, scope, census_path);
    else if (*tables_cmd) status = cmd_tables(out, census_path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cout << out.body.str();
  return status;
}
