#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gonality/curvekit.hpp"
#include "gonality/quadform.hpp"

namespace gonality {

enum class Q1Choice { III, IV, Both };

/// vw + x^2 + xy + y^2 for type III, vw + xy + z^2 for type IV.
QuadraticForm standard_q1(FormType type);

/// Types allowed in the span of a census triple with the given first form.
std::vector<FormType> allowed_types(FormType q1_type);

/// Orbit representatives of O(Q1) on the allowed forms, after span discard.
std::vector<QuadraticForm> build_A(const QuadraticForm& q1);
/// All forms of the allowed types.
std::vector<QuadraticForm> build_B(const QuadraticForm& q1);

/// Independent triple whose seven span members all have type >= type(q1).
bool pencil_filter(const QuadraticForm& q1, const QuadraticForm& q2, const QuadraticForm& q3);

struct CensusConfig {
  Q1Choice q1_choice = Q1Choice::Both;
  int workers = 1;
  std::string output_path;
  bool resume = false;
  /// Q3 candidates per work unit.
  std::size_t chunk_size = 2048;
  /// Progress messages; may be empty.
  std::function<void(const std::string&)> log;
};

struct Q1Summary {
  FormType type = FormType::IV;
  QuadraticForm q1;
  std::size_t group_order = 0;
  std::size_t a_count = 0;
  std::size_t b_count = 0;
  std::size_t pairs = 0;
  std::size_t pencil_passed = 0;
  std::size_t curves = 0;
  /// Curves with 0, 1, 2, 3, >= 4 rational points.
  std::array<std::size_t, 5> histogram{};
  std::size_t budget_flags = 0;
  std::size_t weil_violations = 0;
  double seconds = 0;
};

struct CensusSummary {
  std::vector<Q1Summary> per_q1;

  const Q1Summary* find(FormType t) const;
  /// key=value lines; timing lines come last under "# timing".
  std::string to_kv() const;
  static CensusSummary from_kv(std::string_view text);
};

class CensusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs the search, writes the sorted record file and PATH.summary, and
/// returns the summary. Work units live in PATH.parts/ until the merge.
CensusSummary run_census(const CensusConfig& config);

/// "q1 q2 q3 N1 N2 N3 N4", tab separated, hex form ids.
std::string format_record(const CurveRecord& r);
CurveRecord parse_record(std::string_view line);
std::vector<CurveRecord> read_census(const std::string& path);

struct TheoremReport {
  std::size_t records = 0;
  int max_points = 0;
  std::size_t pointless = 0;
  std::size_t pointless_with_cubic_point = 0;
  bool witness_present = false;
};

/// The census triple with three rational points used as a witness.
std::array<QuadraticForm, 3> witness_triple();

/// Checks that no record has more than 3 rational points, that every
/// pointless record has a point over F8, and that the witness net occurs
/// (up to O(Q1)). Throws CensusError naming the offending record.
TheoremReport derive_theorems(const std::vector<CurveRecord>& records);

}  // namespace gonality
