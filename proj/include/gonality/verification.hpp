#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gonality/curvekit.hpp"

namespace gonality {

enum class VerifyScope { All, Genus1, Genus2, Genus3, Genus4, Genus5, AppendixA };

std::string_view to_string(VerifyScope s);
/// "all", "genus1" .. "genus5", "appendixA". Throws std::invalid_argument.
VerifyScope parse_scope(std::string_view text);

struct VerificationEntry {
  std::string id;
  std::string claimed;
  std::string computed;
  bool pass = false;
};

/// One cell of the N_2(g, gonality) table.
struct TableCell {
  int genus = 0;
  int gonality = 0;
  /// Empty for -infinity.
  std::optional<int> value;
  std::string lower;
  std::string upper;
  bool upper_assumed = false;
  bool verified = false;
};

struct VerificationReport {
  std::vector<VerificationEntry> entries;
  std::vector<TableCell> table;

  bool all_pass() const;
  std::string to_text() const;
  /// Tab-separated key=value lines.
  std::string to_kv() const;
};

/// Runs the example battery. Genus-5 census entries need `census`; without
/// it they are reported as failures.
VerificationReport run_verification(VerifyScope scope, const std::vector<CurveRecord>* census = nullptr);

/// Named example curves.
namespace examples {
MultiPoly elliptic_curve();
MultiPoly quartic_with_seven_points();
MultiPoly pointless_quartic();
QuadraticForm genus4_split_quadric();
MultiPoly genus4_trigonal_cubic();
QuadraticForm genus4_cone_quadric();
QuadraticForm genus4_nonsplit_quadric();
MultiPoly genus4_tetragonal_cubic();
MultiPoly genus4_pentagonal_cubic();
MultiPoly trigonal_quintic();
CurveRecord tetragonal_genus5();
CurveRecord pentagonal_genus5();
}  // namespace examples

}  // namespace gonality
