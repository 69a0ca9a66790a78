#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "gonality/bitlinalg.hpp"
#include "gonality/quadform.hpp"

namespace gonality {

enum class OrthMethod { Naive, Transitivity };

std::string_view to_string(OrthMethod m);

/// O(Q) as a full, sorted element list.
struct OrthGroup {
  QuadraticForm form;
  std::vector<BinMatrix> elements;
  OrthMethod method = OrthMethod::Naive;

  std::size_t order() const { return elements.size(); }
  bool contains(const BinMatrix& g) const;
};

/// Q o g, the form x -> Q(g x). Throws std::invalid_argument if g is singular.
QuadraticForm act(const BinMatrix& g, const QuadraticForm& q);

/// True iff Q(g x) = Q(x) identically (g need not be invertible).
bool preserves(const BinMatrix& g, const QuadraticForm& q);

/// Exhaustive search over all n x n matrices.
OrthGroup orth_naive(const QuadraticForm& q);

/// Points of P^{n-1}(F_2) (nonzero vectors) split by the form.
struct WittStrata {
  std::vector<std::uint8_t> qset;  // Q(p) = 0
  std::vector<std::uint8_t> rset;  // p in the radical
  std::vector<std::uint8_t> sset;  // both
  /// Nonempty sets among qset \ sset, rset \ sset, sset, in that order.
  std::vector<std::vector<std::uint8_t>> y_factors;

  int i() const { return static_cast<int>(y_factors.size()); }
  std::size_t y_size() const;
  /// Every tuple of Y in lexicographic order; unused slots are zero.
  std::vector<std::array<std::uint8_t, 3>> y_elements() const;
};

WittStrata witt_strata(const QuadraticForm& q);

struct FastSearchStats {
  std::size_t y_size = 0;
  int solution_dim = 0;
  std::uint64_t candidates = 0;
};

/// O(Q) via transitivity on Y: for each p in Y, enumerate the matrices with
/// g p0_j = lambda_j p_j and keep the invertible isometries.
OrthGroup orth_fast(const QuadraticForm& q, FastSearchStats* stats = nullptr);

struct OrbitPartition {
  std::vector<QuadraticForm> representatives;
  /// Indexed by packed coefficients; -1 outside the acted-on set.
  std::vector<int> orbit_of;
  std::vector<std::size_t> orbit_sizes;
};

/// Orbits of G on `forms` (must be closed under G). Representatives are
/// orbit minima. Throws std::logic_error when an image leaves the set.
OrbitPartition orbit_representatives(const OrthGroup& g, const std::vector<QuadraticForm>& forms);

/// Drops q1 and every rep whose span with q1 has a nonzero member outside
/// `allowed`.
std::vector<QuadraticForm> span_discard(const QuadraticForm& q1,
                                        const std::vector<QuadraticForm>& reps,
                                        std::initializer_list<FormType> allowed);

/// Text form: header line then one sorted matrix per line.
std::string serialize(const OrthGroup& g);
OrthGroup parse_group(const std::string& text);

}  // namespace gonality
