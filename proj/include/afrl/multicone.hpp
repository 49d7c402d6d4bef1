#ifndef AFRL_MULTICONE_HPP
#define AFRL_MULTICONE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "afrl/geometry.hpp"
#include "afrl/word.hpp"

namespace afrl {

// Finite union of closed angular intervals in RP^1. Intervals are stored as
// (lo, hi) with 0 <= lo < pi and lo < hi <= lo + pi; hi may exceed pi to
// express wraparound.
struct Multicone {
  std::vector<std::pair<double, double>> intervals;

  bool contains(double theta, double margin = 0.0) const;
  double total_length() const;
};

struct MulticoneSearch {
  std::optional<Multicone> cone;
  int grid_resolution = 0;
  // absence of a cone at one resolution is inconclusive, never a proof
  bool conclusive_absent = false;
};

MulticoneSearch find_invariant_multicone(const std::vector<Mat2>& mats, int grid_resolution = 2048);

struct IrreducibilityVerdict {
  bool irreducible = false;
  std::optional<double> witness;  // common fixed direction when reducible
};

IrreducibilityVerdict check_irreducible(const std::vector<Mat2>& mats);

enum class LimitKind { Forward, Inverse, Adjoint };

struct LimitDirection {
  double theta = 0.0;
  int steps = 0;
};

// theta(i), theta^-(i), theta^*(i) of the prefix extended cyclically; stops at
// the first n whose successive RP^1 step is below tol.
LimitDirection limit_direction(const std::vector<Mat2>& mats, const Word& prefix, LimitKind kind,
                               double tol = 1e-12, int depth_cap = 10000);

}  // namespace afrl

#endif
