#pragma once

#include <string>

#include "morphan/classifier.hpp"
#include "morphan/word.hpp"

namespace morphan {

struct ComplexityTable {
  std::int64_t prefix_len = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> entries;  // (n, p_n), sorted by n
};

struct ExponentFit {
  std::int64_t n_lo = 0, n_hi = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  int points = 0;
};

// Suffix automaton over the word; counts of distinct factors per length come
// from one aggregation pass over the states.
class SuffixAutomaton {
 public:
  explicit SuffixAutomaton(const Word& word);

  // p(n) for all n in [1, max_n]; index 0 unused.
  std::vector<std::int64_t> counts_up_to(std::int64_t max_n) const;
  std::size_t state_count() const { return states_.size(); }

 private:
  struct State {
    std::int64_t len = 0;
    std::int32_t link = -1;
    std::vector<std::pair<Letter, std::int32_t>> next;  // sorted by letter
  };
  std::int32_t transition(std::int32_t v, Letter c) const;
  void set_transition(std::int32_t v, Letter c, std::int32_t to);

  std::vector<State> states_;
  std::int32_t last_ = 0;
};

struct FactorCountOptions {
  // Guard against undercounting by truncation: max(ns) <= |word| / divisor.
  std::int64_t guard_divisor = 50;
  bool override_guard = false;
};

ComplexityTable factor_counts(const Word& word, const std::vector<std::int64_t>& ns,
                              const FactorCountOptions& opts = {});

// Least-squares slope of log p_n against log n over entries with n in range.
ExponentFit fit_exponent(const ComplexityTable& table, std::int64_t n_lo, std::int64_t n_hi);

struct Tolerances {
  double tol_slope = 0.2;
  double tol_log = 0.25;
  // Entries with p_n > saturation_fraction * (prefix_len - n + 1) are
  // truncation-saturated and excluded from slope fits.
  double saturation_fraction = 0.5;
};

struct CrossCheckReport {
  struct Item {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  bool pass = true;
  double slope = 0.0;
  int fitted_points = 0;
  int dropped_saturated = 0;
  std::vector<Item> items;
};

// Compares the predicted class against the measured table. The polynomial
// lower bound is only enforced for finite-order axioms: for exponential
// systems the obstacle onset lies beyond any feasible prefix, so only the
// upper bound is checkable and the report says so.
CrossCheckReport cross_check(const ComplexityVerdict& verdict, const ComplexityTable& table,
                             const Tolerances& tol = {});

}  // namespace morphan
