#pragma once

#include <optional>
#include <set>
#include <string>

#include "morphan/orders.hpp"
#include "morphan/system.hpp"

namespace morphan {

struct LevelFlags {
  bool weakly_1_periodic = false;
  bool strongly_1_periodic = false;
  bool long_images = false;
  bool all() const { return weakly_1_periodic && strongly_1_periodic && long_images; }
};

enum class AddedRole { Order1, Order2 };

struct NormalizationReport {
  int power = 1;                                       // phi_normalized = phi^power
  std::vector<std::pair<Letter, AddedRole>> added_letters;
  LevelFlags flags;
};

// Final periods: minimal complete periods of psi(phi(gamma))psi(phi(gamma))
// for the order-1 fringes gamma beside self-reproducing borders, closed under
// cyclic shifts. L is the maximal length over the set.
struct FinalPeriodSet {
  std::vector<Word> periods;  // sorted, deduplicated
  std::size_t L = 0;
  bool empty() const { return periods.empty(); }
};

// Ensures a periodic letter of order 1 and one of order 2 exist, adding up to
// two fresh letters that never occur in alpha.
std::pair<MorphicSystem, std::vector<std::pair<Letter, AddedRole>>> augment_alphabet(
    const MorphicSystem& s, const std::vector<LetterProfile>& profiles);

// Evaluates the three normalization predicates on the system as-is.
LevelFlags check_level(const MorphicSystem& s, const std::vector<LetterProfile>& profiles);

FinalPeriodSet compute_final_periods(const MorphicSystem& s,
                                     const std::vector<LetterProfile>& profiles);

struct NormalizeOptions {
  int power_budget = 256;  // cap on the power search; exceeding it signals a bug
};

// Augments, then finds the smallest n with phi^n weakly and strongly
// 1-periodic with long images. Returns the normalized system and the report.
std::pair<MorphicSystem, NormalizationReport> normalize(const MorphicSystem& s,
                                                        const NormalizeOptions& opts = {});

}  // namespace morphan
