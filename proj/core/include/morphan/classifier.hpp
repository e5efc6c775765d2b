#pragma once

#include <optional>
#include <string>

#include "morphan/analyzer.hpp"
#include "morphan/normalization.hpp"

namespace morphan {

struct ClassifyParams {
  std::int64_t prefix_len = 200000;
  int window = 5;    // W: stable members checked, starting at l = 3k
  int horizon = 512; // H: letters of the bounding sequence checked
  int normalize_budget = 256;
};

// Witness that an evolution is continuously periodic for index m.
struct PeriodWitness {
  int index_m = 0;
  Word left_period, right_period;
  std::int64_t residue_left = 0, residue_right = 0;
  int window = 0, horizon = 0;
};

enum class FiredRule { Prop1_2, Prop1_3, Prop1_4, Prop1_5, Prop1_6 };

struct ComplexityVerdict {
  enum class Class { Constant, PolyExponent, NLogN };
  Class cls = Class::Constant;
  int exponent_num = 0, exponent_den = 0;  // (k+1)/k for PolyExponent
  FiredRule fired_rule = FiredRule::Prop1_5;
  std::optional<int> k_star;
  ClassifyParams horizons;
  std::optional<std::pair<std::string, int>> counterexample;  // (evolution id, k)
  int normalize_power = 1;
  bool axiom_order_finite = true;
  bool infinite_axiom_no_finite_letters = false;  // boundary case, flagged

  struct EvoSummary {
    int k = 0;
    std::string id;
    OriginTuple origin;
    bool case_left_I = false, case_right_I = false;
    int ncker = 0;
    bool continuously_periodic = false;
    std::optional<PeriodWitness> witness;
  };
  std::vector<EvoSummary> evolutions;

  double exponent() const {
    return exponent_den == 0 ? 0.0 : static_cast<double>(exponent_num) / exponent_den;
  }
  std::string exponent_string() const;
  std::string class_string() const;
};

const char* to_string(FiredRule r);

// Materializes >= `length` letters of the bounding sequence next to a Case II
// border of the evolution; throws CaseIError when Case I holds on that side.
Word bounding_prefix(EvolutionChain& chain, Side side, int length);

// Condition 1 of the continuous-periodicity definitions, at the multiblock
// level: psi(IpR_{k,m,m'}) weakly periodic with `lambda` on the given side
// with constant residue, over `window` consecutive stable members starting at
// `first_member`.
bool weak_evolutional_period(EvolutionChain& chain, int first_member, int window, int m, int m2,
                             const Word& lambda, Side side);

// Searches final periods satisfying conditions 1 and 2 for index m.
std::optional<PeriodWitness> continuous_period_check(EvolutionChain& chain,
                                                     const FinalPeriodSet& fps, int m,
                                                     const ClassifyParams& params);

std::pair<bool, std::optional<PeriodWitness>> is_continuously_periodic(EvolutionChain& chain,
                                                                       const FinalPeriodSet& fps,
                                                                       const ClassifyParams& params);

// Prop 1.4's dichotomy for an axiom of order k+2 once every k-evolution is
// continuously periodic: Constant iff the stretch between the rightmost
// order-(k+1) letters of phi^{3k+1}(a) and phi^{3k+2}(a) codes to a complete
// final-period tiling.
ComplexityVerdict::Class finite_order_terminal_test(const MorphicSystem& normalized,
                                                    const std::vector<LetterProfile>& profiles,
                                                    const FinalPeriodSet& fps, int k);

// The full decision tree over the normalized system.
ComplexityVerdict classify(const MorphicSystem& s, const ClassifyParams& params = {});

}  // namespace morphan
