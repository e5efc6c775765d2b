#pragma once

#include <optional>

#include "morphan/word.hpp"

namespace morphan {

enum class PeriodMode { WeakLeft, WeakRight, Complete };

// A weakly periodic stretch of a host word, carrying both the left and the
// right period (cyclic shifts of each other).
struct PeriodicSpan {
  Occurrence occurrence;
  std::size_t period_len = 0;
  Word left_period;
  Word right_period;
};

// Cyc_n: rotation so the result begins with word[n mod |word|].
Word cyclic_shift(const Word& word, std::int64_t n);

// True iff `word` tiles with `period` in the given mode. Complete requires
// |word| divisible by |period| as well.
bool is_periodic(const Word& word, const Word& period, PeriodMode mode);

// Smallest weak period p of `word` (p = |word| - border(|word|)); does not
// require 2p <= |word|.
std::size_t smallest_weak_period(const Word& word);

// The minimal period in the given mode: the unique lambda with
// 2|lambda| <= |word|, `word` periodic with lambda in the mode, and no weak
// p-periodicity for p < |lambda|. Absent when no such period exists.
std::optional<Word> minimal_period(const Word& word, PeriodMode mode);

// Checkable form of the divisor corollary: given that `word` is p-periodic in
// `mode` with 2p <= |word|, verifies p % |lambda| == 0 and that the p-period
// is lambda repeated p/|lambda| times.
bool divisor_property_check(const Word& word, std::size_t p, PeriodMode mode);

// Overlap merge: if both spans are weakly periodic in `text` and overlap by
// at least 2*max(p, p'), their union is weakly gcd(p, p')-periodic.
std::optional<PeriodicSpan> merge_overlapping(const Word& text, const PeriodicSpan& span1,
                                              const PeriodicSpan& span2);

// Helper used by span construction: the span over [occ] of `text` with the
// given period length, if it is weakly periodic there.
std::optional<PeriodicSpan> make_span(const Word& text, const Occurrence& occ, std::size_t p);

}  // namespace morphan
