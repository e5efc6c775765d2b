#include "morphan/periodicity.hpp"

#include <numeric>

#include "morphan/errors.hpp"

namespace morphan {

Word cyclic_shift(const Word& word, std::int64_t n) {
  if (word.empty()) throw Error(ErrorKind::EmptyWord, "cyclic_shift of the empty word");
  const std::int64_t len = static_cast<std::int64_t>(word.size());
  std::int64_t r = ((n % len) + len) % len;
  Word out;
  out.reserve(word.size());
  out.insert(out.end(), word.begin() + r, word.end());
  out.insert(out.end(), word.begin(), word.begin() + r);
  return out;
}

bool is_periodic(const Word& word, const Word& period, PeriodMode mode) {
  const std::size_t p = period.size();
  if (p == 0) throw Error(ErrorKind::EmptyWord, "empty period");
  const std::size_t n = word.size();
  if (mode == PeriodMode::Complete && n % p != 0) return false;
  if (mode == PeriodMode::WeakLeft || mode == PeriodMode::Complete) {
    for (std::size_t i = 0; i < n; ++i)
      if (word[i] != period[i % p]) return false;
    return true;
  }
  // WeakRight: incomplete occurrence at the front.
  const std::size_t r = n % p;
  for (std::size_t i = 0; i < n; ++i)
    if (word[i] != period[(i + p - r) % p]) return false;
  return true;
}

std::size_t smallest_weak_period(const Word& word) {
  const std::size_t n = word.size();
  if (n == 0) return 0;
  std::vector<std::size_t> border(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t j = border[i - 1];
    while (j > 0 && word[i] != word[j]) j = border[j - 1];
    if (word[i] == word[j]) ++j;
    border[i] = j;
  }
  return n - border[n - 1];
}

std::optional<Word> minimal_period(const Word& word, PeriodMode mode) {
  const std::size_t n = word.size();
  if (n < 2) return std::nullopt;
  const std::size_t p = smallest_weak_period(word);
  if (2 * p > n) return std::nullopt;
  if (mode == PeriodMode::Complete && n % p != 0) return std::nullopt;
  if (mode == PeriodMode::WeakRight) return Word(word.end() - static_cast<std::ptrdiff_t>(p), word.end());
  return Word(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(p));
}

bool divisor_property_check(const Word& word, std::size_t p, PeriodMode mode) {
  if (p == 0 || 2 * p > word.size())
    throw Error(ErrorKind::Precondition, "divisor check needs 2p <= |word|");
  auto lambda = minimal_period(word, mode == PeriodMode::Complete ? PeriodMode::WeakLeft : mode);
  if (!lambda) throw Error(ErrorKind::Precondition, "word has no minimal period");
  Word delta;
  if (mode == PeriodMode::WeakRight)
    delta.assign(word.end() - static_cast<std::ptrdiff_t>(p), word.end());
  else
    delta.assign(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(p));
  if (!is_periodic(word, delta, mode)) throw Error(ErrorKind::Precondition, "word is not p-periodic");
  if (p % lambda->size() != 0) return false;
  for (std::size_t i = 0; i < p; ++i)
    if (delta[i] != (*lambda)[i % lambda->size()]) return false;
  return true;
}

std::optional<PeriodicSpan> make_span(const Word& text, const Occurrence& occ, std::size_t p) {
  if (p == 0) return std::nullopt;
  if (occ.start < 0 || occ.end >= static_cast<std::int64_t>(text.size()) || occ.empty())
    return std::nullopt;
  Word body(text.begin() + occ.start, text.begin() + occ.end + 1);
  if (body.size() < p) return std::nullopt;
  Word left(body.begin(), body.begin() + static_cast<std::ptrdiff_t>(p));
  if (!is_periodic(body, left, PeriodMode::WeakLeft)) return std::nullopt;
  return PeriodicSpan{occ, p, left, cyclic_shift(left, static_cast<std::int64_t>(body.size()))};
}

std::optional<PeriodicSpan> merge_overlapping(const Word& text, const PeriodicSpan& span1,
                                              const PeriodicSpan& span2) {
  const PeriodicSpan& a = span1.occurrence.start <= span2.occurrence.start ? span1 : span2;
  const PeriodicSpan& b = span1.occurrence.start <= span2.occurrence.start ? span2 : span1;
  // Both spans must really be weakly periodic in text.
  for (const PeriodicSpan* s : {&a, &b}) {
    auto check = make_span(text, s->occurrence, s->period_len);
    if (!check || check->left_period != s->left_period) return std::nullopt;
  }
  const std::int64_t s = std::max(a.occurrence.start, b.occurrence.start);
  const std::int64_t t = std::min(a.occurrence.end, b.occurrence.end);
  const std::int64_t overlap = t - s + 1;
  const std::size_t pmax = std::max(a.period_len, b.period_len);
  if (overlap < 2 * static_cast<std::int64_t>(pmax)) return std::nullopt;
  const std::size_t g = std::gcd(a.period_len, b.period_len);
  Occurrence uni{std::min(a.occurrence.start, b.occurrence.start),
                 std::max(a.occurrence.end, b.occurrence.end)};
  return make_span(text, uni, g);
}

}  // namespace morphan
