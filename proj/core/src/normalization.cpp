#include "morphan/normalization.hpp"

#include <algorithm>
#include <set>

#include "morphan/errors.hpp"
#include "morphan/periodicity.hpp"

namespace morphan {

namespace {

bool has_periodic_of_order(const std::vector<LetterProfile>& profiles, int k) {
  for (const auto& p : profiles)
    if (p.order == k && p.periodicity == Periodicity::Periodic) return true;
  return false;
}

std::string fresh_name(const Alphabet& a, const std::string& base) {
  std::string name = base;
  while (a.id_of(name) >= 0) name += '\'';
  return name;
}

}  // namespace

std::pair<MorphicSystem, std::vector<std::pair<Letter, AddedRole>>> augment_alphabet(
    const MorphicSystem& s, const std::vector<LetterProfile>& profiles) {
  MorphicSystem out = s;
  std::vector<std::pair<Letter, AddedRole>> added;
  auto prof = profiles;

  if (!has_periodic_of_order(prof, 1)) {
    Letter b = out.alphabet.add(fresh_name(out.alphabet, "$1"));
    out.phi.push_back({b});
    out.psi.push_back(b);
    added.emplace_back(b, AddedRole::Order1);
    prof = letter_profiles(out);
  }
  if (!has_periodic_of_order(prof, 2)) {
    Letter b1 = -1;
    for (const auto& p : prof)
      if (p.order == 1 && p.periodicity == Periodicity::Periodic) {
        b1 = p.letter;
        break;
      }
    Letter c = out.alphabet.add(fresh_name(out.alphabet, "$2"));
    out.phi.push_back({b1, c});
    out.psi.push_back(c);
    added.emplace_back(c, AddedRole::Order2);
  }
  out.max_image_len = 0;
  for (const auto& img : out.phi) out.max_image_len = std::max(out.max_image_len, img.size());
  return {out, added};
}

namespace {

bool weakly_1_periodic(const MorphicSystem& s, const std::vector<LetterProfile>& pr) {
  for (std::size_t b = 0; b < s.size(); ++b) {
    const auto& p = pr[b];
    if (p.order == kOrderInfinite) continue;
    int count_same_order = 0;
    bool all_periodic = true;
    bool self_seen = false;
    for (Letter c : s.phi[b]) {
      if (pr[static_cast<std::size_t>(c)].order != p.order) continue;
      ++count_same_order;
      if (pr[static_cast<std::size_t>(c)].periodicity != Periodicity::Periodic) all_periodic = false;
      if (c == static_cast<Letter>(b)) self_seen = true;
    }
    if (p.periodicity == Periodicity::Preperiodic) {
      if (!all_periodic) return false;
    } else {
      if (count_same_order != 1 || !self_seen) return false;
    }
  }
  return true;
}

bool strongly_1_periodic(const MorphicSystem& s, const std::vector<LetterProfile>& pr) {
  int maxfin = std::max(1, max_finite_order(pr));
  auto step = [&](Letter x, int k, Side side) -> Letter {
    auto pos = boundary_letter(s.image(x), pr, k, side);
    return pos ? s.image(x)[*pos] : -1;  // image of an order>k letter always has one
  };
  const int horizon = 2 * static_cast<int>(s.size());
  for (int k = 1; k <= maxfin; ++k) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (!(pr[b].order > k)) continue;
      for (Side side : {Side::Left, Side::Right}) {
        Letter x = step(static_cast<Letter>(b), k, side);
        for (int t = 1; t < horizon; ++t) {
          Letter y = step(x, k, side);
          if (y != x) return false;
          x = y;
        }
      }
    }
  }
  return true;
}

// Fringe gamma beside a self-reproducing border on the given side, or
// nullopt when the letter does not qualify.
std::optional<Word> fringe(const MorphicSystem& s, const std::vector<LetterProfile>& pr, Letter b,
                           Side side) {
  const Word& img = s.image(b);
  auto pos = boundary_letter(img, pr, 1, side);
  if (!pos || img[*pos] != b) return std::nullopt;
  if (side == Side::Left) return Word(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(*pos));
  return Word(img.begin() + static_cast<std::ptrdiff_t>(*pos) + 1, img.end());
}

}  // namespace

FinalPeriodSet compute_final_periods(const MorphicSystem& s,
                                     const std::vector<LetterProfile>& profiles) {
  std::set<Word> out;
  for (std::size_t b = 0; b < s.size(); ++b) {
    for (Side side : {Side::Left, Side::Right}) {
      auto gamma = fringe(s, profiles, static_cast<Letter>(b), side);
      if (!gamma || gamma->empty()) continue;
      Word coded = apply_coding(s, apply_morphism(s, *gamma));
      Word doubled = concat(coded, coded);
      auto lambda = minimal_period(doubled, PeriodMode::Complete);
      if (!lambda)
        throw Error(ErrorKind::MissingMinimalPeriod,
                    "doubled fringe image has no minimal complete period");
      for (std::size_t r = 0; r < lambda->size(); ++r)
        out.insert(cyclic_shift(*lambda, static_cast<std::int64_t>(r)));
    }
  }
  FinalPeriodSet fps;
  fps.periods.assign(out.begin(), out.end());
  for (const auto& w : fps.periods) fps.L = std::max(fps.L, w.size());
  return fps;
}

LevelFlags check_level(const MorphicSystem& s, const std::vector<LetterProfile>& profiles) {
  LevelFlags f;
  f.weakly_1_periodic = weakly_1_periodic(s, profiles);
  f.strongly_1_periodic = f.weakly_1_periodic && strongly_1_periodic(s, profiles);
  if (f.strongly_1_periodic) {
    FinalPeriodSet fps = compute_final_periods(s, profiles);
    bool ok = true;
    for (std::size_t b = 0; b < s.size() && ok; ++b)
      for (Side side : {Side::Left, Side::Right}) {
        auto gamma = fringe(s, profiles, static_cast<Letter>(b), side);
        if (gamma && !gamma->empty() && gamma->size() < 2 * fps.L) ok = false;
      }
    f.long_images = ok;
  }
  return f;
}

std::pair<MorphicSystem, NormalizationReport> normalize(const MorphicSystem& s,
                                                        const NormalizeOptions& opts) {
  auto base_profiles = letter_profiles(s);
  auto [aug, added] = augment_alphabet(s, base_profiles);
  for (int n = 1; n <= opts.power_budget; ++n) {
    MorphicSystem sn = morphism_power(aug, n);
    auto pr = letter_profiles(sn);
    LevelFlags flags = check_level(sn, pr);
    if (flags.all()) {
      NormalizationReport rep;
      rep.power = n;
      rep.added_letters = added;
      rep.flags = flags;
      return {std::move(sn), rep};
    }
  }
  throw Error(ErrorKind::SearchBudgetExceeded,
              "no normalizing power within budget " + std::to_string(opts.power_budget));
}

}  // namespace morphan
