#include "morphan/complexity.hpp"

#include <algorithm>
#include <cmath>

#include "morphan/errors.hpp"

namespace morphan {

std::int32_t SuffixAutomaton::transition(std::int32_t v, Letter c) const {
  const auto& next = states_[static_cast<std::size_t>(v)].next;
  auto it = std::lower_bound(next.begin(), next.end(), c,
                             [](const auto& e, Letter x) { return e.first < x; });
  return (it != next.end() && it->first == c) ? it->second : -1;
}

void SuffixAutomaton::set_transition(std::int32_t v, Letter c, std::int32_t to) {
  auto& next = states_[static_cast<std::size_t>(v)].next;
  auto it = std::lower_bound(next.begin(), next.end(), c,
                             [](const auto& e, Letter x) { return e.first < x; });
  if (it != next.end() && it->first == c)
    it->second = to;
  else
    next.insert(it, {c, to});
}

SuffixAutomaton::SuffixAutomaton(const Word& word) {
  states_.reserve(2 * word.size() + 2);
  states_.push_back({});  // initial
  last_ = 0;
  for (Letter c : word) {
    std::int32_t cur = static_cast<std::int32_t>(states_.size());
    states_.push_back({});
    states_[static_cast<std::size_t>(cur)].len = states_[static_cast<std::size_t>(last_)].len + 1;
    std::int32_t p = last_;
    while (p >= 0 && transition(p, c) < 0) {
      set_transition(p, c, cur);
      p = states_[static_cast<std::size_t>(p)].link;
    }
    if (p < 0) {
      states_[static_cast<std::size_t>(cur)].link = 0;
    } else {
      std::int32_t q = transition(p, c);
      if (states_[static_cast<std::size_t>(p)].len + 1 == states_[static_cast<std::size_t>(q)].len) {
        states_[static_cast<std::size_t>(cur)].link = q;
      } else {
        std::int32_t clone = static_cast<std::int32_t>(states_.size());
        states_.push_back(states_[static_cast<std::size_t>(q)]);
        states_[static_cast<std::size_t>(clone)].len = states_[static_cast<std::size_t>(p)].len + 1;
        while (p >= 0 && transition(p, c) == q) {
          set_transition(p, c, clone);
          p = states_[static_cast<std::size_t>(p)].link;
        }
        states_[static_cast<std::size_t>(q)].link = clone;
        states_[static_cast<std::size_t>(cur)].link = clone;
      }
    }
    last_ = cur;
  }
}

std::vector<std::int64_t> SuffixAutomaton::counts_up_to(std::int64_t max_n) const {
  // Each state covers lengths (len(link), len]; a difference array turns the
  // per-state ranges into p(n) for every n at once.
  std::vector<std::int64_t> diff(static_cast<std::size_t>(max_n) + 2, 0);
  for (std::size_t v = 1; v < states_.size(); ++v) {
    std::int64_t lo = states_[static_cast<std::size_t>(states_[v].link)].len + 1;
    std::int64_t hi = std::min<std::int64_t>(states_[v].len, max_n);
    if (lo > hi) continue;
    diff[static_cast<std::size_t>(lo)] += 1;
    diff[static_cast<std::size_t>(hi) + 1] -= 1;
  }
  std::vector<std::int64_t> out(static_cast<std::size_t>(max_n) + 1, 0);
  std::int64_t run = 0;
  for (std::int64_t n = 1; n <= max_n; ++n) {
    run += diff[static_cast<std::size_t>(n)];
    out[static_cast<std::size_t>(n)] = run;
  }
  return out;
}

ComplexityTable factor_counts(const Word& word, const std::vector<std::int64_t>& ns,
                              const FactorCountOptions& opts) {
  if (ns.empty()) throw Error(ErrorKind::Precondition, "no lengths requested");
  std::int64_t max_n = *std::max_element(ns.begin(), ns.end());
  if (max_n < 1) throw Error(ErrorKind::Precondition, "lengths must be >= 1");
  if (!opts.override_guard && max_n > static_cast<std::int64_t>(word.size()) / opts.guard_divisor)
    throw Error(ErrorKind::Range, "n = " + std::to_string(max_n) + " exceeds |word|/" +
                                      std::to_string(opts.guard_divisor) +
                                      " truncation guard (use the override to force)");
  if (max_n > static_cast<std::int64_t>(word.size()))
    throw Error(ErrorKind::Range, "n exceeds the word length");
  SuffixAutomaton sam(word);
  auto all = sam.counts_up_to(max_n);
  ComplexityTable t;
  t.prefix_len = static_cast<std::int64_t>(word.size());
  std::vector<std::int64_t> sorted_ns = ns;
  std::sort(sorted_ns.begin(), sorted_ns.end());
  sorted_ns.erase(std::unique(sorted_ns.begin(), sorted_ns.end()), sorted_ns.end());
  for (std::int64_t n : sorted_ns) t.entries.emplace_back(n, all[static_cast<std::size_t>(n)]);
  return t;
}

ExponentFit fit_exponent(const ComplexityTable& table, std::int64_t n_lo, std::int64_t n_hi) {
  std::vector<std::pair<double, double>> pts;
  for (auto [n, p] : table.entries) {
    if (n < n_lo || n > n_hi) continue;
    if (p < 2) throw Error(ErrorKind::InsufficientData, "p_n must be >= 2 for a log-log fit");
    pts.emplace_back(std::log(static_cast<double>(n)), std::log(static_cast<double>(p)));
  }
  if (pts.size() < 3) throw Error(ErrorKind::InsufficientData, "need >= 3 entries in range");
  double xm = 0, ym = 0;
  for (auto [x, y] : pts) {
    xm += x;
    ym += y;
  }
  xm /= static_cast<double>(pts.size());
  ym /= static_cast<double>(pts.size());
  double num = 0, den = 0;
  for (auto [x, y] : pts) {
    num += (x - xm) * (y - ym);
    den += (x - xm) * (x - xm);
  }
  ExponentFit fit;
  fit.n_lo = n_lo;
  fit.n_hi = n_hi;
  fit.points = static_cast<int>(pts.size());
  fit.slope = num / den;
  fit.intercept = ym - fit.slope * xm;
  for (auto [x, y] : pts) {
    double e = y - (fit.intercept + fit.slope * x);
    fit.residual += e * e;
  }
  return fit;
}

CrossCheckReport cross_check(const ComplexityVerdict& verdict, const ComplexityTable& table,
                             const Tolerances& tol) {
  CrossCheckReport rep;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    rep.items.push_back({name, pass, detail});
    rep.pass = rep.pass && pass;
  };

  if (verdict.cls == ComplexityVerdict::Class::Constant) {
    bool flat = true;
    std::int64_t p0 = table.entries.empty() ? 0 : table.entries.front().second;
    for (auto [n, p] : table.entries)
      if (p != p0) flat = false;
    add("constant-table", flat,
        "p_n " + std::string(flat ? "equal" : "varies") + " across the tested range");
    return rep;
  }

  // Drop truncation-saturated entries before fitting.
  ComplexityTable pruned;
  pruned.prefix_len = table.prefix_len;
  for (auto [n, p] : table.entries) {
    double windows = static_cast<double>(table.prefix_len - n + 1);
    if (static_cast<double>(p) > tol.saturation_fraction * windows) {
      ++rep.dropped_saturated;
      continue;
    }
    pruned.entries.emplace_back(n, p);
  }
  if (pruned.entries.size() < 3) {
    add("fit", false, "fewer than 3 unsaturated entries");
    return rep;
  }
  ExponentFit fit =
      fit_exponent(pruned, pruned.entries.front().first, pruned.entries.back().first);
  rep.slope = fit.slope;
  rep.fitted_points = fit.points;

  if (verdict.cls == ComplexityVerdict::Class::PolyExponent) {
    const double e = verdict.exponent();
    bool upper = fit.slope <= e + tol.tol_slope;
    add("poly-upper-bound", upper,
        "slope " + std::to_string(fit.slope) + " <= " + std::to_string(e + tol.tol_slope));
    if (verdict.axiom_order_finite) {
      bool lower = fit.slope >= e - tol.tol_slope;
      add("poly-lower-bound", lower,
          "slope " + std::to_string(fit.slope) + " >= " + std::to_string(e - tol.tol_slope));
    } else {
      add("poly-lower-bound", true,
          "not empirically checkable: exponential growth puts the obstacle onset beyond any "
          "feasible prefix; slope recorded as " + std::to_string(fit.slope));
    }
    return rep;
  }

  // NLogN: slope close to 1 and p_n/n nondecreasing (weak heuristic).
  bool slope_ok = fit.slope <= 1.0 + tol.tol_log;
  add("nlogn-slope", slope_ok,
      "slope " + std::to_string(fit.slope) + " <= " + std::to_string(1.0 + tol.tol_log));
  bool mono = true;
  for (std::size_t x = 0; x + 1 < pruned.entries.size(); ++x) {
    auto [n1, p1] = pruned.entries[x];
    auto [n2, p2] = pruned.entries[x + 1];
    if (p1 * n2 > p2 * n1) mono = false;  // p1/n1 > p2/n2
  }
  add("nlogn-superlinear", mono, std::string("p_n/n ") + (mono ? "nondecreasing" : "decreases"));
  return rep;
}

}  // namespace morphan
