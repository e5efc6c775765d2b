#include "morphan/classifier.hpp"

#include <algorithm>

#include "morphan/errors.hpp"
#include "morphan/periodicity.hpp"

namespace morphan {

const char* to_string(FiredRule r) {
  switch (r) {
    case FiredRule::Prop1_2: return "Prop1_2";
    case FiredRule::Prop1_3: return "Prop1_3";
    case FiredRule::Prop1_4: return "Prop1_4";
    case FiredRule::Prop1_5: return "Prop1_5";
    case FiredRule::Prop1_6: return "Prop1_6";
  }
  return "?";
}

std::string ComplexityVerdict::exponent_string() const {
  if (cls != Class::PolyExponent) return "";
  return std::to_string(exponent_num) + "/" + std::to_string(exponent_den);
}

std::string ComplexityVerdict::class_string() const {
  switch (cls) {
    case Class::Constant: return "Constant";
    case Class::PolyExponent: return "PolyExponent";
    case Class::NLogN: return "NLogN";
  }
  return "?";
}

Word bounding_prefix(EvolutionChain& chain, Side side, int length) {
  if (length < 1) throw Error(ErrorKind::Precondition, "length must be >= 1");
  const MorphicSystem& s = chain.system();
  const auto& pr = chain.profiles();
  const int k = chain.block_level();
  chain.ensure_depth(1);
  if (side == Side::Right) {
    if (chain.case_right_I())
      throw Error(ErrorKind::CaseI, "Case I holds at the right; no bounding sequence");
    Letter rb = chain.right_border(1);
    const Word& img = s.image(rb);
    auto lf = boundary_letter(img, pr, k, Side::Left);
    Word d1(img.begin() + static_cast<std::ptrdiff_t>(*lf) + 1, img.end());
    Word d;
    while (1 + static_cast<int>(d.size()) < length) {
      Word next = d1;
      Word img_d = apply_morphism(s, d);
      next.insert(next.end(), img_d.begin(), img_d.end());
      if (next.size() <= d.size())
        throw Error(ErrorKind::Precondition, "bounding sequence stopped growing");
      d = std::move(next);
    }
    Word out{rb};
    out.insert(out.end(), d.begin(), d.end());
    out.resize(static_cast<std::size_t>(length));
    return out;
  }
  if (chain.case_left_I())
    throw Error(ErrorKind::CaseI, "Case I holds at the left; no bounding sequence");
  Letter lb = chain.left_border(1);
  const Word& img = s.image(lb);
  auto rl = boundary_letter(img, pr, k, Side::Right);
  Word g1(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(*rl));
  Word g;
  while (1 + static_cast<int>(g.size()) < length) {
    Word next = apply_morphism(s, g);
    next.insert(next.end(), g1.begin(), g1.end());
    if (next.size() <= g.size())
      throw Error(ErrorKind::Precondition, "bounding sequence stopped growing");
    g = std::move(next);
  }
  Word out = g;
  out.push_back(lb);
  // keep the last `length` letters (the sequence is infinite to the left)
  out.erase(out.begin(), out.end() - length);
  return out;
}

namespace {

struct MemberStructure {
  VSpan lprep, rprep, block;
  std::vector<VSpan> ckers;  // central composite kernels
};

MemberStructure member_structure(EvolutionChain& chain, int l) {
  ChainAnatomy a = chain.anatomy(l);
  KernelSet ck = chain.central_kernels(l);
  return {a.left_preperiod, a.right_preperiod, a.block, ck.composite};
}

Word psi_slice(EvolutionChain& chain, int l, VSpan span) {
  const Word& v = chain.member_v(l);
  Word out;
  for (std::int32_t p = span.lo; p <= span.hi; ++p)
    out.push_back(chain.system().code(v[static_cast<std::size_t>(p)]));
  return out;
}

// Weak periodicity with constant residue over a sequence of psi-words.
bool weakly_periodic_window(const std::vector<Word>& words, const Word& lambda, Side side,
                            std::int64_t* residue_out) {
  std::optional<std::int64_t> residue;
  for (const Word& w : words) {
    if (!w.empty() &&
        !is_periodic(w, lambda, side == Side::Left ? PeriodMode::WeakLeft : PeriodMode::WeakRight))
      return false;
    std::int64_t r = static_cast<std::int64_t>(w.size() % lambda.size());
    if (residue && *residue != r) return false;
    residue = r;
  }
  if (residue_out) *residue_out = residue.value_or(0);
  return true;
}

}  // namespace

bool weak_evolutional_period(EvolutionChain& chain, int first_member, int window, int m, int m2,
                             const Word& lambda, Side side) {
  if (window < 3) throw Error(ErrorKind::WindowTooSmall, "window must cover >= 3 members");
  const int k = chain.block_level();
  std::vector<Word> words;
  for (int l = first_member; l < first_member + window; ++l) {
    const Word& v = chain.member_v(l);
    VSpan block{1, static_cast<std::int32_t>(v.size()) - 2};
    KernelSet ks = chain.kernels(l, k, block, true, true);
    const int nker = static_cast<int>(ks.composite.size());
    if (m < 0 || m2 <= m || m2 > nker + 1)
      throw Error(ErrorKind::Precondition, "kernel indices out of range");
    std::int32_t lo = m == 0 ? block.lo : ks.composite[static_cast<std::size_t>(m - 1)].hi + 1;
    std::int32_t hi = m2 == nker + 1 ? block.hi : ks.composite[static_cast<std::size_t>(m2 - 1)].lo - 1;
    words.push_back(psi_slice(chain, l, {lo, hi}));
  }
  return weakly_periodic_window(words, lambda, side, nullptr);
}

std::optional<PeriodWitness> continuous_period_check(EvolutionChain& chain,
                                                     const FinalPeriodSet& fps, int m,
                                                     const ClassifyParams& params) {
  if (params.window < 3) throw Error(ErrorKind::WindowTooSmall, "window must cover >= 3 members");
  if (fps.empty()) throw Error(ErrorKind::Precondition, "no final periods available");
  const int k = chain.block_level();
  const int first = 3 * k;
  chain.ensure_depth(first + params.window - 1);

  std::vector<MemberStructure> ms;
  for (int l = first; l < first + params.window; ++l) ms.push_back(member_structure(chain, l));
  const int ncker = static_cast<int>(ms.front().ckers.size());
  for (const auto& st : ms)
    if (static_cast<int>(st.ckers.size()) != ncker)
      throw Error(ErrorKind::Precondition, "central kernel count varies along the evolution");
  if (m < 1 || m > ncker) throw Error(ErrorKind::Precondition, "kernel index out of range");

  const bool case_l = chain.case_left_I();
  const bool case_r = chain.case_right_I();

  std::vector<Word> left_words, right_words;
  for (const auto& st : ms) {
    const VSpan& ck = st.ckers[static_cast<std::size_t>(m - 1)];
    left_words.push_back(psi_slice(chain, first + static_cast<int>(&st - ms.data()),
                                   {st.lprep.hi + 1, ck.lo - 1}));
    right_words.push_back(psi_slice(chain, first + static_cast<int>(&st - ms.data()),
                                    {ck.hi + 1, st.rprep.lo - 1}));
  }

  std::optional<Word> left_period;
  std::int64_t left_residue = 0;
  for (const Word& lambda : fps.periods) {
    if (!weakly_periodic_window(left_words, lambda, Side::Left, &left_residue)) continue;
    if (!case_l && m > 1) {
      Word mat = bounding_prefix(chain, Side::Left, params.horizon);
      Word coded;
      for (Letter c : mat) coded.push_back(chain.system().code(c));
      // A left-infinite periodic word ends with complete copies of lambda.
      if (!is_periodic(coded, lambda, PeriodMode::WeakRight)) continue;
    }
    left_period = lambda;
    break;
  }
  if (!left_period) return std::nullopt;

  std::optional<Word> right_period;
  std::int64_t right_residue = 0;
  for (const Word& mu : fps.periods) {
    if (!weakly_periodic_window(right_words, mu, Side::Right, &right_residue)) continue;
    if (!case_r && m < ncker) {
      Word mat = bounding_prefix(chain, Side::Right, params.horizon);
      Word coded;
      for (Letter c : mat) coded.push_back(chain.system().code(c));
      if (!is_periodic(coded, mu, PeriodMode::WeakLeft)) continue;
    }
    right_period = mu;
    break;
  }
  if (!right_period) return std::nullopt;

  PeriodWitness w;
  w.index_m = m;
  w.left_period = *left_period;
  w.right_period = *right_period;
  w.residue_left = left_residue;
  w.residue_right = right_residue;
  w.window = params.window;
  w.horizon = params.horizon;
  return w;
}

std::pair<bool, std::optional<PeriodWitness>> is_continuously_periodic(EvolutionChain& chain,
                                                                       const FinalPeriodSet& fps,
                                                                       const ClassifyParams& params) {
  const int k = chain.block_level();
  chain.ensure_depth(3 * k + params.window - 1);
  KernelSet ck = chain.central_kernels(3 * k);
  const int ncker = static_cast<int>(ck.composite.size());
  for (int m = 1; m <= ncker; ++m) {
    auto w = continuous_period_check(chain, fps, m, params);
    if (w) return {true, w};
  }
  return {false, std::nullopt};
}

ComplexityVerdict::Class finite_order_terminal_test(const MorphicSystem& normalized,
                                                    const std::vector<LetterProfile>& profiles,
                                                    const FinalPeriodSet& fps, int k) {
  const int axiom_order = profiles[static_cast<std::size_t>(normalized.axiom)].order;
  if (axiom_order != k + 2)
    throw Error(ErrorKind::Precondition, "terminal test needs an axiom of order k+2");
  BigInt n1b = growth_count(normalized, normalized.axiom, 3 * k + 1);
  BigInt n2b = growth_count(normalized, normalized.axiom, 3 * k + 2);
  if (n2b > BigInt(1) << 28)
    throw Error(ErrorKind::PrefixTooShort, "phi^{3k+2}(a) too large to materialize");
  const std::int64_t n1 = static_cast<std::int64_t>(n1b);
  const std::int64_t n2 = static_cast<std::int64_t>(n2b);
  ProvenancePrefix pre = generate_prefix(normalized, n2);
  auto rightmost = [&](std::int64_t limit) {
    for (std::int64_t p = limit - 1; p >= 0; --p)
      if (profiles[static_cast<std::size_t>(pre.at(p))].order == k + 1) return p;
    throw Error(ErrorKind::Precondition, "no letter of order k+1 in the prefix");
  };
  std::int64_t i = rightmost(n1);
  std::int64_t j = rightmost(n2);
  Word stretch = apply_coding(normalized, pre.slice({i + 1, j}));
  for (const Word& lambda : fps.periods)
    if (is_periodic(stretch, lambda, PeriodMode::Complete))
      return ComplexityVerdict::Class::Constant;
  return ComplexityVerdict::Class::PolyExponent;
}

namespace {

struct CpSweep {
  bool all_ok = true;
  std::string failing_id;
  std::vector<ComplexityVerdict::EvoSummary> summaries;
};

CpSweep check_level_k(const MorphicSystem& nsys, const std::vector<LetterProfile>& profiles,
                      const FinalPeriodSet& fps, int k, const ClassifyParams& params) {
  CpSweep sweep;
  auto tuples = origin_closure(nsys, profiles, k);
  int idx = 0;
  for (const OriginTuple& t : tuples) {
    EvolutionChain chain(nsys, profiles, k, t);
    auto [ok, witness] = is_continuously_periodic(chain, fps, params);
    ComplexityVerdict::EvoSummary sum;
    sum.k = k;
    sum.id = "k" + std::to_string(k) + ".t" + std::to_string(idx++);
    sum.origin = t;
    sum.case_left_I = chain.case_left_I();
    sum.case_right_I = chain.case_right_I();
    sum.ncker = static_cast<int>(chain.central_kernels(3 * k).composite.size());
    sum.continuously_periodic = ok;
    sum.witness = witness;
    if (!ok && sweep.all_ok) {
      sweep.all_ok = false;
      sweep.failing_id = sum.id;
    }
    sweep.summaries.push_back(std::move(sum));
  }
  return sweep;
}

}  // namespace

ComplexityVerdict classify(const MorphicSystem& s, const ClassifyParams& params) {
  NormalizeOptions nopts;
  nopts.power_budget = params.normalize_budget;
  auto [nsys, report] = normalize(s, nopts);
  auto profiles = letter_profiles(nsys);
  FinalPeriodSet fps = compute_final_periods(nsys, profiles);

  ComplexityVerdict v;
  v.horizons = params;
  v.normalize_power = report.power;
  const int axiom_order = profiles[static_cast<std::size_t>(nsys.axiom)].order;
  v.axiom_order_finite = axiom_order != kOrderInfinite;

  if (axiom_order == 2) {
    v.cls = ComplexityVerdict::Class::Constant;
    v.fired_rule = FiredRule::Prop1_5;
    return v;
  }

  // Maximal k in [1, k_hi] with every k-evolution continuously periodic, plus
  // the failing evolution at k*+1 when one exists.
  auto sweep_range = [&](int k_hi) {
    int k_star = 0;
    std::string counterexample_id;
    int counterexample_k = 0;
    for (int k = 1; k <= k_hi; ++k) {
      CpSweep sw = check_level_k(nsys, profiles, fps, k, params);
      v.evolutions.insert(v.evolutions.end(), sw.summaries.begin(), sw.summaries.end());
      if (sw.all_ok) k_star = k;
    }
    for (int k = k_star + 1; k <= k_hi; ++k) {
      for (const auto& sum : v.evolutions)
        if (sum.k == k && !sum.continuously_periodic) {
          counterexample_id = sum.id;
          counterexample_k = k;
          break;
        }
      if (!counterexample_id.empty()) break;
    }
    return std::tuple{k_star, counterexample_id, counterexample_k};
  };

  // Every evolution of 1-blocks is continuously periodic, so k_star >= 1
  // whenever the range is nonempty; 0 would indicate a checker defect.
  auto guard_k_star = [](int k_star) {
    if (k_star < 1)
      throw Error(ErrorKind::Precondition, "1-block evolutions must be continuously periodic");
  };

  if (axiom_order != kOrderInfinite) {
    const int K = axiom_order;
    auto [k_star, cex_id, cex_k] = sweep_range(K - 2);
    guard_k_star(k_star);
    v.k_star = k_star;
    if (k_star < K - 2) {
      v.cls = ComplexityVerdict::Class::PolyExponent;
      v.exponent_num = k_star + 1;
      v.exponent_den = k_star;
      v.fired_rule = FiredRule::Prop1_2;
      v.counterexample = {cex_id, cex_k};
      return v;
    }
    v.cls = finite_order_terminal_test(nsys, profiles, fps, K - 2);
    v.fired_rule = FiredRule::Prop1_4;
    if (v.cls == ComplexityVerdict::Class::PolyExponent) {
      v.exponent_num = K - 1;
      v.exponent_den = K - 2;
    }
    return v;
  }

  // Infinite-order axiom: K = max finite order among letters occurring in alpha.
  auto reach = reachable_letters(nsys);
  int K = 0;
  for (std::size_t b = 0; b < nsys.size(); ++b)
    if (reach[b] && profiles[b].order != kOrderInfinite) K = std::max(K, profiles[b].order);
  if (K == 0) {
    auto [k_star, cex_id, cex_k] = sweep_range(1);
    guard_k_star(k_star);
    v.k_star = k_star;
    v.infinite_axiom_no_finite_letters = true;
    v.cls = ComplexityVerdict::Class::NLogN;
    v.fired_rule = FiredRule::Prop1_6;
    return v;
  }
  auto [k_star, cex_id, cex_k] = sweep_range(K + 1);
  guard_k_star(k_star);
  v.k_star = k_star;
  if (k_star < K + 1) {
    v.cls = ComplexityVerdict::Class::PolyExponent;
    v.exponent_num = k_star + 1;
    v.exponent_den = k_star;
    v.fired_rule = FiredRule::Prop1_2;
    v.counterexample = {cex_id, cex_k};
    return v;
  }
  v.cls = ComplexityVerdict::Class::NLogN;
  v.fired_rule = FiredRule::Prop1_6;
  return v;
}

}  // namespace morphan
