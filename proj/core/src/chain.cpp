#include "morphan/chain.hpp"

#include <algorithm>
#include <set>

#include "morphan/errors.hpp"

namespace morphan {

std::vector<OriginTuple> origin_closure(const MorphicSystem& s,
                                        const std::vector<LetterProfile>& profiles, int k) {
  std::set<OriginTuple> out;
  auto reach = reachable_letters(s);
  for (std::size_t b = 0; b < s.size(); ++b) {
    if (!reach[b] || !(profiles[b].order > k)) continue;
    const Word& img = s.phi[b];
    std::vector<std::int64_t> gt;
    for (std::size_t p = 0; p < img.size(); ++p)
      if (profiles[static_cast<std::size_t>(img[p])].order > k) gt.push_back(static_cast<std::int64_t>(p));
    for (std::size_t x = 0; x + 1 < gt.size(); ++x) {
      OriginTuple t;
      t.lb = img[static_cast<std::size_t>(gt[x])];
      t.rb = img[static_cast<std::size_t>(gt[x + 1])];
      t.w0.assign(img.begin() + gt[x] + 1, img.begin() + gt[x + 1]);
      out.insert(std::move(t));
    }
  }
  return {out.begin(), out.end()};
}

EvolutionChain::EvolutionChain(const MorphicSystem& s, const std::vector<LetterProfile>& profiles,
                               int k, OriginTuple origin)
    : s_(s), profiles_(profiles), k_(k), origin_(std::move(origin)) {
  Member m0;
  m0.v.push_back(origin_.lb);
  m0.v.insert(m0.v.end(), origin_.w0.begin(), origin_.w0.end());
  m0.v.push_back(origin_.rb);
  members_.push_back(std::move(m0));
}

void EvolutionChain::ensure_depth(int member) {
  while (depth() < member) step();
}

Word EvolutionChain::member_word(int m) const {
  const Word& v = member_v(m);
  return Word(v.begin() + 1, v.end() - 1);
}

void EvolutionChain::step() {
  Member& cur = members_.back();
  const Word& v = cur.v;
  const Word& fl = s_.image(v.front());
  const Word& fr = s_.image(v.back());

  std::int32_t rL = -1;
  for (std::size_t p = fl.size(); p-- > 0;)
    if (order_of(fl[p]) > k_) {
      rL = static_cast<std::int32_t>(p);
      break;
    }
  std::int32_t lF = -1;
  for (std::size_t p = 0; p < fr.size(); ++p)
    if (order_of(fr[p]) > k_) {
      lF = static_cast<std::int32_t>(p);
      break;
    }
  // Images of order>k letters always contain an order>k letter.
  if (rL < 0 || lF < 0) throw Error(ErrorKind::Precondition, "border image lost its high letter");

  Member next;
  next.v.insert(next.v.end(), fl.begin() + rL, fl.end());
  cur.img_start.assign(v.size(), 0);
  cur.img_start[0] = 0;
  for (std::size_t q = 1; q + 1 < v.size(); ++q) {
    cur.img_start[q] = static_cast<std::int32_t>(next.v.size());
    const Word& img = s_.image(v[q]);
    next.v.insert(next.v.end(), img.begin(), img.end());
  }
  cur.img_start[v.size() - 1] = static_cast<std::int32_t>(next.v.size());
  next.v.insert(next.v.end(), fr.begin(), fr.begin() + lF + 1);

  cur.parent.assign(next.v.size(), 0);
  for (std::size_t q = 0; q < v.size(); ++q) {
    std::int32_t a = cur.img_start[q];
    std::int32_t b = (q + 1 < v.size()) ? cur.img_start[q + 1] - 1
                                        : static_cast<std::int32_t>(next.v.size()) - 1;
    for (std::int32_t p = a; p <= b; ++p) cur.parent[static_cast<std::size_t>(p)] = static_cast<std::int32_t>(q);
  }
  members_.push_back(std::move(next));
  // Level block lists extend lazily in extend_level().
}

VSpan EvolutionChain::img_range(int m, std::int32_t q) const {
  const Member& mem = members_[static_cast<std::size_t>(m)];
  std::int32_t a = mem.img_start[static_cast<std::size_t>(q)];
  std::int32_t b;
  if (static_cast<std::size_t>(q) + 1 < mem.v.size())
    b = mem.img_start[static_cast<std::size_t>(q) + 1] - 1;
  else
    b = static_cast<std::int32_t>(members_[static_cast<std::size_t>(m) + 1].v.size()) - 1;
  return {a, b};
}

VSpan EvolutionChain::img_range_d(int m, std::int32_t q, int d) const {
  VSpan r{q, q};
  for (int t = 0; t < d; ++t) {
    VSpan lo = img_range(m + t, r.lo);
    VSpan hi = img_range(m + t, r.hi);
    r = {lo.lo, hi.hi};
  }
  return r;
}

void EvolutionChain::extend_level(int kk) {
  auto& lv = levels_[kk];
  while (lv.size() < members_.size()) {
    std::size_t m = lv.size();
    LevelMember out;
    const Word& v = members_[m].v;
    std::int32_t lastgt = -1;
    for (std::size_t p = 0; p < v.size(); ++p) {
      if (order_of(v[p]) > kk) {
        if (lastgt >= 0) {
          LevelBlock b{lastgt + 1, static_cast<std::int32_t>(p) - 1, 0, -1};
          out.by_key[{b.i, b.j}] = static_cast<std::int32_t>(out.blocks.size());
          out.blocks.push_back(b);
        }
        lastgt = static_cast<std::int32_t>(p);
      }
    }
    if (m == 0) {
      // Member-0 blocks sit inside the image of a single letter: all origins.
      for (auto& b : out.blocks) b.seq = 0;
    } else {
      const auto& pv = lv[m - 1];
      const auto& par = members_[m - 1].parent;
      for (auto& b : out.blocks) {
        std::int32_t p1 = par[static_cast<std::size_t>(b.i - 1)];
        std::int32_t p2 = par[static_cast<std::size_t>(b.j + 1)];
        if (p1 == p2) {
          b.seq = 0;
          b.anc = -1;
        } else {
          auto it = pv.by_key.find({p1 + 1, p2 - 1});
          if (it == pv.by_key.end())
            throw Error(ErrorKind::Precondition, "chain lineage lost an ancestor block");
          b.anc = it->second;
          b.seq = pv.blocks[static_cast<std::size_t>(it->second)].seq + 1;
        }
      }
    }
    lv.push_back(std::move(out));
  }
}

EvolutionChain::LevelMember& EvolutionChain::level(int kk, int m) {
  ensure_depth(m);
  extend_level(kk);
  return levels_[kk][static_cast<std::size_t>(m)];
}

void EvolutionChain::cum_bounds(int kk, int m, std::int32_t bi, std::vector<std::int32_t>& r,
                                std::vector<std::int32_t>& s) {
  // Ancestor chain of the block, from its origin member up to m.
  std::vector<std::int32_t> chain;  // block index per member m-L..m
  {
    std::int32_t cur = bi;
    int mm = m;
    chain.push_back(cur);
    while (true) {
      const LevelBlock& b = levels_[kk][static_cast<std::size_t>(mm)].blocks[static_cast<std::size_t>(cur)];
      if (b.anc < 0) break;
      cur = b.anc;
      --mm;
      chain.push_back(cur);
    }
    std::reverse(chain.begin(), chain.end());
  }
  const LevelBlock& blk = levels_[kk][static_cast<std::size_t>(m)].blocks[static_cast<std::size_t>(bi)];
  const int L = blk.seq;
  const Word& v = members_[static_cast<std::size_t>(m)].v;
  r.assign(1, blk.i - 1);
  s.assign(1, blk.j + 1);
  for (int d = 1; d <= L; ++d) {
    int am = m - d;
    const LevelBlock& anc =
        levels_[kk][static_cast<std::size_t>(am)].blocks[static_cast<std::size_t>(chain[static_cast<std::size_t>(L - d)])];
    VSpan left = img_range_d(am, anc.i - 1, d);
    std::int32_t rd = blk.i - 1;
    for (std::int32_t p = left.hi; p > blk.i - 1; --p)
      if (order_of(v[static_cast<std::size_t>(p)]) == kk) {
        rd = p;
        break;
      }
    r.push_back(rd);
    VSpan right = img_range_d(am, anc.j + 1, d);
    std::int32_t sd = blk.j + 1;
    for (std::int32_t p = right.lo; p < blk.j + 1; ++p)
      if (order_of(v[static_cast<std::size_t>(p)]) == kk) {
        sd = p;
        break;
      }
    s.push_back(sd);
  }
}

ChainAnatomy EvolutionChain::anatomy_of_block(int kk, int m, std::int32_t bi) {
  const LevelBlock blk = levels_[kk][static_cast<std::size_t>(m)].blocks[static_cast<std::size_t>(bi)];
  const int L = blk.seq;
  if (L < 3 * kk)
    throw Error(ErrorKind::NotStable, "anatomy of an unstable block (seq " + std::to_string(L) +
                                          " < " + std::to_string(3 * kk) + ")");
  ChainAnatomy a;
  a.member = L;
  a.block = {blk.i, blk.j};
  cum_bounds(kk, m, bi, a.cum_r, a.cum_s);
  const auto& r = a.cum_r;
  const auto& s = a.cum_s;
  const int pp = 3 * kk - 2;
  a.left_preperiod = {blk.i, r[static_cast<std::size_t>(pp)]};
  a.right_preperiod = {s[static_cast<std::size_t>(pp)], blk.j};
  a.left_regular = {r[static_cast<std::size_t>(pp)] + 1, r[static_cast<std::size_t>(L - 1)]};
  a.right_regular = {s[static_cast<std::size_t>(L - 1)], s[static_cast<std::size_t>(pp)] - 1};
  a.core = {r[static_cast<std::size_t>(L - 1)] + 1, s[static_cast<std::size_t>(L - 1)] - 1};
  return a;
}

ChainAnatomy EvolutionChain::anatomy(int m) {
  ensure_depth(m);
  auto& lm = level(k_, m);
  const Word& v = members_[static_cast<std::size_t>(m)].v;
  auto it = lm.by_key.find({1, static_cast<std::int32_t>(v.size()) - 2});
  if (it == lm.by_key.end()) throw Error(ErrorKind::Precondition, "member block missing");
  return anatomy_of_block(k_, m, it->second);
}

std::pair<bool, bool> EvolutionChain::case_flags_of_block(int kk, int m, std::int32_t bi) {
  const LevelBlock blk = levels_[kk][static_cast<std::size_t>(m)].blocks[static_cast<std::size_t>(bi)];
  if (blk.seq < 2) throw Error(ErrorKind::PrefixTooShort, "case flags need a member with seq >= 2");
  std::vector<std::int32_t> r, s;
  cum_bounds(kk, m, bi, r, s);
  return {r[1] >= blk.i, s[1] <= blk.j};
}

bool EvolutionChain::case_left_I() {
  if (!case_flags_) {
    ensure_depth(2);
    auto& lm = level(k_, 2);
    const Word& v = members_[2].v;
    auto it = lm.by_key.find({1, static_cast<std::int32_t>(v.size()) - 2});
    case_flags_ = case_flags_of_block(k_, 2, it->second);
  }
  return case_flags_->first;
}

bool EvolutionChain::case_right_I() {
  case_left_I();
  return case_flags_->second;
}

EvolutionChain::AtomSpans EvolutionChain::atoms(int m) {
  ensure_depth(m);
  auto& lm = level(k_, m);
  const Word& v = members_[static_cast<std::size_t>(m)].v;
  auto it = lm.by_key.find({1, static_cast<std::int32_t>(v.size()) - 2});
  std::vector<std::int32_t> r, s;
  cum_bounds(k_, m, it->second, r, s);
  const int L = lm.blocks[static_cast<std::size_t>(it->second)].seq;
  AtomSpans out;
  for (int l = 1; l <= L; ++l) {
    out.left.push_back({r[static_cast<std::size_t>(L - l)] + 1, r[static_cast<std::size_t>(L - l + 1)]});
    out.right.push_back({s[static_cast<std::size_t>(L - l + 1)], s[static_cast<std::size_t>(L - l)] - 1});
  }
  out.zeroth = {r[static_cast<std::size_t>(L)] + 1, s[static_cast<std::size_t>(L)] - 1};
  return out;
}

std::vector<EvolutionChain::MultiItem> EvolutionChain::items_of(int m, int kk, VSpan span,
                                                                bool incl_l, bool incl_r) const {
  const Word& v = members_[static_cast<std::size_t>(m)].v;
  auto gt = [&](std::int32_t p) { return order_of(v[static_cast<std::size_t>(p)]) > kk; };
  std::vector<MultiItem> out;
  if (span.empty()) {
    if (incl_l && incl_r && gt(span.lo - 1) && gt(span.lo)) out.push_back({true, span.lo, span.lo - 1});
    return out;
  }
  if (incl_l && gt(span.lo - 1) && gt(span.lo)) out.push_back({true, span.lo, span.lo - 1});
  std::int32_t p = span.lo;
  while (p <= span.hi) {
    if (gt(p)) {
      out.push_back({false, p, p});
      if (p + 1 <= span.hi && gt(p + 1)) out.push_back({true, p + 1, p});
      ++p;
    } else {
      std::int32_t q = p;
      while (q + 1 <= span.hi && !gt(q + 1)) ++q;
      out.push_back({true, p, q});
      p = q + 1;
    }
  }
  if (incl_r && gt(span.hi) && gt(span.hi + 1)) out.push_back({true, span.hi + 1, span.hi});
  return out;
}

std::vector<VSpan> EvolutionChain::prime_kernels(int m, int kk, VSpan span, bool incl_l, bool incl_r) {
  if (kk == 0) return {span};
  extend_level(kk);
  std::vector<VSpan> out;
  auto& lm = levels_[kk][static_cast<std::size_t>(m)];
  const Word& v = members_[static_cast<std::size_t>(m)].v;
  for (const MultiItem& it : items_of(m, kk, span, incl_l, incl_r)) {
    if (!it.is_block) {
      const auto& p = profiles_[static_cast<std::size_t>(v[static_cast<std::size_t>(it.i)])];
      if (p.order != kk + 1 || p.periodicity != Periodicity::Periodic)
        throw Error(ErrorKind::NotStableMultiblock,
                    "multiblock letter is not a periodic letter of order k+1");
      out.push_back({it.i, it.j});
      continue;
    }
    auto key = lm.by_key.find({it.i, it.j});
    if (key == lm.by_key.end())
      throw Error(ErrorKind::Precondition, "multiblock item is not a tracked block");
    const LevelBlock& blk = lm.blocks[static_cast<std::size_t>(key->second)];
    if (blk.seq < 3 * kk)
      throw Error(ErrorKind::NotStableMultiblock, "multiblock contains an unstable block");
    ChainAnatomy a = anatomy_of_block(kk, m, key->second);
    auto [cl, cr] = case_flags_of_block(kk, m, key->second);
    if (cl) out.push_back(a.left_preperiod);
    auto inner = prime_kernels(m, kk - 1, a.core, true, true);
    out.insert(out.end(), inner.begin(), inner.end());
    if (cr) out.push_back(a.right_preperiod);
  }
  return out;
}

KernelSet EvolutionChain::kernels(int m, int kk, VSpan span, bool incl_l, bool incl_r) {
  ensure_depth(m);
  KernelSet ks;
  ks.prime = prime_kernels(m, kk, span, incl_l, incl_r);
  std::sort(ks.prime.begin(), ks.prime.end(),
            [](const VSpan& a, const VSpan& b) { return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi; });
  for (const VSpan& p : ks.prime) {
    if (!ks.composite.empty() && ks.composite.back().hi + 1 == p.lo)
      ks.composite.back().hi = p.hi;
    else
      ks.composite.push_back(p);
  }
  for (std::size_t x = 0; x + 1 < ks.composite.size(); ++x)
    ks.pseudoregular.push_back({ks.composite[x].hi + 1, ks.composite[x + 1].lo - 1});
  return ks;
}

KernelSet EvolutionChain::central_kernels(int m) {
  ChainAnatomy a = anatomy(m);
  return kernels(m, k_ - 1, a.core, true, true);
}

}  // namespace morphan
