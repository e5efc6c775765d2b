#include "morphan/analyzer.hpp"

#include <algorithm>

#include "morphan/errors.hpp"

namespace morphan {

PrefixAnalyzer::PrefixAnalyzer(const MorphicSystem& s, std::vector<LetterProfile> profiles,
                               ProvenancePrefix prefix)
    : s_(s), profiles_(std::move(profiles)), prefix_(std::move(prefix)) {}

PrefixAnalyzer::LevelData& PrefixAnalyzer::level(int k) {
  auto it = levels_.find(k);
  if (it != levels_.end()) return it->second;
  if (k < 1) throw Error(ErrorKind::Precondition, "block level k must be >= 1");

  const int axiom_order = profiles_[static_cast<std::size_t>(s_.axiom)].order;
  if (axiom_order != kOrderInfinite && k >= axiom_order - 1)
    throw Error(ErrorKind::UnboundedTail,
                "letters of order <= " + std::to_string(k) +
                    " form an unbounded suffix (axiom order " + std::to_string(axiom_order) + ")");

  LevelData ld;
  const std::int64_t n = prefix_.size();
  std::int64_t lastgt = -1;
  for (std::int64_t p = 0; p < n; ++p) {
    if (order_at(p) <= k) continue;
    if (lastgt >= 0) {
      Occurrence b{lastgt + 1, p - 1};
      ld.by_key[{b.start, b.end}] = static_cast<int>(ld.blocks.size());
      BlockRecord rec;
      rec.occurrence = b;
      rec.k = k;
      rec.left_border = prefix_.at(lastgt);
      rec.right_border = prefix_.at(p);
      ld.blocks.push_back(rec);
      ld.items.push_back({b, true});
    } else if (p != 0) {
      throw Error(ErrorKind::Precondition, "prefix does not start with a letter of order > k");
    }
    ld.items.push_back({Occurrence{p, p}, false});
    lastgt = p;
  }
  // The run after the last order>k letter is a possibly unfinished block and
  // is not emitted.
  auto [pos, ok] = levels_.emplace(k, std::move(ld));
  return pos->second;
}

const std::vector<DecompositionItem>& PrefixAnalyzer::decompose(int k) { return level(k).items; }

std::optional<Occurrence> PrefixAnalyzer::ancestor(int k, const Occurrence& block) const {
  if (block.start <= 0 || block.end + 1 >= prefix_.size())
    throw Error(ErrorKind::Precondition, "block borders must lie inside the prefix");
  if (order_at(block.start - 1) <= k || order_at(block.end + 1) <= k)
    throw Error(ErrorKind::Precondition, "occurrence is not a k-block (borders too low)");
  std::int64_t p1 = prefix_.parent(block.start - 1);
  std::int64_t p2 = prefix_.parent(block.end + 1);
  if (p1 == p2) return std::nullopt;
  return Occurrence{p1 + 1, p2 - 1};
}

Occurrence PrefixAnalyzer::descendant(int k, const Occurrence& block) const {
  auto left = prefix_.image_span(block.start - 1);
  auto right = prefix_.image_span(block.end + 1);
  if (!left || !right) throw Error(ErrorKind::PrefixTooShort, "descendant image is cut off");
  std::int64_t s = -1;
  for (std::int64_t p = left->end; p >= left->start; --p)
    if (order_at(p) > k) {
      s = p + 1;
      break;
    }
  std::int64_t t = -1;
  for (std::int64_t p = right->start; p <= right->end; ++p)
    if (order_at(p) > k) {
      t = p - 1;
      break;
    }
  if (s < 0 || t < 0) throw Error(ErrorKind::Precondition, "borders lost their high letters");
  return {s, t};
}

std::vector<DecompositionItem> PrefixAnalyzer::multiblock_items(const Multiblock& mb) const {
  auto gt = [&](std::int64_t p) { return order_at(p) > mb.k; };
  std::vector<DecompositionItem> out;
  if (mb.end < mb.start) {
    if (mb.include_left && mb.include_right && mb.start > 0 && gt(mb.start - 1) &&
        mb.start < prefix_.size() && gt(mb.start))
      out.push_back({Occurrence{mb.start, mb.start - 1}, true});
    return out;
  }
  if (mb.include_left && mb.start > 0 && gt(mb.start - 1) && gt(mb.start))
    out.push_back({Occurrence{mb.start, mb.start - 1}, true});
  std::int64_t p = mb.start;
  while (p <= mb.end) {
    if (gt(p)) {
      out.push_back({Occurrence{p, p}, false});
      if (p + 1 <= mb.end && gt(p + 1)) out.push_back({Occurrence{p + 1, p}, true});
      ++p;
    } else {
      std::int64_t q = p;
      while (q + 1 <= mb.end && !gt(q + 1)) ++q;
      out.push_back({Occurrence{p, q}, true});
      p = q + 1;
    }
  }
  if (mb.include_right && mb.end + 1 < prefix_.size() && gt(mb.end) && gt(mb.end + 1))
    out.push_back({Occurrence{mb.end + 1, mb.end}, true});
  return out;
}

Multiblock PrefixAnalyzer::descendant(const Multiblock& mb) const {
  if (mb.k < 0) throw Error(ErrorKind::Precondition, "multiblock level must be >= 0");
  if (mb.k == 0) {
    // 0-multiblocks are plain occurrences and their descendant is the image.
    Multiblock out = mb;
    auto first = prefix_.image_span(mb.start);
    if (!first) throw Error(ErrorKind::PrefixTooShort, "descendant image is cut off");
    out.start = first->start;
    if (mb.end < mb.start) {
      out.end = out.start - 1;
      return out;
    }
    auto last = prefix_.image_span(mb.end);
    if (!last) throw Error(ErrorKind::PrefixTooShort, "descendant image is cut off");
    out.end = last->end;
    return out;
  }
  auto gt = [&](std::int64_t p) { return order_at(p) > mb.k; };
  auto span_of = [&](std::int64_t p) {
    auto sp = prefix_.image_span(p);
    if (!sp) throw Error(ErrorKind::PrefixTooShort, "descendant image is cut off");
    return *sp;
  };
  auto rl_end = [&](std::int64_t p) {  // position after rightmost order>k letter of phi(alpha_p)
    Occurrence sp = span_of(p);
    for (std::int64_t q = sp.end; q >= sp.start; --q)
      if (gt(q)) return q + 1;
    throw Error(ErrorKind::Precondition, "border image lost its high letter");
  };
  auto ll_start = [&](std::int64_t p) {  // position of leftmost order>k letter of phi(alpha_p)
    Occurrence sp = span_of(p);
    for (std::int64_t q = sp.start; q <= sp.end; ++q)
      if (gt(q)) return q;
    throw Error(ErrorKind::Precondition, "border image lost its high letter");
  };

  Multiblock out = mb;
  if (mb.end < mb.start) {  // empty span: either an empty block or an empty multiblock
    bool has_block = mb.start > 0 && gt(mb.start - 1) && gt(mb.start);
    bool left_of_block = has_block && mb.include_left;
    std::int64_t pos;
    if (has_block && mb.include_left && mb.include_right) {
      // the multiblock contains the empty block; treat as a block below
      out.start = rl_end(mb.start - 1);
      out.end = ll_start(mb.start) - 1;
      return out;
    }
    if (has_block)
      pos = left_of_block ? rl_end(mb.start - 1) : ll_start(mb.start);
    else
      pos = gt(mb.start - 1) ? rl_end(mb.start - 1) : ll_start(mb.start);
    out.start = pos;
    out.end = pos - 1;
    return out;
  }

  bool lead_empty = mb.start > 0 && gt(mb.start - 1) && gt(mb.start);
  if ((mb.include_left && lead_empty) || !gt(mb.start))
    out.start = rl_end(mb.start - 1);
  else
    out.start = ll_start(mb.start);

  bool trail_empty = gt(mb.end) && mb.end + 1 < prefix_.size() && gt(mb.end + 1);
  if ((mb.include_right && trail_empty) || !gt(mb.end))
    out.end = ll_start(mb.end + 1) - 1;
  else {
    Occurrence sp = span_of(mb.end);
    std::int64_t q = sp.end;
    while (q >= sp.start && !gt(q)) --q;
    out.end = q;
  }
  return out;
}

void PrefixAnalyzer::build_lineage(int k, LevelData& ld) {
  if (ld.lineage_done) return;
  // seq/evolution assignment by walking ancestor links (memoized through the
  // records themselves).
  std::vector<int> order_stack;
  for (int bi = 0; bi < static_cast<int>(ld.blocks.size()); ++bi) {
    if (ld.blocks[static_cast<std::size_t>(bi)].seq_no >= 0) continue;
    order_stack.clear();
    int cur = bi;
    while (true) {
      BlockRecord& b = ld.blocks[static_cast<std::size_t>(cur)];
      if (b.seq_no >= 0) break;
      auto anc = ancestor(k, b.occurrence);
      if (!anc) {
        b.seq_no = 0;
        b.evolution_id = -2;  // origin marker; ids assigned later
        break;
      }
      auto it = ld.by_key.find({anc->start, anc->end});
      if (it == ld.by_key.end())
        throw Error(ErrorKind::Precondition, "ancestor block missing from decomposition");
      order_stack.push_back(cur);
      cur = it->second;
    }
    while (!order_stack.empty()) {
      int child = order_stack.back();
      order_stack.pop_back();
      BlockRecord& c = ld.blocks[static_cast<std::size_t>(child)];
      auto anc = ancestor(k, c.occurrence);
      const BlockRecord& a = ld.blocks[ld.by_key.at({anc->start, anc->end})];
      c.seq_no = a.seq_no + 1;
      c.evolution_id = a.evolution_id;  // still the origin marker; fixed below
    }
  }
  // Group members by origin occurrence (walk to root once more, cached).
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<int>> groups;
  for (int bi = 0; bi < static_cast<int>(ld.blocks.size()); ++bi) {
    int cur = bi;
    while (true) {
      const BlockRecord& b = ld.blocks[static_cast<std::size_t>(cur)];
      if (b.seq_no == 0) break;
      auto anc = ancestor(k, b.occurrence);
      cur = ld.by_key.at({anc->start, anc->end});
    }
    const Occurrence& origin = ld.blocks[static_cast<std::size_t>(cur)].occurrence;
    groups[{origin.start, origin.end}].push_back(bi);
  }
  int next_id = 0;
  for (auto& [key, members] : groups) {
    EvolutionRecord rec;
    rec.k = k;
    rec.id = "k" + std::to_string(k) + ".e" + std::to_string(next_id);
    Occurrence origin{key.first, key.second};
    rec.origin.w0 = prefix_.slice(origin);
    rec.origin.lb = prefix_.at(origin.start - 1);
    rec.origin.rb = prefix_.at(origin.end + 1);
    rec.chain = chain_for(k, rec.origin);
    for (int bi : members) {
      BlockRecord& b = ld.blocks[static_cast<std::size_t>(bi)];
      b.evolution_id = next_id;
      rec.members[b.seq_no] = b.occurrence;
    }
    ld.evolutions.push_back(std::move(rec));
    ++next_id;
  }
  ld.lineage_done = true;
}

std::shared_ptr<EvolutionChain> PrefixAnalyzer::chain_for(int k, const OriginTuple& t) {
  auto& slot = chains_[k][t];
  if (!slot) slot = std::make_shared<EvolutionChain>(s_, profiles_, k, t);
  return slot;
}

const std::vector<EvolutionRecord>& PrefixAnalyzer::evolutions(int k) {
  LevelData& ld = level(k);
  build_lineage(k, ld);
  return ld.evolutions;
}

std::optional<BlockRecord> PrefixAnalyzer::block_at(int k, const Occurrence& occ) {
  LevelData& ld = level(k);
  build_lineage(k, ld);
  auto it = ld.by_key.find({occ.start, occ.end});
  if (it == ld.by_key.end()) return std::nullopt;
  return ld.blocks[static_cast<std::size_t>(it->second)];
}

PrefixAnalyzer::OccAnatomy PrefixAnalyzer::anatomy_of(EvolutionRecord& evo, int seq) {
  auto mit = evo.members.find(seq);
  if (mit == evo.members.end())
    throw Error(ErrorKind::PrefixTooShort, "member " + std::to_string(seq) + " not observed");
  const Occurrence& occ = mit->second;
  if (evo.abstract_member(seq) != prefix_.slice(occ))
    throw Error(ErrorKind::Precondition, "chain/prefix member mismatch");
  ChainAnatomy rel = evo.chain->anatomy(seq);
  OccAnatomy out;
  out.seq = seq;
  out.block = occ;
  out.left_preperiod = to_abs(occ, rel.left_preperiod);
  out.right_preperiod = to_abs(occ, rel.right_preperiod);
  out.left_regular = to_abs(occ, rel.left_regular);
  out.right_regular = to_abs(occ, rel.right_regular);
  out.core = to_abs(occ, rel.core);
  KernelSet ck = evo.chain->central_kernels(seq);
  for (const VSpan& p : ck.prime) out.central_prime.push_back(to_abs(occ, p));
  for (const VSpan& p : ck.composite) out.central_composite.push_back(to_abs(occ, p));
  return out;
}

PrefixAnalyzer::OccAtoms PrefixAnalyzer::atoms_of(EvolutionRecord& evo, int seq) {
  auto mit = evo.members.find(seq);
  if (mit == evo.members.end())
    throw Error(ErrorKind::PrefixTooShort, "member " + std::to_string(seq) + " not observed");
  const Occurrence& occ = mit->second;
  EvolutionChain::AtomSpans rel = evo.chain->atoms(seq);
  OccAtoms out;
  for (const VSpan& a : rel.left) out.left.push_back(to_abs(occ, a));
  for (const VSpan& a : rel.right) out.right.push_back(to_abs(occ, a));
  out.zeroth = to_abs(occ, rel.zeroth);
  return out;
}

PrefixAnalyzer::OccKernelSet PrefixAnalyzer::kernels_of(const Multiblock& mb) {
  OccKernelSet out;
  if (mb.k == 0) {
    // A 0-multiblock is a plain occurrence and is its own prime kernel.
    out.prime.push_back(mb.forgetful());
    out.composite.push_back(mb.forgetful());
    return out;
  }
  for (const DecompositionItem& item : multiblock_items(mb)) {
    if (!item.is_block) {
      const auto& p = profiles_[static_cast<std::size_t>(prefix_.at(item.occurrence.start))];
      if (p.order != mb.k + 1 || p.periodicity != Periodicity::Periodic)
        throw Error(ErrorKind::NotStableMultiblock,
                    "multiblock letter is not a periodic letter of order k+1");
      out.prime.push_back(item.occurrence);
      continue;
    }
    auto rec = block_at(mb.k, item.occurrence);
    if (!rec) throw Error(ErrorKind::Precondition, "multiblock block is not tracked");
    if (rec->seq_no < 3 * mb.k)
      throw Error(ErrorKind::NotStableMultiblock, "multiblock contains an unstable block");
    EvolutionRecord& evo = level(mb.k).evolutions[static_cast<std::size_t>(rec->evolution_id)];
    evo.chain->ensure_depth(rec->seq_no);
    const Word& v = evo.chain->member_v(rec->seq_no);
    KernelSet rel = evo.chain->kernels(rec->seq_no, mb.k,
                                       VSpan{1, static_cast<std::int32_t>(v.size()) - 2}, true, true);
    for (const VSpan& p : rel.prime) out.prime.push_back(to_abs(item.occurrence, p));
  }
  std::sort(out.prime.begin(), out.prime.end(), [](const Occurrence& a, const Occurrence& b) {
    return a.start != b.start ? a.start < b.start : a.end < b.end;
  });
  for (const Occurrence& p : out.prime) {
    if (!out.composite.empty() && out.composite.back().end + 1 == p.start)
      out.composite.back().end = p.end;
    else
      out.composite.push_back(p);
  }
  for (std::size_t x = 0; x + 1 < out.composite.size(); ++x)
    out.pseudoregular.push_back({out.composite[x].end + 1, out.composite[x + 1].start - 1});
  return out;
}

}  // namespace morphan
