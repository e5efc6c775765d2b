#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "morphan/orders.hpp"
#include "morphan/system.hpp"

namespace morphan {

// An evolution origin: a k-block arising strictly inside the image of a single
// letter, identified by its abstract word and its two border letters.
struct OriginTuple {
  Word w0;
  Letter lb = -1;
  Letter rb = -1;
  auto operator<=>(const OriginTuple&) const = default;
};

// All origin tuples of k-evolutions arising in alpha: interior maximal runs of
// order<=k letters inside phi(b), over letters b of order > k occurring in alpha.
std::vector<OriginTuple> origin_closure(const MorphicSystem& s,
                                        const std::vector<LetterProfile>& profiles, int k);

// Span within a chain member word; hi < lo encodes the empty span at lo.
struct VSpan {
  std::int32_t lo = 0;
  std::int32_t hi = -1;
  bool empty() const { return hi < lo; }
  std::int64_t length() const { return hi - lo + 1; }
  bool operator==(const VSpan&) const = default;
};

// Anatomy of a stable member, in member-local coordinates (position 0 is the
// left border letter, the block occupies [1 .. |v|-2]).
struct ChainAnatomy {
  int member = 0;      // evolutional sequence number l
  VSpan block;         // [1, |v|-2]
  VSpan left_preperiod, right_preperiod;
  VSpan left_regular, right_regular;
  VSpan core;
  std::vector<std::int32_t> cum_r, cum_s;  // cumulative atom boundaries, d = 0..l
};

struct KernelSet {
  std::vector<VSpan> prime;
  std::vector<VSpan> composite;
  std::vector<VSpan> pseudoregular;  // interior gaps between composite kernels
};

// Abstract materialization of one evolution of k-blocks: member l is the word
// v_l = LB(E_l) . E_l . RB(E_l), built by the descendant recurrence. Lineage
// and anatomy of inner blocks are tracked locally, so members far beyond any
// feasible prefix of alpha stay cheap (their sizes grow polynomially in l).
class EvolutionChain {
 public:
  EvolutionChain(const MorphicSystem& s, const std::vector<LetterProfile>& profiles,
                 int k, OriginTuple origin);

  int block_level() const { return k_; }
  const OriginTuple& origin() const { return origin_; }

  void ensure_depth(int member);
  int depth() const { return static_cast<int>(members_.size()) - 1; }

  const Word& member_v(int m) const { return members_.at(static_cast<std::size_t>(m)).v; }
  Word member_word(int m) const;  // the block E_m itself
  Letter left_border(int m) const { return member_v(m).front(); }
  Letter right_border(int m) const { return member_v(m).back(); }

  // Case I holds iff the l-th atoms (l >= 2) contain a letter of order k.
  bool case_left_I();
  bool case_right_I();

  // Anatomy of the member's top-level block; requires m >= 3k.
  ChainAnatomy anatomy(int m);

  // Kernels of the stable kk-multiblock [incl_l, a..b, incl_r] inside member m.
  KernelSet kernels(int m, int kk, VSpan span, bool incl_l, bool incl_r);

  // Composite central kernels of member m's block (kernels of its core).
  KernelSet central_kernels(int m);

  // Forgetful occurrences of individual atoms of member m (l = 1..m, plus the
  // zeroth): left_atoms[l-1], zeroth, right_atoms[l-1].
  struct AtomSpans {
    std::vector<VSpan> left;  // index l-1 holds the l-th atom
    VSpan zeroth;
    std::vector<VSpan> right;
  };
  AtomSpans atoms(int m);

  const MorphicSystem& system() const { return s_; }
  const std::vector<LetterProfile>& profiles() const { return profiles_; }

 private:
  struct Member {
    Word v;
    // img_start[q] = start of the (cropped) image of v[q] in the next member.
    std::vector<std::int32_t> img_start;
    std::vector<std::int32_t> parent;  // for the NEXT member's positions
  };
  struct LevelBlock {
    std::int32_t i, j;   // v coordinates
    std::int32_t seq;
    std::int32_t anc;    // index in the previous member's block list, -1 for origins
  };
  struct LevelMember {
    std::vector<LevelBlock> blocks;
    std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> by_key;
  };

  int order_of(Letter c) const { return profiles_[static_cast<std::size_t>(c)].order; }
  void step();
  LevelMember& level(int kk, int m);
  void extend_level(int kk);
  // image range of position q of member m inside member m+1
  VSpan img_range(int m, std::int32_t q) const;
  VSpan img_range_d(int m, std::int32_t q, int d) const;
  // cumulative atom boundaries for block `bi` of level kk at member m
  void cum_bounds(int kk, int m, std::int32_t bi, std::vector<std::int32_t>& r,
                  std::vector<std::int32_t>& s);
  ChainAnatomy anatomy_of_block(int kk, int m, std::int32_t bi);
  std::pair<bool, bool> case_flags_of_block(int kk, int m, std::int32_t bi);
  std::vector<VSpan> prime_kernels(int m, int kk, VSpan span, bool incl_l, bool incl_r);

  struct MultiItem {
    bool is_block;
    std::int32_t i, j;  // letters have i == j
  };
  std::vector<MultiItem> items_of(int m, int kk, VSpan span, bool incl_l, bool incl_r) const;

  const MorphicSystem& s_;
  const std::vector<LetterProfile>& profiles_;
  int k_;
  OriginTuple origin_;
  std::vector<Member> members_;
  std::map<int, std::vector<LevelMember>> levels_;
  std::optional<std::pair<bool, bool>> case_flags_;
};

}  // namespace morphan
