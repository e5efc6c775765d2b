#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "morphan/chain.hpp"
#include "morphan/prefix.hpp"

namespace morphan {

// A k-delimiter endpoint: the paper's "<,i" / ">,i" bookkeeping collapses to
// whether the empty block adjacent to the position is included.
struct Delimiter {
  std::int64_t position = 0;
  bool after = false;  // false: "<" form, true: ">" form
};

// A k-multiblock: delimited stretch [start..end] with explicit inclusion of
// the boundary empty k-blocks. k = 0 degenerates to a plain occurrence.
struct Multiblock {
  int k = 0;
  std::int64_t start = 0;
  std::int64_t end = -1;
  bool include_left = true;   // left delimiter is of the "<" form
  bool include_right = true;  // right delimiter is of the ">" form

  Occurrence forgetful() const { return {start, end}; }
  bool operator==(const Multiblock&) const = default;
};

struct BlockRecord {
  Occurrence occurrence;
  int k = 0;
  int evolution_id = -1;
  int seq_no = -1;
  Letter left_border = -1;
  Letter right_border = -1;
};

// One evolution as observed in the prefix, with its abstract chain attached.
struct EvolutionRecord {
  std::string id;
  int k = 0;
  OriginTuple origin;
  std::map<int, Occurrence> members;  // seq_no -> occurrence (observed only)
  std::shared_ptr<EvolutionChain> chain;

  bool case_left_I() const { return chain->case_left_I(); }
  bool case_right_I() const { return chain->case_right_I(); }
  Word abstract_member(int seq) const {
    chain->ensure_depth(seq);
    return chain->member_word(seq);
  }
};

struct DecompositionItem {
  Occurrence occurrence;
  bool is_block = false;  // otherwise a single letter of order > k
};

// Occurrence-level analysis of a generated prefix: k-level decomposition,
// ancestor/descendant maps through the provenance parent map, and grouping of
// observed blocks into evolutions.
class PrefixAnalyzer {
 public:
  PrefixAnalyzer(const MorphicSystem& s, std::vector<LetterProfile> profiles,
                 ProvenancePrefix prefix);

  const MorphicSystem& system() const { return s_; }
  const ProvenancePrefix& prefix() const { return prefix_; }
  const std::vector<LetterProfile>& profiles() const { return profiles_; }
  int order_at(std::int64_t pos) const {
    return profiles_[static_cast<std::size_t>(prefix_.at(pos))].order;
  }

  // Splits the complete region into k-blocks (empty ones explicit) and
  // letters of order > k. Throws UnboundedTailError when the splitting lemma
  // hypotheses fail (axiom of finite order K and k >= K-1).
  const std::vector<DecompositionItem>& decompose(int k);

  // The unique block whose descendant is `block`; absent for origins.
  std::optional<Occurrence> ancestor(int k, const Occurrence& block) const;

  // Descendant of a k-block / k-multiblock; throws PrefixTooShort when the
  // image region is cut off.
  Occurrence descendant(int k, const Occurrence& block) const;
  Multiblock descendant(const Multiblock& mb) const;

  const std::vector<EvolutionRecord>& evolutions(int k);

  // Block record lookup (blocks discovered by decompose).
  std::optional<BlockRecord> block_at(int k, const Occurrence& occ);

  // Observed multiblock items, delimiter-aware.
  std::vector<DecompositionItem> multiblock_items(const Multiblock& mb) const;

  // Kernels of a stable k-multiblock observed in the prefix, in absolute
  // coordinates. Recursion runs on the member chains of the inner blocks.
  struct OccKernelSet {
    std::vector<Occurrence> prime;
    std::vector<Occurrence> composite;
    std::vector<Occurrence> pseudoregular;
  };
  OccKernelSet kernels_of(const Multiblock& mb);

  // Anatomy of an observed member, in absolute coordinates.
  struct OccAnatomy {
    int seq = 0;
    Occurrence block;
    Occurrence left_preperiod, right_preperiod;
    Occurrence left_regular, right_regular;
    Occurrence core;
    std::vector<Occurrence> central_prime;
    std::vector<Occurrence> central_composite;
  };
  OccAnatomy anatomy_of(EvolutionRecord& evo, int seq);

  struct OccAtoms {
    std::vector<Occurrence> left;  // index l-1 = l-th atom
    Occurrence zeroth;
    std::vector<Occurrence> right;
  };
  OccAtoms atoms_of(EvolutionRecord& evo, int seq);

 private:
  struct LevelData {
    std::vector<DecompositionItem> items;
    std::vector<BlockRecord> blocks;
    std::map<std::pair<std::int64_t, std::int64_t>, int> by_key;
    std::vector<EvolutionRecord> evolutions;
    bool lineage_done = false;
  };

  LevelData& level(int k);
  void build_lineage(int k, LevelData& ld);
  std::shared_ptr<EvolutionChain> chain_for(int k, const OriginTuple& t);
  static Occurrence to_abs(const Occurrence& member_occ, const VSpan& rel) {
    return {member_occ.start + rel.lo - 1, member_occ.start + rel.hi - 1};
  }

  const MorphicSystem& s_;
  std::vector<LetterProfile> profiles_;
  ProvenancePrefix prefix_;
  std::map<int, LevelData> levels_;
  std::map<int, std::map<OriginTuple, std::shared_ptr<EvolutionChain>>> chains_;
};

}  // namespace morphan
