#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <optional>
#include <vector>

#include "morphan/system.hpp"

namespace morphan {

using BigInt = boost::multiprecision::cpp_int;

// Order of a letter: k when |phi^n(b)| = Theta(n^{k-1}), kOrderInfinite when
// the growth is exponential.
inline constexpr int kOrderInfinite = std::numeric_limits<int>::max();

enum class Periodicity { Periodic, Preperiodic, NotApplicable };

struct LetterProfile {
  Letter letter = 0;
  int order = 0;
  Periodicity periodicity = Periodicity::NotApplicable;
};

// Letter graph: one edge b -> c per occurrence of c in phi(b), plus its
// strongly connected components and their condensation.
struct LetterGraph {
  std::vector<std::vector<Letter>> out;       // successor list with multiplicity
  std::vector<int> scc_of;                    // vertex -> component id
  int scc_count = 0;
  std::vector<std::vector<int>> condensation; // component DAG (deduped edges)
  std::vector<bool> expanding;                // some vertex has >= 2 internal edges
  std::vector<bool> cyclic;                   // some internal edge exists

  int edge_multiplicity(Letter b, Letter c) const;
};

LetterGraph build_letter_graph(const MorphicSystem& s);

// Orders assigned combinatorially from the condensation: components reaching
// an expanding component get infinite order, otherwise 1 is added per cyclic
// component along the deepest downward path.
std::vector<LetterProfile> assign_orders(const LetterGraph& g);

// Fills in Periodic/Preperiodic for finite-order letters: preperiodic iff the
// letter's component is a single vertex with no self-edge.
std::vector<LetterProfile> classify_periodicity(const MorphicSystem& s, const LetterGraph& g,
                                                std::vector<LetterProfile> profiles);

// Convenience: graph + orders + periodicity in one call.
std::vector<LetterProfile> letter_profiles(const MorphicSystem& s);

// Exact |phi^n(b)| via iterated letter-count vectors.
BigInt growth_count(const MorphicSystem& s, Letter b, int n);

enum class Side { Left, Right };

// Position of the leftmost/rightmost letter of order > k in the word, if any.
std::optional<std::size_t> boundary_letter(const Word& word, const std::vector<LetterProfile>& profiles,
                                           int k, Side side);

int max_finite_order(const std::vector<LetterProfile>& profiles);

}  // namespace morphan
