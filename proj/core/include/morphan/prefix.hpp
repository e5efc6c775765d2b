#pragma once

#include <cstdint>
#include <optional>

#include "morphan/system.hpp"

namespace morphan {

// A generated prefix of alpha = phi^inf(axiom) together with the maps
// realizing alpha = phi(alpha): parent(p) is the position q whose image
// phi(alpha_q) contains position p, and image_span(q) is the occurrence of
// phi(alpha_q) inside the prefix (defined while the image fits).
class ProvenancePrefix {
 public:
  ProvenancePrefix(Word text, std::vector<std::int64_t> parent,
                   std::vector<std::int64_t> image_start);

  const Word& text() const { return text_; }
  std::int64_t size() const { return static_cast<std::int64_t>(text_.size()); }
  Letter at(std::int64_t p) const { return text_[static_cast<std::size_t>(p)]; }

  std::int64_t parent(std::int64_t p) const { return parent_[static_cast<std::size_t>(p)]; }

  // Occurrence of phi(alpha_q) in the prefix, or nullopt when it is cut off.
  std::optional<Occurrence> image_span(std::int64_t q) const;

  Word slice(const Occurrence& occ) const;

 private:
  Word text_;
  std::vector<std::int64_t> parent_;
  std::vector<std::int64_t> image_start_;  // S[q] = start of phi(alpha_q); S[0] = 0
};

// Deterministically generates a prefix of length >= min_len by streaming the
// fixed point: text starts as phi(axiom) and grows by appending phi(text[q]).
ProvenancePrefix generate_prefix(const MorphicSystem& s, std::int64_t min_len);

}  // namespace morphan
