#include "morphan/prefix.hpp"

#include "morphan/errors.hpp"

namespace morphan {

ProvenancePrefix::ProvenancePrefix(Word text, std::vector<std::int64_t> parent,
                                   std::vector<std::int64_t> image_start)
    : text_(std::move(text)), parent_(std::move(parent)), image_start_(std::move(image_start)) {}

std::optional<Occurrence> ProvenancePrefix::image_span(std::int64_t q) const {
  if (q < 0 || q + 1 >= static_cast<std::int64_t>(image_start_.size())) return std::nullopt;
  std::int64_t a = image_start_[static_cast<std::size_t>(q)];
  std::int64_t b = image_start_[static_cast<std::size_t>(q) + 1] - 1;
  if (b >= size()) return std::nullopt;
  return Occurrence{a, b};
}

Word ProvenancePrefix::slice(const Occurrence& occ) const {
  if (occ.empty()) return {};
  return Word(text_.begin() + occ.start, text_.begin() + occ.end + 1);
}

ProvenancePrefix generate_prefix(const MorphicSystem& s, std::int64_t min_len) {
  if (min_len < 1) throw Error(ErrorKind::Precondition, "min_len must be >= 1");
  validate_system(s);

  const Word& ax_img = s.image(s.axiom);
  Word text = ax_img;
  std::vector<std::int64_t> parent(text.size(), 0);
  std::int64_t q = 1;
  while (static_cast<std::int64_t>(text.size()) < min_len) {
    if (q >= static_cast<std::int64_t>(text.size()))
      throw Error(ErrorKind::Divergence, "fixed point stopped growing");
    const Word& img = s.image(text[static_cast<std::size_t>(q)]);
    text.insert(text.end(), img.begin(), img.end());
    parent.insert(parent.end(), img.size(), q);
    ++q;
  }

  std::vector<std::int64_t> image_start;
  image_start.reserve(text.size() + 1);
  image_start.push_back(0);
  for (Letter b : text) {
    std::int64_t next = image_start.back() + static_cast<std::int64_t>(s.image(b).size());
    image_start.push_back(next);
    if (next > static_cast<std::int64_t>(text.size())) break;  // later spans cannot fit
  }
  return ProvenancePrefix(std::move(text), std::move(parent), std::move(image_start));
}

}  // namespace morphan
