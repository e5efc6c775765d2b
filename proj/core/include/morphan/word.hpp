#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace morphan {

// Letters are dense ids 0..|alphabet|-1. Display names live in Alphabet only.
using Letter = std::int32_t;
using Word = std::vector<Letter>;

// Occurrence of a factor at [start..end], end = start-1 encodes the empty
// occurrence sitting between positions start-1 and start.
struct Occurrence {
  std::int64_t start = 0;
  std::int64_t end = -1;

  std::int64_t length() const { return end - start + 1; }
  bool empty() const { return end < start; }
  bool operator==(const Occurrence&) const = default;
};

class Alphabet {
 public:
  Alphabet() = default;

  Letter add(const std::string& name);
  Letter id_of(const std::string& name) const;        // -1 if unknown
  const std::string& name_of(Letter id) const;
  std::size_t size() const { return names_.size(); }
  bool all_single_char() const;

  // Renders a word; single-char alphabets concatenate, otherwise
  // names are joined with spaces.
  std::string render(const Word& w) const;
  std::string render(Letter l) const { return names_.at(static_cast<std::size_t>(l)); }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Letter> index_;
};

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace morphan
