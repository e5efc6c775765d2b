#pragma once

#include <string>
#include <vector>

#include "morphan/word.hpp"

namespace morphan {

// A morphic system: nonerasing morphism phi, coding psi, and an axiom a with
// phi(a) = a... and |phi(a)| >= 2, so phi^inf(a) is an infinite fixed point.
struct MorphicSystem {
  Alphabet alphabet;
  std::vector<Word> phi;    // image per letter id
  std::vector<Letter> psi;  // coded letter per letter id
  Letter axiom = 0;
  std::size_t max_image_len = 0;  // |phi| = max_b |phi(b)|

  std::size_t size() const { return alphabet.size(); }
  const Word& image(Letter b) const { return phi.at(static_cast<std::size_t>(b)); }
  Letter code(Letter b) const { return psi.at(static_cast<std::size_t>(b)); }
};

// Throws ValidationError naming the violated invariant.
void validate_system(const MorphicSystem& s);

// Spec-file format, '#' comments. See README for the grammar.
MorphicSystem parse_system(const std::string& source_text);
std::string emit_system(const MorphicSystem& s);

Word apply_morphism(const MorphicSystem& s, const Word& w);
Word apply_coding(const MorphicSystem& s, const Word& w);

// System with phi replaced by phi^n; coding, axiom and fixed point unchanged.
MorphicSystem morphism_power(const MorphicSystem& s, int n);

// Letters occurring in phi^inf(axiom): closure of {axiom} under images.
std::vector<bool> reachable_letters(const MorphicSystem& s);

}  // namespace morphan
