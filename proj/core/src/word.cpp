#include "morphan/word.hpp"

#include "morphan/errors.hpp"

namespace morphan {

Letter Alphabet::add(const std::string& name) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  Letter id = static_cast<Letter>(names_.size());
  names_.push_back(name);
  index_[name] = id;
  return id;
}

Letter Alphabet::id_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

const std::string& Alphabet::name_of(Letter id) const {
  return names_.at(static_cast<std::size_t>(id));
}

bool Alphabet::all_single_char() const {
  for (const auto& n : names_)
    if (n.size() != 1) return false;
  return true;
}

std::string Alphabet::render(const Word& w) const {
  std::string out;
  const bool tight = all_single_char();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!tight && i) out += ' ';
    out += names_.at(static_cast<std::size_t>(w[i]));
  }
  return out;
}

}  // namespace morphan
