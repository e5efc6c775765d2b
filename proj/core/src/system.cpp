#include "morphan/system.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "morphan/errors.hpp"

namespace morphan {

void validate_system(const MorphicSystem& s) {
  const std::size_t n = s.alphabet.size();
  if (n == 0) throw Error(ErrorKind::Validation, "empty alphabet");
  if (s.phi.size() != n || s.psi.size() != n)
    throw Error(ErrorKind::Validation, "morphism/coding table size mismatch");
  for (std::size_t b = 0; b < n; ++b) {
    if (s.phi[b].empty())
      throw Error(ErrorKind::Validation,
                  "nonerasing: empty image for letter '" + s.alphabet.name_of(static_cast<Letter>(b)) + "'");
    for (Letter c : s.phi[b])
      if (c < 0 || static_cast<std::size_t>(c) >= n)
        throw Error(ErrorKind::Validation, "morphism image uses unknown letter id");
    if (s.psi[b] < 0 || static_cast<std::size_t>(s.psi[b]) >= n)
      throw Error(ErrorKind::Validation, "coding uses unknown letter id");
  }
  if (s.axiom < 0 || static_cast<std::size_t>(s.axiom) >= n)
    throw Error(ErrorKind::Validation, "axiom not in alphabet");
  const Word& ax = s.phi[static_cast<std::size_t>(s.axiom)];
  if (ax.front() != s.axiom)
    throw Error(ErrorKind::Validation,
                "axiom-prefix: phi(axiom) must begin with the axiom letter");
  if (ax.size() < 2)
    throw Error(ErrorKind::Validation,
                "axiom-growth: |phi(axiom)| must be at least 2 for an infinite fixed point");
  std::size_t m = 0;
  for (const auto& img : s.phi) m = std::max(m, img.size());
  if (s.max_image_len != m)
    throw Error(ErrorKind::Validation, "max_image_len inconsistent with morphism table");
}

namespace {

struct Line {
  int no;
  std::string text;
};

std::vector<std::string> tokens_of(const std::string& text) {
  std::vector<std::string> toks;
  std::istringstream in(text);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

MorphicSystem parse_system(const std::string& source_text) {
  std::vector<Line> lines;
  {
    std::istringstream in(source_text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
      ++no;
      if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
      if (tokens_of(raw).empty()) continue;
      lines.push_back({no, raw});
    }
  }

  MorphicSystem sys;
  std::optional<std::string> axiom_name;
  enum class Section { None, Morphism, Coding } section = Section::None;
  std::vector<std::pair<int, std::vector<std::string>>> morphism_rules, coding_rules;
  bool saw_alphabet = false;

  for (const auto& [no, text] : lines) {
    auto toks = tokens_of(text);
    if (toks[0] == "alphabet:") {
      if (saw_alphabet) parse_fail(no, "duplicate alphabet line");
      if (toks.size() < 2) parse_fail(no, "alphabet must list at least one letter");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (sys.alphabet.id_of(toks[i]) >= 0)
          throw Error(ErrorKind::Validation, "duplicate letter '" + toks[i] + "' in alphabet");
        sys.alphabet.add(toks[i]);
      }
      saw_alphabet = true;
      section = Section::None;
    } else if (toks[0] == "axiom:") {
      if (toks.size() != 2) parse_fail(no, "axiom line takes exactly one letter");
      axiom_name = toks[1];
      section = Section::None;
    } else if (toks[0] == "morphism:") {
      if (toks.size() != 1) parse_fail(no, "unexpected tokens after 'morphism:'");
      section = Section::Morphism;
    } else if (toks[0] == "coding:") {
      if (toks.size() != 1) parse_fail(no, "unexpected tokens after 'coding:'");
      section = Section::Coding;
    } else {
      auto arrow = std::find(toks.begin(), toks.end(), "->");
      if (arrow == toks.end()) parse_fail(no, "expected 'letter -> letters...' rule");
      if (arrow != toks.begin() + 1) parse_fail(no, "rule must have exactly one letter before '->'");
      if (section == Section::Morphism)
        morphism_rules.emplace_back(no, toks);
      else if (section == Section::Coding)
        coding_rules.emplace_back(no, toks);
      else
        parse_fail(no, "rule outside of a morphism:/coding: section");
    }
  }

  if (!saw_alphabet) throw Error(ErrorKind::Parse, "missing alphabet line");
  if (!axiom_name) throw Error(ErrorKind::Parse, "missing axiom line");

  const std::size_t n = sys.alphabet.size();
  sys.phi.assign(n, {});
  sys.psi.assign(n, -1);
  std::vector<bool> has_phi(n, false), has_psi(n, false);

  auto need_letter = [&](const std::string& name, int line) -> Letter {
    Letter id = sys.alphabet.id_of(name);
    if (id < 0)
      throw Error(ErrorKind::Validation,
                  "unknown letter '" + name + "' at line " + std::to_string(line));
    return id;
  };

  for (const auto& [no, toks] : morphism_rules) {
    Letter b = need_letter(toks[0], no);
    if (has_phi[static_cast<std::size_t>(b)])
      throw Error(ErrorKind::Validation, "duplicate morphism rule for '" + toks[0] + "'");
    has_phi[static_cast<std::size_t>(b)] = true;
    Word img;
    for (std::size_t i = 2; i < toks.size(); ++i) img.push_back(need_letter(toks[i], no));
    if (img.empty())
      throw Error(ErrorKind::Validation, "nonerasing: empty image for letter '" + toks[0] + "'");
    sys.phi[static_cast<std::size_t>(b)] = std::move(img);
  }
  for (const auto& [no, toks] : coding_rules) {
    Letter b = need_letter(toks[0], no);
    if (has_psi[static_cast<std::size_t>(b)])
      throw Error(ErrorKind::Validation, "duplicate coding rule for '" + toks[0] + "'");
    if (toks.size() != 3)
      throw Error(ErrorKind::Validation, "coding image for '" + toks[0] + "' must be one letter");
    has_psi[static_cast<std::size_t>(b)] = true;
    sys.psi[static_cast<std::size_t>(b)] = need_letter(toks[2], no);
  }

  for (std::size_t b = 0; b < n; ++b) {
    if (!has_phi[b])
      throw Error(ErrorKind::Validation,
                  "missing morphism rule for '" + sys.alphabet.name_of(static_cast<Letter>(b)) + "'");
    if (!has_psi[b])
      throw Error(ErrorKind::Validation,
                  "missing coding rule for '" + sys.alphabet.name_of(static_cast<Letter>(b)) + "'");
  }

  sys.axiom = need_letter(*axiom_name, 0);
  for (const auto& img : sys.phi) sys.max_image_len = std::max(sys.max_image_len, img.size());
  validate_system(sys);
  return sys;
}

std::string emit_system(const MorphicSystem& s) {
  std::ostringstream out;
  out << "alphabet:";
  for (std::size_t b = 0; b < s.size(); ++b) out << ' ' << s.alphabet.name_of(static_cast<Letter>(b));
  out << "\naxiom: " << s.alphabet.name_of(s.axiom) << "\nmorphism:\n";
  for (std::size_t b = 0; b < s.size(); ++b) {
    out << "  " << s.alphabet.name_of(static_cast<Letter>(b)) << " ->";
    for (Letter c : s.phi[b]) out << ' ' << s.alphabet.name_of(c);
    out << '\n';
  }
  out << "coding:\n";
  for (std::size_t b = 0; b < s.size(); ++b)
    out << "  " << s.alphabet.name_of(static_cast<Letter>(b)) << " -> "
        << s.alphabet.name_of(s.psi[b]) << '\n';
  return out.str();
}

Word apply_morphism(const MorphicSystem& s, const Word& w) {
  Word out;
  std::size_t total = 0;
  for (Letter b : w) total += s.image(b).size();
  out.reserve(total);
  for (Letter b : w) {
    const Word& img = s.image(b);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

Word apply_coding(const MorphicSystem& s, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter b : w) out.push_back(s.code(b));
  return out;
}

MorphicSystem morphism_power(const MorphicSystem& s, int n) {
  if (n < 1) throw Error(ErrorKind::Precondition, "morphism_power needs n >= 1");
  MorphicSystem out = s;
  for (int step = 1; step < n; ++step)
    for (std::size_t b = 0; b < s.size(); ++b) out.phi[b] = apply_morphism(s, out.phi[b]);
  out.max_image_len = 0;
  for (const auto& img : out.phi) out.max_image_len = std::max(out.max_image_len, img.size());
  return out;
}

std::vector<bool> reachable_letters(const MorphicSystem& s) {
  std::vector<bool> seen(s.size(), false);
  std::vector<Letter> stack{s.axiom};
  seen[static_cast<std::size_t>(s.axiom)] = true;
  while (!stack.empty()) {
    Letter b = stack.back();
    stack.pop_back();
    for (Letter c : s.image(b))
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = true;
        stack.push_back(c);
      }
  }
  return seen;
}

}  // namespace morphan
