#include <doctest.h>

#include "morphan/errors.hpp"
#include "morphan/prefix.hpp"
#include "test_helpers.hpp"

using namespace morphan;
using namespace morphan::test;

TEST_CASE("parse_system accepts the fixtures and computes |phi|") {
  MorphicSystem a = fixture("fix_a.morph");
  CHECK(a.max_image_len == 2);
  CHECK(a.alphabet.size() == 4);
  CHECK(a.alphabet.name_of(a.axiom) == "4");

  MorphicSystem c = fixture("fix_c.morph");
  CHECK(c.max_image_len == 3);
}

TEST_CASE("parse_system rejects bad input") {
  CHECK_THROWS_AS(parse_system("alphabet: a b\naxiom: a\nmorphism:\n  a -> a b\n  b ->\ncoding:\n"
                               "  a -> a\n  b -> b\n"),
                  Error);  // erasing rule
  try {
    parse_system("alphabet: a b\naxiom: a\nmorphism:\n  a -> a b\n  b ->\ncoding:\n  a -> a\n  b -> b\n");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
    CHECK(std::string(e.what()).find("nonerasing") != std::string::npos);
  }
  // unknown letter
  CHECK_THROWS_AS(parse_system("alphabet: a\naxiom: a\nmorphism:\n  a -> a z\ncoding:\n  a -> a\n"),
                  Error);
  // missing coding entry
  CHECK_THROWS_AS(parse_system("alphabet: a b\naxiom: a\nmorphism:\n  a -> a b\n  b -> b\ncoding:\n"
                               "  a -> a\n"),
                  Error);
  // axiom image does not start with the axiom
  CHECK_THROWS_AS(parse_system("alphabet: a b\naxiom: a\nmorphism:\n  a -> b a\n  b -> b\ncoding:\n"
                               "  a -> a\n  b -> b\n"),
                  Error);
  // garbage line -> ParseError
  try {
    parse_system("alphabet a b\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
  }
}

TEST_CASE("apply_morphism and apply_coding match the worked examples") {
  MorphicSystem a = fixture("fix_a.morph");
  CHECK(apply_morphism(a, w(a, "43")) == w(a, "4332"));
  CHECK(apply_morphism(a, {}) == Word{});
  CHECK(apply_coding(a, w(a, "433232213221211")) == w(a, "433131113111111"));
  CHECK(apply_coding(a, w(a, "21")) == w(a, "11"));

  MorphicSystem c = fixture("fix_c.morph");
  CHECK(apply_morphism(c, w(c, "abb")) == w(c, "abbbccbcc"));
  // identity coding
  CHECK(apply_coding(c, w(c, "abbbcc")) == w(c, "abbbcc"));
}

TEST_CASE("morphism_power") {
  MorphicSystem a = fixture("fix_a.morph");
  MorphicSystem a4 = morphism_power(a, 4);
  CHECK(render(a4, a4.image(a4.alphabet.id_of("4"))) == "433232213221211");
  CHECK(render(a4, a4.image(a4.alphabet.id_of("2"))) == "21111");
  CHECK(render(a4, a4.image(a4.alphabet.id_of("3"))) == "32212112111");
  MorphicSystem a1 = morphism_power(a, 1);
  CHECK(a1.phi == a.phi);
  CHECK(a1.psi == a.psi);
}

TEST_CASE("generate_prefix reproduces the fixed points with provenance") {
  MorphicSystem c = fixture("fix_c.morph");
  ProvenancePrefix pc = generate_prefix(c, 19);
  CHECK(render(c, Word(pc.text().begin(), pc.text().begin() + 19)) == "abbbccbccbccccbcccc");
  CHECK(pc.parent(0) == 0);
  CHECK(pc.parent(1) == 0);
  CHECK(pc.parent(3) == 1);

  MorphicSystem a = fixture("fix_a.morph");
  ProvenancePrefix pa = generate_prefix(a, 27);
  CHECK(render(a, Word(pa.text().begin(), pa.text().begin() + 27)) == "433232213221211322121121113");
}

TEST_CASE("prefix invariants: fixed point, length bounds, parent monotone") {
  for (const char* name : {"fix_a.morph", "fix_b.morph", "fix_c.morph", "fix_d.morph", "fix_e.morph"}) {
    CAPTURE(name);
    MorphicSystem s = fixture(name);
    const std::int64_t n = 4000;
    ProvenancePrefix p = generate_prefix(s, n);
    CHECK(p.size() >= n);
    CHECK(p.size() <= n * static_cast<std::int64_t>(s.max_image_len));
    // text is a prefix of phi(text), up to the last complete image
    Word img = apply_morphism(s, p.text());
    std::int64_t limit = std::min<std::int64_t>(p.size(), static_cast<std::int64_t>(img.size()));
    for (std::int64_t i = 0; i < limit; ++i) CHECK(img[static_cast<std::size_t>(i)] == p.at(i));
    // parent map: nondecreasing, image spans concatenate
    for (std::int64_t i = 1; i < p.size(); ++i) CHECK(p.parent(i - 1) <= p.parent(i));
    std::int64_t expect_start = 0;
    for (std::int64_t q = 0;; ++q) {
      auto sp = p.image_span(q);
      if (!sp) break;
      CHECK(sp->start == expect_start);
      CHECK(p.slice(*sp) == s.image(p.at(q)));
      expect_start = sp->end + 1;
    }
  }
}

TEST_CASE("power/apply oracle equivalence on short words") {
  for (const char* name : {"fix_a.morph", "fix_b.morph", "fix_c.morph", "fix_d.morph"}) {
    MorphicSystem s = fixture(name);
    for (int m : {2, 3}) {
      MorphicSystem sm = morphism_power(s, m);
      // all words of length <= 3 over the alphabet, plus a few longer ones
      std::vector<Word> words;
      for (std::size_t x = 0; x < s.size(); ++x) {
        words.push_back({static_cast<Letter>(x)});
        for (std::size_t y = 0; y < s.size(); ++y)
          words.push_back({static_cast<Letter>(x), static_cast<Letter>(y)});
      }
      words.push_back(s.image(s.axiom));
      for (const Word& word : words) {
        Word direct = apply_morphism(sm, word);
        Word iterated = word;
        for (int t = 0; t < m; ++t) iterated = apply_morphism(s, iterated);
        CHECK(direct == iterated);
      }
    }
  }
}
