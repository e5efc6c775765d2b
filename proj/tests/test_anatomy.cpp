#include <doctest.h>

#include "morphan/analyzer.hpp"
#include "morphan/normalization.hpp"
#include "morphan/errors.hpp"
#include "test_helpers.hpp"

using namespace morphan;
using namespace morphan::test;

namespace {

std::string chain_word(const MorphicSystem& s, EvolutionChain& chain, int member, VSpan span) {
  const Word& v = chain.member_v(member);
  Word out;
  for (std::int32_t p = span.lo; p <= span.hi; ++p) out.push_back(v[static_cast<std::size_t>(p)]);
  return s.alphabet.render(out);
}

// The paper's SS6 running example evolution: 2-blocks with origin D (raw phi).
EvolutionChain fix_e_d_evolution(const MorphicSystem& e, const std::vector<LetterProfile>& pr) {
  for (const auto& t : origin_closure(e, pr, 2))
    if (e.alphabet.render(t.w0) == "D") return EvolutionChain(e, pr, 2, t);
  REQUIRE(false);
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("FIX-E golden anatomy strings (raw system, as the paper computes them)") {
  MorphicSystem e = fixture("fix_e.morph");
  auto pr = letter_profiles(e);
  EvolutionChain chain = fix_e_d_evolution(e, pr);

  CHECK_FALSE(chain.case_left_I());
  CHECK(chain.case_right_I());

  for (int l : {6, 8, 11}) {
    CAPTURE(l);
    ChainAnatomy a = chain.anatomy(l);
    CHECK(chain_word(e, chain, l, a.left_preperiod).empty());
    CHECK(chain_word(e, chain, l, a.right_preperiod) == "cEEeeeeeeEEcEEeeEEcEEC");

    KernelSet ck = chain.central_kernels(l);
    std::vector<std::string> kernels;
    for (const VSpan& c : ck.composite) kernels.push_back(chain_word(e, chain, l, c));
    CHECK(kernels == std::vector<std::string>{"EE", "eeff", "FFdFF", "ff", "EEcEE", "ee", "EE"});

    // 12 prime kernels of the singleton 2-multiblock
    const Word& v = chain.member_v(l);
    KernelSet full = chain.kernels(l, 2, {1, static_cast<std::int32_t>(v.size()) - 2}, true, true);
    std::vector<std::string> prime;
    for (const VSpan& p : full.prime) prime.push_back(chain_word(e, chain, l, p));
    CHECK(prime == std::vector<std::string>{"EE", "eeff", "FF", "d", "FF", "ff", "EE", "c", "EE",
                                            "ee", "EE", "cEEeeeeeeEEcEEeeEEcEEC"});
  }
}

TEST_CASE("FIX-E golden atoms") {
  MorphicSystem e = fixture("fix_e.morph");
  auto pr = letter_profiles(e);
  EvolutionChain chain = fix_e_d_evolution(e, pr);
  const int l = 8;
  auto atoms = chain.atoms(l);
  REQUIRE(static_cast<int>(atoms.right.size()) == l);
  // l-th right atom is C; (l-1)-th is cEE; inward the 1-block grows by 4 e's.
  CHECK(chain_word(e, chain, l, atoms.right[static_cast<std::size_t>(l - 1)]) == "C");
  CHECK(chain_word(e, chain, l, atoms.right[static_cast<std::size_t>(l - 2)]) == "cEE");
  CHECK(chain_word(e, chain, l, atoms.right[static_cast<std::size_t>(l - 3)]) == "cEEeeEE");
  CHECK(chain_word(e, chain, l, atoms.right[static_cast<std::size_t>(l - 4)]) == "cEEeeeeeeEE");
  CHECK(chain_word(e, chain, l, atoms.right[static_cast<std::size_t>(l - 5)]) == "cEEeeeeeeeeeeEE");
  // zeroth atom shape: EE e..e ff..f FF d FF f..f e..e EE (counts grow with l)
  std::string zeroth = chain_word(e, chain, l, atoms.zeroth);
  CHECK(zeroth.substr(0, 2) == "EE");
  CHECK(zeroth.find("FFdFF") != std::string::npos);
  CHECK(zeroth.substr(zeroth.size() - 2) == "EE");
  // concatenation of all atoms tiles the block
  std::string tiled;
  for (auto it = atoms.left.rbegin(); it != atoms.left.rend(); ++it)
    tiled += chain_word(e, chain, l, *it);
  tiled += zeroth;
  for (const auto& r : atoms.right) tiled += chain_word(e, chain, l, r);
  CHECK(tiled == chain_word(e, chain, l, {1, static_cast<std::int32_t>(chain.member_v(l).size()) - 2}));
}

TEST_CASE("atom stability: diagonal atoms agree for l >= 2") {
  for (const char* name : {"fix_d.morph", "fix_e.morph"}) {
    CAPTURE(name);
    auto [nsys, rep] = normalize(fixture(name));
    auto pr = letter_profiles(nsys);
    int kmax = pr[static_cast<std::size_t>(nsys.axiom)].order - 2;
    for (int k = 1; k <= kmax; ++k) {
      for (const auto& t : origin_closure(nsys, pr, k)) {
        EvolutionChain chain(nsys, pr, k, t);
        const int top = 3 * k + 6;
        chain.ensure_depth(top);
        for (int m = 0; m <= 3; ++m) {
          std::optional<std::string> left_word, right_word;
          for (int l = 2; l + m <= top; ++l) {
            auto atoms = chain.atoms(l + m);
            std::string lw = chain_word(nsys, chain, l + m, atoms.left[static_cast<std::size_t>(l - 1)]);
            std::string rw = chain_word(nsys, chain, l + m, atoms.right[static_cast<std::size_t>(l - 1)]);
            if (left_word) {
              CHECK(*left_word == lw);
              CHECK(*right_word == rw);
            }
            left_word = lw;
            right_word = rw;
          }
        }
      }
    }
  }
}

TEST_CASE("preperiod and kernel stability for l >= 3k; kernel non-overlap; growth") {
  for (const char* name : {"fix_d.morph", "fix_e.morph"}) {
    CAPTURE(name);
    auto [nsys, rep] = normalize(fixture(name));
    auto pr = letter_profiles(nsys);
    FinalPeriodSet fps = compute_final_periods(nsys, pr);
    int kmax = pr[static_cast<std::size_t>(nsys.axiom)].order - 2;
    for (int k = 1; k <= kmax; ++k) {
      for (const auto& t : origin_closure(nsys, pr, k)) {
        CAPTURE(nsys.alphabet.render(t.w0));
        EvolutionChain chain(nsys, pr, k, t);
        const int top = 3 * k + 5;
        chain.ensure_depth(top);
        std::optional<std::string> lprep, rprep;
        std::optional<std::vector<std::string>> kernels;
        std::int64_t prev_lr = -1, prev_rr = -1, prev_len = -1;
        for (int l = 3 * k; l <= top; ++l) {
          ChainAnatomy a = chain.anatomy(l);
          std::string lp = chain_word(nsys, chain, l, a.left_preperiod);
          std::string rp = chain_word(nsys, chain, l, a.right_preperiod);
          if (lprep) {
            CHECK(*lprep == lp);
            CHECK(*rprep == rp);
          }
          lprep = lp;
          rprep = rp;

          KernelSet ck = chain.central_kernels(l);
          std::vector<std::string> kw;
          for (const VSpan& c : ck.composite) kw.push_back(chain_word(nsys, chain, l, c));
          if (kernels) CHECK(*kernels == kw);
          kernels = kw;

          // prime kernels pairwise non-overlapping and sorted
          const Word& v = chain.member_v(l);
          KernelSet full = chain.kernels(l, k, {1, static_cast<std::int32_t>(v.size()) - 2}, true, true);
          for (std::size_t x = 0; x + 1 < full.prime.size(); ++x)
            CHECK(full.prime[x].hi < full.prime[x + 1].lo);
          // composite kernels + pseudoregular parts tile the forgetful occurrence
          if (!full.composite.empty()) {
            CHECK(full.composite.front().lo == 1);
            CHECK(full.composite.back().hi == static_cast<std::int32_t>(v.size()) - 2);
            for (const VSpan& g : full.pseudoregular) CHECK(g.length() > 0);
          }

          // growth under Case I
          if (chain.case_left_I()) {
            CHECK(a.left_regular.length() >= 2 * static_cast<std::int64_t>(fps.L));
            if (prev_lr >= 0) CHECK(a.left_regular.length() > prev_lr);
            prev_lr = a.left_regular.length();
          } else {
            CHECK(a.left_regular.length() == 0);
          }
          if (chain.case_right_I()) {
            CHECK(a.right_regular.length() >= 2 * static_cast<std::int64_t>(fps.L));
            if (prev_rr >= 0) CHECK(a.right_regular.length() > prev_rr);
            prev_rr = a.right_regular.length();
          } else {
            CHECK(a.right_regular.length() == 0);
          }
          if (chain.case_left_I() || chain.case_right_I()) {
            if (prev_len >= 0) CHECK(a.block.length() > prev_len);
            prev_len = a.block.length();
          }
        }
      }
    }
  }
}

TEST_CASE("stable 1-blocks have exactly one composite central kernel, equal to the core") {
  for (const char* name : {"fix_c.morph", "fix_d.morph", "fix_e.morph"}) {
    CAPTURE(name);
    auto [nsys, rep] = normalize(fixture(name));
    auto pr = letter_profiles(nsys);
    for (const auto& t : origin_closure(nsys, pr, 1)) {
      EvolutionChain chain(nsys, pr, 1, t);
      chain.ensure_depth(5);
      ChainAnatomy a = chain.anatomy(4);
      KernelSet ck = chain.central_kernels(4);
      REQUIRE(ck.composite.size() == 1);
      CHECK(ck.composite[0] == a.core);
    }
  }
}

TEST_CASE("occurrence-level anatomy agrees with chains on observed members") {
  MorphicSystem e = fixture("fix_e.morph");
  PrefixAnalyzer an(e, letter_profiles(e), generate_prefix(e, 20000));
  auto& evos = const_cast<std::vector<EvolutionRecord>&>(an.evolutions(2));
  int stable_seen = 0;
  for (auto& ev : evos) {
    for (auto& [seq, occ] : ev.members) {
      if (seq < 6 || seq > 9) continue;
      auto anat = an.anatomy_of(ev, seq);
      CHECK(anat.block == occ);
      // the pieces tile the block
      CHECK(anat.left_preperiod.start == occ.start);
      CHECK(anat.left_regular.start == anat.left_preperiod.end + 1);
      CHECK(anat.core.start == anat.left_regular.end + 1);
      CHECK(anat.right_regular.start == anat.core.end + 1);
      CHECK(anat.right_preperiod.start == anat.right_regular.end + 1);
      CHECK(anat.right_preperiod.end == occ.end);
      ++stable_seen;
    }
  }
  CHECK(stable_seen >= 4);
}

TEST_CASE("FIX-E prefix kernels of the singleton multiblock (12 prime kernels)") {
  MorphicSystem e = fixture("fix_e.morph");
  PrefixAnalyzer an(e, letter_profiles(e), generate_prefix(e, 20000));
  auto& evos = const_cast<std::vector<EvolutionRecord>&>(an.evolutions(2));
  for (auto& ev : evos) {
    if (render(e, ev.origin.w0) != "D") continue;
    for (auto& [seq, occ] : ev.members) {
      if (seq != 7) continue;
      Multiblock mb{2, occ.start, occ.end, true, true};
      auto ks = an.kernels_of(mb);
      CHECK(ks.prime.size() == 12);
      std::vector<std::string> words;
      for (const auto& p : ks.prime) words.push_back(render(e, an.prefix().slice(p)));
      CHECK(words == std::vector<std::string>{"EE", "eeff", "FF", "d", "FF", "ff", "EE", "c", "EE",
                                              "ee", "EE", "cEEeeeeeeEEcEEeeEEcEEC"});
      CHECK(ks.composite.size() == 8);
    }
  }
}

TEST_CASE("kernel edge cases") {
  MorphicSystem e = fixture("fix_e.morph");
  auto pr = letter_profiles(e);
  PrefixAnalyzer an(e, pr, generate_prefix(e, 20000));
  // a single periodic order-(k+1) letter is its own prime kernel: letter d at
  // alpha, inside a 1-multiblock
  const auto& text = an.prefix().text();
  for (std::int64_t p = 0; p < 200; ++p) {
    if (e.alphabet.name_of(text[static_cast<std::size_t>(p)]) != "d") continue;
    Multiblock mb{1, p, p, false, false};
    auto ks = an.kernels_of(mb);
    REQUIRE(ks.prime.size() == 1);
    CHECK(ks.prime[0] == Occurrence{p, p});
    break;
  }
  // anatomy of an unstable member throws NotStable
  auto& evos = const_cast<std::vector<EvolutionRecord>&>(an.evolutions(2));
  for (auto& ev : evos) {
    if (ev.members.count(2)) {
      CHECK_THROWS_AS(an.anatomy_of(ev, 2), Error);
      break;
    }
  }
}

TEST_CASE("0-multiblocks are their own prime kernels") {
  MorphicSystem e = fixture("fix_e.morph");
  PrefixAnalyzer an(e, letter_profiles(e), generate_prefix(e, 1000));
  Multiblock empty0{0, 5, 4, true, true};
  auto k0 = an.kernels_of(empty0);
  REQUIRE(k0.prime.size() == 1);
  CHECK(k0.prime[0] == Occurrence{5, 4});
  Multiblock span0{0, 3, 7, true, true};
  auto k1 = an.kernels_of(span0);
  REQUIRE(k1.prime.size() == 1);
  CHECK(k1.prime[0] == Occurrence{3, 7});
}

TEST_CASE("stable empty k-blocks keep one empty prime kernel") {
  // FIX-B normalized: the k=3 evolution with empty origin stays empty forever.
  auto [nsys, rep] = normalize(fixture("fix_b.morph"));
  auto pr = letter_profiles(nsys);
  for (const auto& t : origin_closure(nsys, pr, 3)) {
    if (!t.w0.empty()) continue;
    EvolutionChain chain(nsys, pr, 3, t);
    chain.ensure_depth(10);
    if (chain.member_word(10).empty()) {
      const Word& v = chain.member_v(10);
      KernelSet ks = chain.kernels(10, 3, {1, static_cast<std::int32_t>(v.size()) - 2}, true, true);
      REQUIRE(ks.prime.size() == 1);
      CHECK(ks.prime[0].empty());
    }
  }
}
