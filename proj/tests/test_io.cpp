#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <random>
#include <sstream>

#include "treeshift/io.hpp"

using namespace treeshift;

TEST_CASE("forbidden-set files round-trip") {
  auto gm = golden_mean_tree_sft();
  std::stringstream buf;
  save_sft(buf, gm.engine().sft());
  NormalizedSft back = load_sft(buf);
  CHECK(back.alphabets == gm.engine().sft().alphabets);
  CHECK(back.height == gm.engine().sft().height);
  CHECK(back.forbidden == gm.engine().sft().forbidden);
  auto e = SftEngine::build(std::move(back));
  CHECK(e.block_count(3) == 41);
}

TEST_CASE("pattern stanzas normalize to the header height") {
  std::stringstream buf;
  buf << "arity=2 labels=0,1 height=2\n"
      << "# no node labeled 1 may have a 1-child\n"
      << "pattern e:1 0:1\n"
      << "pattern e:1 1:1\n";
  auto e = SftEngine::build(load_sft(buf));
  CHECK(e.viable().size() == 5);
  CHECK(e.block_count(3) == 41);
}

TEST_CASE("block lines shallower than the height are widened") {
  std::stringstream buf;
  buf << "arity=2 labels=0,1 height=2\n"
      << "1\n";  // forbid label 1 anywhere
  auto e = SftEngine::build(load_sft(buf));
  CHECK(e.block_count(4) == 1);  // the all-zero shift
}

TEST_CASE("malformed forbidden-set files report the line") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    std::stringstream buf(text);
    try {
      (void)load_sft(buf);
      FAIL("expected a parse error for: " << text);
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error("", "empty");
  expect_error("arity=2 labels=0,1\n", "height");
  expect_error("arity=2 labels=0,1 height=x\n", "integer");
  expect_error("arity=2 labels=0,1 height=2\n0 2 0\n", "line 2");
  expect_error("arity=2 labels=0,1 height=2\npattern e=1\n", "word:label");
  expect_error("arity=2 labels=0,1 height=1\npattern e:1 0:1\n", "deeper");
}

TEST_CASE("orbit files round-trip") {
  const auto& e = golden_mean_tree_sft().engine();
  std::mt19937_64 rng(19);
  auto f = perturb_orbit(e, e.sample_tree(8, rng), 3, 4, 2, rng);
  std::stringstream buf;
  save_orbit(buf, f);
  PseudoOrbitFamily back = load_orbit(buf);
  CHECK(back.order == f.order);
  CHECK(back.entry_depth == f.entry_depth);
  CHECK(back.resolution == f.resolution);
  CHECK(back.entries == f.entries);
}

TEST_CASE("orbit files demand a complete, consistent index set") {
  std::string header = "arity=2 labels=0,1 order=2 depth=2 resolution=1\n";
  std::string e0 = "e: 0 0 0\n", e1 = "0: 0 0 0\n", e2 = "1: 0 0 0\n";
  {
    std::stringstream buf(header + e0 + e1);
    CHECK_THROWS_WITH_AS(load_orbit(buf), doctest::Contains("missing entry"),
                         std::runtime_error);
  }
  {
    std::stringstream buf(header + e0 + e1 + e1 + e2);
    CHECK_THROWS_WITH_AS(load_orbit(buf), doctest::Contains("duplicate"), std::runtime_error);
  }
  {
    std::stringstream buf(header + e0 + e1 + "1: 0 0\n");
    CHECK_THROWS_WITH_AS(load_orbit(buf), doctest::Contains("line 4"), std::runtime_error);
  }
  {
    std::stringstream buf(header + e0 + e1 + "11: 0 0 0\n" + e2);
    CHECK_THROWS_WITH_AS(load_orbit(buf), doctest::Contains("beyond the order"),
                         std::runtime_error);
  }
}

TEST_CASE("shift_from_file names the shift after the stem") {
  auto gm = golden_mean_tree_sft();
  std::string path = "gm_roundtrip.sft";
  save_sft_file(path, gm.engine().sft());
  auto shift = shift_from_file(path);
  CHECK(shift.name() == "gm_roundtrip");
  CHECK(shift.block_count(3) == 41);
  std::remove(path.c_str());
}
