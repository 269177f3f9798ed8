#include <doctest.h>

#include <stdexcept>

#include <random>

#include "treeshift/openness.hpp"

using namespace treeshift;

TEST_CASE("image_prefix is the forced subtree window") {
  Block b = constant_block(2, 3, 0);
  b.at({1}) = 1;
  CHECK(image_prefix(b, 1) == restrict_block(b, {1}, 2));
  CHECK_THROWS_AS(image_prefix(constant_block(2, 1, 0), 0), std::invalid_argument);
  CHECK_THROWS_AS(image_prefix(b, 2), std::invalid_argument);
}

TEST_CASE("sft_preimage_witness glues and certifies") {
  const auto& e = golden_mean_tree_sft().engine();
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    TruncatedTree r = e.sample_tree(5, rng);
    Block b = restrict_block(r.body, {}, 3);
    // An independent s agreeing with sigma^0(r) on 3 levels.
    TruncatedTree shifted = shift_tree(r, 0);
    auto s = e.complete_prefix(restrict_block(shifted.body, {}, 3), 4, &rng);
    REQUIRE(s.has_value());
    TruncatedTree q = sft_preimage_witness(e, 0, b, r, *s);
    CHECK(e.certify(q) == Verdict::InX);
    CHECK(cylinder_match(q, b));
    CHECK(restrict_block(shift_tree(q, 0).body, {}, 4) == s->body);
  }
}

TEST_CASE("sft_preimage_witness validates its inputs") {
  const auto& e = golden_mean_tree_sft().engine();
  std::mt19937_64 rng(8);
  TruncatedTree r = e.sample_tree(5, rng);
  Block b = restrict_block(r.body, {}, 3);
  TruncatedTree s = shift_tree(r, 0);
  Block wrong = b;
  wrong.at({}) = static_cast<Label>(1 - wrong.at({}));
  CHECK_THROWS_AS(sft_preimage_witness(e, 0, wrong, r, s), std::invalid_argument);
  Block low = restrict_block(r.body, {}, 2);
  CHECK_THROWS_AS(sft_preimage_witness(e, 0, low, r, s), std::invalid_argument);  // height == p
}

TEST_CASE("every SFT fixture is certified open at small heights") {
  for (const char* name : {"full", "golden-mean", "singleton", "golden-mean-string"}) {
    auto shift = builtin_shift(name);
    const auto& e = shift.engine();
    for (int m = 1; m <= 3; ++m) {
      for (const auto& b : e.block_language(m)) {
        for (int i = 0; i < shift.alphabets().arity; ++i) {
          auto rep = bounded_openness_check(shift, i, b, std::max(m, 4));
          CHECK(rep.verdict == OpennessVerdict::OpenCertified);
          if (rep.witness) {
            CHECK(e.certify(*rep.witness) == Verdict::InX);
            CHECK(cylinder_match(*rep.witness, b));
          }
        }
      }
    }
  }
}

TEST_CASE("one-zero-row witness construction follows the bespoke rule") {
  auto shift = one_zero_row_shift();
  Block b = constant_block(2, 2, 1);
  b.at({0}) = 0;
  // Candidate image block continuing the 0-subtree of b.
  Block c = constant_block(2, 2, 1);
  c.at({1}) = 0;
  c.at({}) = b.at({0});
  TruncatedTree s = as_tree(c);
  Block tt = constant_block(2, 3, 1);
  for (const auto& w : words_below(2, 2)) tt.at(w) = b.at(w);
  tt.at({0, 0}) = c.at({0});
  tt.at({0, 1}) = c.at({1});
  TruncatedTree t_tilde = as_tree(tt);
  REQUIRE(shift.certify(t_tilde) == Verdict::InX);
  TruncatedTree r = one_zero_row_witness(shift, 0, b, s, t_tilde);
  CHECK(shift.certify(r) == Verdict::InX);
  CHECK(cylinder_match(r, b));
  CHECK(restrict_block(shift_tree(r, 0).body, {}, 2) == c);
  // Off the 0-subtree everything below b is filled with ones.
  CHECK(r.body.at({1, 0}) == 1);
  CHECK(r.body.at({1, 1}) == 1);
}

TEST_CASE("one-zero-row shift maps are certified open on all small blocks") {
  auto shift = one_zero_row_shift();
  for (int n = 1; n <= 3; ++n) {
    for (const auto& b : shift.language(n)) {
      for (int i = 0; i < 2; ++i) {
        auto rep = bounded_openness_check(shift, i, b, std::max(n, 4));
        CHECK(rep.verdict == OpennessVerdict::OpenCertified);
      }
    }
  }
}

TEST_CASE("the single-zero shift has a refuted shift map") {
  auto shift = at_most_one_zero_shift();
  // Root zero: the 0-image is the all-ones singleton, whose cylinder
  // refinements leave the image.
  Block b = constant_block(2, 2, 1);
  b.at({}) = 0;
  auto rep = bounded_openness_check(shift, 0, b, 3);
  CHECK(rep.verdict == OpennessVerdict::NotOpenWitness);
  REQUIRE(rep.inside_block.has_value());
  REQUIRE(rep.outside_block.has_value());
  // Replay the witness: the inside block extends into the image, the
  // outside refinement never occurs as an image window.
  CHECK(rep.inside_block->labels == constant_block(2, 3, 1).labels);
  CHECK(restrict_block(*rep.outside_block, {}, 3) == *rep.inside_block);
  bool outside_reachable = false;
  for (const auto& a : shift.language(5)) {
    if (!(restrict_block(a, {}, 2) == b)) continue;
    if (restrict_block(a, {0}, 4) == *rep.outside_block) outside_reachable = true;
  }
  CHECK(!outside_reachable);
}

TEST_CASE("openness check rejects blocks outside the language") {
  auto shift = golden_mean_tree_sft();
  Block bad = constant_block(2, 2, 1);  // 1 over 1
  CHECK_THROWS_AS(bounded_openness_check(shift, 0, bad, 4), std::invalid_argument);
}
