#include <doctest.h>

#include <stdexcept>

#include <set>

#include "treeshift/families.hpp"

using namespace treeshift;

TEST_CASE("builtin roster") {
  for (const auto& name : builtin_shift_names()) {
    auto shift = builtin_shift(name);
    CHECK(shift.name() == name);
    CHECK(shift.block_count(2) >= 1);
  }
  CHECK_THROWS_AS(builtin_shift("nope"), std::invalid_argument);
}

TEST_CASE("one-zero-row language counts follow the product formula") {
  auto shift = one_zero_row_shift();
  CHECK(shift.block_count(1) == 2);
  CHECK(shift.block_count(2) == 6);
  CHECK(shift.block_count(3) == 30);
  CHECK(shift.block_count(4) == 270);  // prod_{k<4} (2^k + 1)
  // Brute force over all height-3 blocks.
  std::uint64_t brute = 0;
  for_each_block(shift.alphabets(), 3, 1 << 10, [&](const Block& b) {
    if (shift.in_language(b)) ++brute;
  });
  CHECK(brute == 30);
}

TEST_CASE("oracle language enumerations are exact, sorted and certified") {
  for (const char* name : {"one-zero-row", "at-most-one-zero"}) {
    auto shift = builtin_shift(name);
    for (int n = 1; n <= 4; ++n) {
      auto lang = shift.language(n);
      std::set<std::vector<Label>> distinct;
      for (const auto& b : lang) {
        CHECK(shift.certify(as_tree(b)) == Verdict::InX);
        distinct.insert(b.labels);
      }
      CHECK(distinct.size() == lang.size());
      for (std::size_t i = 1; i < lang.size(); ++i) CHECK(block_less(lang[i - 1], lang[i]));
      // Exactness against brute force.
      std::uint64_t brute = 0;
      for_each_block(shift.alphabets(), n, 1 << 20, [&](const Block& b) {
        if (shift.certify(as_tree(b)) == Verdict::InX) ++brute;
      });
      CHECK(brute == lang.size());
    }
  }
}

TEST_CASE("oracle construction self-tests shift invariance") {
  // Certify depends on the root label only: not shift-invariant, the
  // constructor must refuse it.
  auto bad_certify = [](const TruncatedTree& t) {
    return t.body.root() == 0 ? Verdict::InX : Verdict::NotInX;
  };
  auto bad_language = [](int n) {
    std::vector<Block> out;
    Block b = constant_block(2, n, 1);
    b.at({}) = 0;
    out.push_back(std::move(b));
    return out;
  };
  CHECK_THROWS_AS(ShiftSpec::oracle("bad", Alphabets{2, {"0", "1"}}, bad_certify, bad_language),
                  std::logic_error);
}

TEST_CASE("non_sft_witness defeats every window check but fails membership") {
  auto shift = one_zero_row_shift();
  for (int n = 1; n <= 5; ++n) {
    TruncatedTree t = non_sft_witness(n);
    CHECK(t.depth() == n + 2);
    CHECK(shift.certify(t) == Verdict::NotInX);  // two zeros share level n+1
    for (const auto& w : words_below(2, t.depth() - n + 1))
      CHECK(shift.in_language(restrict_block(t.body, w, n)));
  }
}

TEST_CASE("approximation gap: none for finite type, persistent for one-zero-row") {
  auto gm = golden_mean_tree_sft();
  CHECK(sft_approximation_gap(gm, 2).verdict == OpennessVerdict::OpenCertified);
  CHECK(sft_approximation_gap(gm, 5).verdict == OpennessVerdict::OpenCertified);
  CHECK(sft_approximation_gap(gm, 1).verdict == OpennessVerdict::Inconclusive);

  auto ozr = one_zero_row_shift();
  for (int n = 1; n <= 5; ++n) {
    auto rep = sft_approximation_gap(ozr, n);
    CHECK(rep.verdict == OpennessVerdict::NotOpenWitness);
    REQUIRE(rep.witness.has_value());
    CHECK(ozr.certify(*rep.witness) == Verdict::NotInX);
  }
}

TEST_CASE("finite-type accessors guard oracle shifts") {
  auto ozr = one_zero_row_shift();
  CHECK(!ozr.finite_type_presentation());
  CHECK_THROWS_AS(ozr.engine(), std::logic_error);
  auto full = full_shift();
  CHECK(full.finite_type_presentation());
  CHECK(full.engine().height() == 1);
}
