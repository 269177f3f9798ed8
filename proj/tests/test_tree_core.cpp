#include <doctest.h>

#include <stdexcept>

#include <random>
#include <set>

#include "treeshift/tree.hpp"

using namespace treeshift;

namespace {
const Alphabets kBinary{2, {"0", "1"}};
const Alphabets kUnary{1, {"0", "1"}};

TruncatedTree random_tree(const Alphabets& a, int depth, std::mt19937_64& rng) {
  Block b = constant_block(a.arity, depth, 0);
  std::uniform_int_distribution<int> pick(0, a.label_count() - 1);
  for (auto& l : b.labels) l = static_cast<Label>(pick(rng));
  return as_tree(std::move(b));
}
}  // namespace

TEST_CASE("node_count") {
  CHECK(node_count(2, 1) == 1);
  CHECK(node_count(2, 3) == 7);
  CHECK(node_count(3, 3) == 13);
  CHECK(node_count(1, 5) == 5);
}

TEST_CASE("word formatting round-trips") {
  CHECK(format_word({}) == "e");
  CHECK(format_word({0, 1, 1}) == "011");
  CHECK(parse_word("e", 2) == Word{});
  CHECK(parse_word("011", 2) == Word{0, 1, 1});
  CHECK_THROWS_AS(parse_word("02", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("0x", 2), std::invalid_argument);
}

TEST_CASE("bfs numbering is level/lex and self-inverse") {
  CHECK(bfs_index({}, 2) == 0);
  CHECK(bfs_index({0}, 2) == 1);
  CHECK(bfs_index({1}, 2) == 2);
  CHECK(bfs_index({0, 0}, 2) == 3);
  CHECK(bfs_index({1, 1}, 2) == 6);
  for (std::size_t i = 0; i < node_count(3, 4); ++i)
    CHECK(bfs_index(word_at(i, 3, 4), 3) == i);
  auto all = words_below(2, 3);
  REQUIRE(all.size() == 7);
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(bfs_index(all[i], 2) == i);
}

TEST_CASE("restrict and assemble invert each other") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    TruncatedTree t = random_tree(kBinary, 4, rng);
    std::vector<Block> subs;
    for (int i = 0; i < 2; ++i)
      subs.push_back(restrict_block(t.body, {static_cast<std::uint8_t>(i)}, 3));
    CHECK(assemble_block(t.body.root(), subs) == t.body);
  }
}

TEST_CASE("restrict_block reads the right window") {
  Block b = constant_block(2, 3, 0);
  b.at({1}) = 1;
  b.at({1, 0}) = 1;
  Block w = restrict_block(b, {1}, 2);
  CHECK(w.root() == 1);
  CHECK(w.at({0}) == 1);
  CHECK(w.at({1}) == 0);
  CHECK_THROWS_AS(restrict_block(b, {1}, 3), std::invalid_argument);
}

TEST_CASE("shift drops a level and shift_tree_word composes") {
  std::mt19937_64 rng(5);
  TruncatedTree t = random_tree(kBinary, 5, rng);
  CHECK(shift_tree(t, 0).depth() == 4);
  CHECK(shift_tree(shift_tree(t, 0), 1) == shift_tree_word(t, {0, 1}));
  // sigma^w reads the subtree at w.
  for (const auto& w : words_below(2, 3))
    if (w.size() == 2)
      CHECK(shift_tree_word(t, w).body == restrict_block(t.body, w, 3));
  TruncatedTree shallow = as_tree(constant_block(2, 1, 0));
  CHECK_THROWS_AS(shift_tree(shallow, 0), std::invalid_argument);
}

TEST_CASE("distance_level matches the metric convention") {
  Block a = constant_block(2, 3, 0);
  Block b = a;
  CHECK(distance_level(as_tree(a), as_tree(b)) == std::nullopt);
  b.at({1, 0}) = 1;
  CHECK(distance_level(as_tree(a), as_tree(b)) == 2);
  b = a;
  b.at({}) = 1;
  b.at({1, 1}) = 1;
  CHECK(distance_level(as_tree(a), as_tree(b)) == 0);
}

TEST_CASE("cylinder_match is prefix agreement") {
  std::mt19937_64 rng(17);
  TruncatedTree t = random_tree(kBinary, 4, rng);
  CHECK(cylinder_match(t, restrict_block(t.body, {}, 2)));
  Block b = restrict_block(t.body, {}, 2);
  b.at({0}) = static_cast<Label>(1 - b.at({0}));
  CHECK(!cylinder_match(t, b));
}

TEST_CASE("block text round-trips") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    TruncatedTree t = random_tree(kBinary, 3, rng);
    CHECK(block_from_text(block_to_text(t.body, kBinary), kBinary) == t.body);
  }
  CHECK_THROWS_AS(block_from_text("0 1", kBinary), std::invalid_argument);   // not a full tree
  CHECK_THROWS_AS(block_from_text("0 2 1", kBinary), std::invalid_argument); // unknown label
}

TEST_CASE("for_each_block enumerates ascending and respects the budget") {
  std::vector<Block> seen;
  for_each_block(kBinary, 2, 64, [&](const Block& b) { seen.push_back(b); });
  CHECK(seen.size() == 8);
  for (std::size_t i = 1; i < seen.size(); ++i) CHECK(block_less(seen[i - 1], seen[i]));
  std::set<std::vector<Label>> distinct;
  for (const auto& b : seen) distinct.insert(b.labels);
  CHECK(distinct.size() == 8);
  CHECK_THROWS_AS(for_each_block(kBinary, 3, 10, [](const Block&) {}), std::length_error);
}

TEST_CASE("unary alphabet behaves like strings") {
  CHECK(node_count(1, 4) == 4);
  Block b = make_block(1, 3, {0, 1, 0});
  CHECK(b.at({0, 0}) == 0);
  CHECK(restrict_block(b, {0}, 2) == make_block(1, 2, {1, 0}));
}

TEST_CASE("alphabet validation") {
  CHECK_THROWS_AS(validate_alphabets(Alphabets{0, {"0"}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_alphabets(Alphabets{2, {}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_alphabets(Alphabets{2, {"a", "a"}}), std::invalid_argument);
}
