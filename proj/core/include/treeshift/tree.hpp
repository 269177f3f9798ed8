#pragma once

// Words over the direction alphabet, blocks (finite labeled trees in
// canonical level/lexicographic order) and depth-truncated trees.
// Everything downstream (forbidden sets, pseudo-orbits, witnesses) is
// expressed in terms of these types.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace treeshift {

using Label = std::uint8_t;

// Direction alphabet Sigma (0..arity-1) plus the label symbol table.
// Labels are small integers internally; `labels` carries the display
// symbols used by the text formats.
struct Alphabets {
  int arity = 0;
  std::vector<std::string> labels;

  int label_count() const { return static_cast<int>(labels.size()); }
  bool operator==(const Alphabets&) const = default;
};

// Throws std::invalid_argument unless arity >= 1, labels are non-empty
// and pairwise distinct.
void validate_alphabets(const Alphabets& a);

// A word is a sequence of directions; the empty vector is epsilon.
using Word = std::vector<std::uint8_t>;

std::string format_word(const Word& w);   // epsilon spelled "e"
Word parse_word(const std::string& text, int arity);

// Number of nodes of the full arity-ary tree with `height` levels,
// i.e. |Sigma^{<height}|.
std::uint64_t node_count(int arity, int height);

// Canonical node numbering: by level, lexicographically within a level.
// bfs_index(epsilon) == 0.
std::size_t bfs_index(const Word& w, int arity);

// Inverse of bfs_index for nodes of Sigma^{<height}.
Word word_at(std::size_t index, int arity, int height);

// All words shorter than `height`, in canonical order.
std::vector<Word> words_below(int arity, int height);

// A complete labeling of Sigma^{<height}, stored in canonical order.
struct Block {
  int arity = 0;
  int height = 0;
  std::vector<Label> labels;

  Label at(const Word& w) const { return labels[bfs_index(w, arity)]; }
  Label& at(const Word& w) { return labels[bfs_index(w, arity)]; }
  Label root() const { return labels[0]; }

  bool operator==(const Block&) const = default;
};

// Canonical block order: height first, then labels lexicographically
// (which is the level/lex node order).
bool block_less(const Block& a, const Block& b);

Block make_block(int arity, int height, std::vector<Label> labels);
Block constant_block(int arity, int height, Label fill);

// Sub-block c with c_u = b_{at.u} for u in Sigma^{<height}.
// Requires |at| + height <= b.height and height >= 1.
Block restrict_block(const Block& b, const Word& at, int height);

// Root label plus one subtree per direction, each of height h-1.
Block assemble_block(Label root, const std::vector<Block>& subtrees);

// The first `depth` levels of an (unknown) infinite tree. Identical
// storage to Block; the distinct type marks that operations must not
// read below the truncation.
struct TruncatedTree {
  Block body;

  int depth() const { return body.height; }
  bool operator==(const TruncatedTree&) const = default;
};

TruncatedTree as_tree(Block b);

// sigma^i at truncation level: result depth is t.depth()-1.
// Requires t.depth() >= 2.
TruncatedTree shift_tree(const TruncatedTree& t, int direction);

// sigma^w = sigma^{w_{k-1}} o ... o sigma^{w_0}; depth loss |w|.
TruncatedTree shift_tree_word(const TruncatedTree& t, const Word& w);

// Smallest level n at which s and t disagree (so d(s,t) = 2^{-n-1}),
// or nullopt when the visible windows coincide (d < 2^{-depth},
// undetermined below the truncation). Requires equal depths.
std::optional<int> distance_level(const TruncatedTree& s, const TruncatedTree& t);

// True iff t lies in the cylinder [b] as far as the truncation shows.
// Requires t.depth() >= b.height.
bool cylinder_match(const TruncatedTree& t, const Block& b);

// Single-line text form: labels in canonical order separated by spaces.
std::string block_to_text(const Block& b, const Alphabets& a);
Block block_from_text(const std::string& line, const Alphabets& a);

// Enumerates all height-h blocks over the label alphabet in canonical
// ascending order. Throws std::length_error when the count exceeds
// `budget`.
void for_each_block(const Alphabets& a, int height, std::uint64_t budget,
                    const std::function<void(const Block&)>& fn);

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 24;

}  // namespace treeshift
