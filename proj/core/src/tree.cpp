#include "treeshift/tree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace treeshift {

void validate_alphabets(const Alphabets& a) {
  if (a.arity < 1) throw std::invalid_argument("arity must be >= 1");
  if (a.labels.empty()) throw std::invalid_argument("label set must be non-empty");
  std::unordered_set<std::string> seen;
  for (const auto& l : a.labels) {
    if (!seen.insert(l).second)
      throw std::invalid_argument("duplicate label symbol: " + l);
  }
}

std::string format_word(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  out.reserve(w.size());
  for (auto d : w) {
    if (d > 9) throw std::invalid_argument("text form supports arity <= 10");
    out.push_back(static_cast<char>('0' + d));
  }
  return out;
}

Word parse_word(const std::string& text, int arity) {
  if (text == "e") return {};
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("bad direction character in word: " + text);
    int d = c - '0';
    if (d >= arity)
      throw std::invalid_argument("direction out of range in word: " + text);
    w.push_back(static_cast<std::uint8_t>(d));
  }
  return w;
}

std::uint64_t node_count(int arity, int height) {
  if (arity < 1 || height < 0) throw std::invalid_argument("bad node_count arguments");
  if (arity == 1) return static_cast<std::uint64_t>(height);
  std::uint64_t total = 0, level = 1;
  for (int k = 0; k < height; ++k) {
    total += level;
    level *= static_cast<std::uint64_t>(arity);
  }
  return total;
}

std::size_t bfs_index(const Word& w, int arity) {
  std::uint64_t within = 0;
  for (auto d : w) {
    if (d >= arity) throw std::invalid_argument("word letter out of range for arity");
    within = within * static_cast<std::uint64_t>(arity) + d;
  }
  return static_cast<std::size_t>(node_count(arity, static_cast<int>(w.size())) + within);
}

Word word_at(std::size_t index, int arity, int height) {
  for (int level = 0; level < height; ++level) {
    std::uint64_t start = node_count(arity, level);
    std::uint64_t next = node_count(arity, level + 1);
    if (index < next) {
      std::uint64_t within = index - start;
      Word w(static_cast<std::size_t>(level));
      for (int k = level - 1; k >= 0; --k) {
        w[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(within % arity);
        within /= static_cast<std::uint64_t>(arity);
      }
      return w;
    }
  }
  throw std::out_of_range("node index beyond height");
}

std::vector<Word> words_below(int arity, int height) {
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(node_count(arity, height)));
  for (std::size_t i = 0; i < node_count(arity, height); ++i)
    out.push_back(word_at(i, arity, height));
  return out;
}

bool block_less(const Block& a, const Block& b) {
  if (a.height != b.height) return a.height < b.height;
  return a.labels < b.labels;
}

Block make_block(int arity, int height, std::vector<Label> labels) {
  if (height < 1) throw std::invalid_argument("block height must be >= 1");
  if (labels.size() != node_count(arity, height))
    throw std::invalid_argument("wrong label count for block height");
  return Block{arity, height, std::move(labels)};
}

Block constant_block(int arity, int height, Label fill) {
  return make_block(arity, height,
                    std::vector<Label>(static_cast<std::size_t>(node_count(arity, height)), fill));
}

Block restrict_block(const Block& b, const Word& at, int height) {
  if (height < 1) throw std::invalid_argument("restriction height must be >= 1");
  if (static_cast<int>(at.size()) + height > b.height)
    throw std::invalid_argument("restriction window exceeds block height");
  Block c;
  c.arity = b.arity;
  c.height = height;
  c.labels.resize(static_cast<std::size_t>(node_count(b.arity, height)));
  Word node = at;
  for (std::size_t i = 0; i < c.labels.size(); ++i) {
    Word u = word_at(i, b.arity, height);
    node.resize(at.size());
    node.insert(node.end(), u.begin(), u.end());
    c.labels[i] = b.labels[bfs_index(node, b.arity)];
  }
  return c;
}

Block assemble_block(Label root, const std::vector<Block>& subtrees) {
  if (subtrees.empty()) throw std::invalid_argument("assemble_block needs subtrees");
  int arity = static_cast<int>(subtrees.size());
  int sub_height = subtrees.front().height;
  for (const auto& s : subtrees) {
    if (s.height != sub_height || s.arity != arity)
      throw std::invalid_argument("assemble_block: inconsistent subtrees");
  }
  Block b;
  b.arity = arity;
  b.height = sub_height + 1;
  b.labels.resize(static_cast<std::size_t>(node_count(arity, b.height)));
  b.labels[0] = root;
  for (std::size_t i = 1; i < b.labels.size(); ++i) {
    Word w = word_at(i, arity, b.height);
    Word u(w.begin() + 1, w.end());
    b.labels[i] = subtrees[w[0]].labels[bfs_index(u, arity)];
  }
  return b;
}

TruncatedTree as_tree(Block b) { return TruncatedTree{std::move(b)}; }

TruncatedTree shift_tree(const TruncatedTree& t, int direction) {
  if (t.depth() < 2)
    throw std::invalid_argument("shift: depth exhausted (would drop below 1)");
  if (direction < 0 || direction >= t.body.arity)
    throw std::invalid_argument("shift: direction out of range");
  return TruncatedTree{restrict_block(t.body, {static_cast<std::uint8_t>(direction)}, t.depth() - 1)};
}

TruncatedTree shift_tree_word(const TruncatedTree& t, const Word& w) {
  TruncatedTree out = t;
  for (auto d : w) out = shift_tree(out, d);
  return out;
}

std::optional<int> distance_level(const TruncatedTree& s, const TruncatedTree& t) {
  if (s.depth() != t.depth() || s.body.arity != t.body.arity)
    throw std::invalid_argument("distance_level: depth or arity mismatch");
  for (std::size_t i = 0; i < s.body.labels.size(); ++i) {
    if (s.body.labels[i] != t.body.labels[i]) {
      Word w = word_at(i, s.body.arity, s.depth());
      return static_cast<int>(w.size());
    }
  }
  return std::nullopt;
}

bool cylinder_match(const TruncatedTree& t, const Block& b) {
  if (t.body.arity != b.arity) throw std::invalid_argument("cylinder_match: arity mismatch");
  if (t.depth() < b.height)
    throw std::invalid_argument("cylinder_match: truncation shallower than block");
  return restrict_block(t.body, {}, b.height) == b;
}

std::string block_to_text(const Block& b, const Alphabets& a) {
  std::ostringstream os;
  for (std::size_t i = 0; i < b.labels.size(); ++i) {
    if (i) os << ' ';
    os << a.labels.at(b.labels[i]);
  }
  return os.str();
}

Block block_from_text(const std::string& line, const Alphabets& a) {
  std::istringstream is(line);
  std::vector<Label> labels;
  std::string tok;
  while (is >> tok) {
    auto it = std::find(a.labels.begin(), a.labels.end(), tok);
    if (it == a.labels.end())
      throw std::invalid_argument("unknown label symbol: " + tok);
    labels.push_back(static_cast<Label>(it - a.labels.begin()));
  }
  for (int h = 1;; ++h) {
    std::uint64_t n = node_count(a.arity, h);
    if (n == labels.size()) return make_block(a.arity, h, std::move(labels));
    if (n > labels.size())
      throw std::invalid_argument("label count does not match any block height");
  }
}

void for_each_block(const Alphabets& a, int height, std::uint64_t budget,
                    const std::function<void(const Block&)>& fn) {
  validate_alphabets(a);
  std::uint64_t nodes = node_count(a.arity, height);
  double bits = static_cast<double>(nodes) * std::log2(static_cast<double>(a.label_count()));
  if (bits > 63.0 || [&] {
        std::uint64_t total = 1;
        for (std::uint64_t i = 0; i < nodes; ++i) {
          if (total > budget / static_cast<std::uint64_t>(a.label_count()) + 1) return true;
          total *= static_cast<std::uint64_t>(a.label_count());
        }
        return total > budget;
      }())
    throw std::length_error("block enumeration exceeds budget");
  Block b = constant_block(a.arity, height, 0);
  const Label top = static_cast<Label>(a.label_count() - 1);
  for (;;) {
    fn(b);
    std::size_t i = b.labels.size();
    while (i > 0 && b.labels[i - 1] == top) b.labels[--i] = 0;
    if (i == 0) break;
    ++b.labels[i - 1];
  }
}

}  // namespace treeshift
