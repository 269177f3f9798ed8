#include "treeshift/sft.hpp"

#include <algorithm>
#include <map>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

namespace treeshift {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw std::overflow_error("block count overflows 64 bits");
  return a * b;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (b > std::numeric_limits<std::uint64_t>::max() - a)
    throw std::overflow_error("block count overflows 64 bits");
  return a + b;
}

void validate_pattern(const Pattern& p, const Alphabets& a) {
  if (p.cells.empty()) throw std::invalid_argument("empty pattern domain");
  std::set<Word> domain;
  for (const auto& [w, label] : p.cells) {
    for (auto d : w)
      if (d >= a.arity) throw std::invalid_argument("pattern word letter out of range");
    if (label >= a.label_count()) throw std::invalid_argument("pattern label out of range");
    if (!domain.insert(w).second)
      throw std::invalid_argument("pattern domain has duplicate word");
  }
  for (const auto& w : domain) {
    if (w.empty()) continue;
    Word prefix(w.begin(), w.end() - 1);
    if (!domain.count(prefix))
      throw std::invalid_argument("pattern domain is not prefix-closed");
  }
}

// Overlap key: the top p-1 levels of a child window / the levels 1..p-1
// of the parent window at one direction. Empty when p == 1.
std::vector<Label> top_key(const Block& b, int p) {
  if (p <= 1) return {};
  return restrict_block(b, {}, p - 1).labels;
}

std::vector<Label> side_key(const Block& b, int direction, int p) {
  if (p <= 1) return {};
  return restrict_block(b, {static_cast<std::uint8_t>(direction)}, p - 1).labels;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::InX: return "InX-certified";
    case Verdict::NotInX: return "NotInX";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

std::string to_string(OpennessVerdict v) {
  switch (v) {
    case OpennessVerdict::OpenCertified: return "OpenCertified";
    case OpennessVerdict::NotOpenWitness: return "NotOpenWitness";
    case OpennessVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

int minimal_normal_height(const ForbiddenSet& f) {
  int p = 1;
  for (const auto& pat : f.patterns)
    for (const auto& [w, label] : pat.cells)
      p = std::max(p, static_cast<int>(w.size()) + 1);
  return p;
}

NormalizedSft normalize(const ForbiddenSet& f, int p, std::uint64_t budget) {
  validate_alphabets(f.alphabets);
  if (p < minimal_normal_height(f))
    throw std::invalid_argument("normalization height too small for some pattern");
  for (const auto& pat : f.patterns) validate_pattern(pat, f.alphabets);

  std::set<std::vector<Label>> forbidden;
  for (const auto& pat : f.patterns) {
    // Fix the pattern cells, run an odometer over the free nodes.
    std::vector<std::optional<Label>> fixed(
        static_cast<std::size_t>(node_count(f.alphabets.arity, p)));
    for (const auto& [w, label] : pat.cells) fixed[bfs_index(w, f.alphabets.arity)] = label;
    std::vector<std::size_t> free_nodes;
    for (std::size_t i = 0; i < fixed.size(); ++i)
      if (!fixed[i]) free_nodes.push_back(i);

    std::uint64_t combos = 1;
    for (std::size_t k = 0; k < free_nodes.size(); ++k) {
      combos = checked_mul(combos, static_cast<std::uint64_t>(f.alphabets.label_count()));
      if (combos > budget) throw std::length_error("normalization exceeds enumeration budget");
    }

    std::vector<Label> labels(fixed.size(), 0);
    for (std::size_t i = 0; i < fixed.size(); ++i)
      if (fixed[i]) labels[i] = *fixed[i];
    const Label top = static_cast<Label>(f.alphabets.label_count() - 1);
    for (;;) {
      forbidden.insert(labels);
      std::size_t k = free_nodes.size();
      while (k > 0 && labels[free_nodes[k - 1]] == top) labels[free_nodes[--k]] = 0;
      if (k == 0) break;
      ++labels[free_nodes[k - 1]];
    }
  }

  NormalizedSft out;
  out.alphabets = f.alphabets;
  out.height = p;
  for (auto& labels : forbidden)
    out.forbidden.push_back(make_block(f.alphabets.arity, p, labels));
  return out;
}

bool locally_admissible(const Block& b, const NormalizedSft& sft) {
  if (b.height < sft.height)
    throw std::invalid_argument("block shallower than the normalized height");
  for (const auto& w : words_below(b.arity, b.height - sft.height + 1)) {
    Block window = restrict_block(b, w, sft.height);
    if (std::binary_search(sft.forbidden.begin(), sft.forbidden.end(), window, block_less))
      return false;
  }
  return true;
}

SftEngine SftEngine::build(NormalizedSft sft, std::uint64_t budget) {
  validate_alphabets(sft.alphabets);
  std::sort(sft.forbidden.begin(), sft.forbidden.end(), block_less);
  const int p = sft.height;

  std::vector<Block> candidates;
  for_each_block(sft.alphabets, p, budget, [&](const Block& b) {
    if (!std::binary_search(sft.forbidden.begin(), sft.forbidden.end(), b, block_less))
      candidates.push_back(b);
  });

  std::vector<char> alive(candidates.size(), 1);
  std::map<std::vector<Label>, std::vector<int>> by_top;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    by_top[top_key(candidates[i], p)].push_back(static_cast<int>(i));

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (!alive[i]) continue;
      for (int dir = 0; dir < sft.alphabets.arity; ++dir) {
        auto it = by_top.find(side_key(candidates[i], dir, p));
        bool has_child = false;
        if (it != by_top.end())
          for (int j : it->second)
            if (alive[j]) { has_child = true; break; }
        if (!has_child) {
          alive[i] = 0;
          changed = true;
          break;
        }
      }
    }
  }

  SftEngine e;
  e.sft_ = std::move(sft);
  std::vector<int> reindex(candidates.size(), -1);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (alive[i]) {
      reindex[i] = static_cast<int>(e.viable_.size());
      e.viable_.push_back(candidates[i]);
    }
  }
  e.child_.assign(e.viable_.size(),
                  std::vector<std::vector<int>>(static_cast<std::size_t>(e.sft_.alphabets.arity)));
  for (std::size_t i = 0; i < e.viable_.size(); ++i) {
    for (int dir = 0; dir < e.sft_.alphabets.arity; ++dir) {
      auto key = side_key(e.viable_[i], dir, p);
      for (int j : by_top[key])
        if (alive[j]) e.child_[i][static_cast<std::size_t>(dir)].push_back(reindex[j]);
    }
  }
  return e;
}

const std::vector<int>& SftEngine::children(int viable_index, int direction) const {
  return child_.at(static_cast<std::size_t>(viable_index)).at(static_cast<std::size_t>(direction));
}

std::optional<int> SftEngine::viable_index(const Block& b) const {
  auto it = std::lower_bound(viable_.begin(), viable_.end(), b, block_less);
  if (it == viable_.end() || !(*it == b)) return std::nullopt;
  return static_cast<int>(it - viable_.begin());
}

std::vector<Block> SftEngine::block_language(int n, std::uint64_t budget) const {
  if (n < 1) throw std::invalid_argument("block_language: n must be >= 1");
  const int p = height();
  if (n < p) {
    std::set<std::vector<Label>> seen;
    std::vector<Block> out;
    for (const auto& b : viable_) {
      Block r = restrict_block(b, {}, n);
      if (seen.insert(r.labels).second) out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), block_less);
    return out;
  }
  if (block_count(n) > budget)
    throw std::length_error("block_language exceeds enumeration budget");
  std::vector<Block> lang = viable_;
  std::vector<int> window_of(lang.size());
  std::iota(window_of.begin(), window_of.end(), 0);
  for (int h = p + 1; h <= n; ++h) {
    // Group current blocks by their top p-window for child lookup.
    std::vector<std::vector<int>> by_window(viable_.size());
    for (std::size_t i = 0; i < lang.size(); ++i)
      by_window[static_cast<std::size_t>(window_of[i])].push_back(static_cast<int>(i));
    std::vector<Block> next;
    std::vector<int> next_window;
    const int arity = alphabets().arity;
    for (std::size_t bi = 0; bi < viable_.size(); ++bi) {
      std::vector<std::vector<int>> options(static_cast<std::size_t>(arity));
      bool any_empty = false;
      for (int dir = 0; dir < arity; ++dir) {
        for (int c : children(static_cast<int>(bi), dir))
          for (int k : by_window[static_cast<std::size_t>(c)])
            options[static_cast<std::size_t>(dir)].push_back(k);
        if (options[static_cast<std::size_t>(dir)].empty()) any_empty = true;
      }
      if (any_empty) continue;
      std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
      std::vector<Block> subs(static_cast<std::size_t>(arity));
      for (;;) {
        for (int dir = 0; dir < arity; ++dir)
          subs[static_cast<std::size_t>(dir)] =
              lang[static_cast<std::size_t>(options[static_cast<std::size_t>(dir)][pick[static_cast<std::size_t>(dir)]])];
        next.push_back(assemble_block(viable_[bi].root(), subs));
        next_window.push_back(static_cast<int>(bi));
        int dir = arity - 1;
        while (dir >= 0 && ++pick[static_cast<std::size_t>(dir)] ==
                               options[static_cast<std::size_t>(dir)].size()) {
          pick[static_cast<std::size_t>(dir)] = 0;
          --dir;
        }
        if (dir < 0) break;
      }
    }
    lang = std::move(next);
    window_of = std::move(next_window);
  }
  std::sort(lang.begin(), lang.end(), block_less);
  return lang;
}

namespace {

// cnt[i] = number of height-n language blocks whose top p-window is
// viable block i.
std::vector<std::uint64_t> counts_at(const SftEngine& e, int n) {
  const int p = e.height();
  std::vector<std::uint64_t> cnt(e.viable().size(), 1);
  for (int h = p + 1; h <= n; ++h) {
    std::vector<std::uint64_t> next(cnt.size(), 0);
    for (std::size_t i = 0; i < cnt.size(); ++i) {
      std::uint64_t prod = 1;
      for (int dir = 0; dir < e.alphabets().arity; ++dir) {
        std::uint64_t sum = 0;
        for (int c : e.children(static_cast<int>(i), dir))
          sum = checked_add(sum, cnt[static_cast<std::size_t>(c)]);
        prod = checked_mul(prod, sum);
      }
      next[i] = prod;
    }
    cnt = std::move(next);
  }
  return cnt;
}

}  // namespace

std::uint64_t SftEngine::block_count(int n) const {
  if (n < 1) throw std::invalid_argument("block_count: n must be >= 1");
  const int p = height();
  if (n < p) {
    std::set<std::vector<Label>> seen;
    for (const auto& b : viable_) seen.insert(restrict_block(b, {}, n).labels);
    return seen.size();
  }
  auto cnt = counts_at(*this, n);
  std::uint64_t total = 0;
  for (auto c : cnt) total = checked_add(total, c);
  return total;
}

bool SftEngine::in_language(const Block& b) const {
  if (b.arity != alphabets().arity) return false;
  if (b.height >= height()) return certify(as_tree(b)) == Verdict::InX;
  for (const auto& v : viable_)
    if (restrict_block(v, {}, b.height) == b) return true;
  return false;
}

Verdict SftEngine::certify(const TruncatedTree& t, Word* violation) const {
  const int p = height();
  if (t.body.arity != alphabets().arity)
    throw std::invalid_argument("certify: arity mismatch");
  if (t.depth() < p)
    throw std::invalid_argument("certify: truncation shallower than the forbidden height");
  for (const auto& w : words_below(t.body.arity, t.depth() - p + 1)) {
    Block window = restrict_block(t.body, w, p);
    if (!viable_index(window)) {
      if (violation) *violation = w;
      return Verdict::NotInX;
    }
  }
  return Verdict::InX;
}

std::uint64_t SftEngine::extension_count(const Block& b, int extra) const {
  if (extra < 1) throw std::invalid_argument("extension_count: extra must be >= 1");
  if (!in_language(b)) throw std::invalid_argument("extension_count: block not in the language");
  const int p = height();
  const int target = b.height + extra;
  if (b.height > p) {
    std::uint64_t prod = 1;
    for (int dir = 0; dir < b.arity; ++dir)
      prod = checked_mul(prod,
                         extension_count(restrict_block(b, {static_cast<std::uint8_t>(dir)},
                                                        b.height - 1),
                                         extra));
    return prod;
  }
  if (b.height == p) {
    auto cnt = counts_at(*this, target);
    return cnt[static_cast<std::size_t>(*viable_index(b))];
  }
  // b shallower than p: sum over viable windows extending b.
  if (target <= p) {
    std::set<std::vector<Label>> seen;
    for (const auto& v : viable_)
      if (restrict_block(v, {}, b.height) == b)
        seen.insert(restrict_block(v, {}, target).labels);
    return seen.size();
  }
  auto cnt = counts_at(*this, target);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < viable_.size(); ++i)
    if (restrict_block(viable_[i], {}, b.height) == b) total = checked_add(total, cnt[i]);
  return total;
}

std::vector<Block> SftEngine::rigidity_fixpoint() const {
  // [b] is a singleton iff every direction admits exactly one viable
  // child window and that child is itself rigid.
  std::vector<char> alive(viable_.size(), 1);
  for (std::size_t i = 0; i < viable_.size(); ++i)
    for (int dir = 0; dir < alphabets().arity; ++dir)
      if (children(static_cast<int>(i), dir).size() != 1) { alive[i] = 0; break; }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < viable_.size(); ++i) {
      if (!alive[i]) continue;
      for (int dir = 0; dir < alphabets().arity; ++dir) {
        int c = children(static_cast<int>(i), dir).front();
        if (!alive[static_cast<std::size_t>(c)]) {
          alive[i] = 0;
          changed = true;
          break;
        }
      }
    }
  }
  std::vector<Block> rigid;
  for (std::size_t i = 0; i < viable_.size(); ++i)
    if (alive[i]) rigid.push_back(viable_[i]);
  return rigid;
}

bool SftEngine::is_perfect() const {
  return !viable_.empty() && rigidity_fixpoint().empty();
}

bool SftEngine::window_matchable(const std::vector<std::optional<Label>>& assignment,
                                 const Word& root, int depth) const {
  const int p = height();
  std::vector<std::size_t> cells;
  cells.reserve(static_cast<std::size_t>(node_count(alphabets().arity, p)));
  Word node = root;
  for (const auto& u : words_below(alphabets().arity, p)) {
    node.resize(root.size());
    node.insert(node.end(), u.begin(), u.end());
    cells.push_back(bfs_index(node, alphabets().arity));
  }
  (void)depth;
  for (const auto& v : viable_) {
    bool match = true;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const auto& cell = assignment[cells[k]];
      if (cell && *cell != v.labels[k]) { match = false; break; }
    }
    if (match) return true;
  }
  return false;
}

namespace {

bool complete_rec(const SftEngine& e, std::vector<std::optional<Label>>& work,
                  const std::vector<std::optional<Label>>& fixed, int depth,
                  std::size_t idx, std::mt19937_64* rng,
                  const std::function<bool(const TruncatedTree&)>& fn, bool& stopped) {
  const int arity = e.alphabets().arity;
  const int p = e.height();
  const std::size_t total = static_cast<std::size_t>(node_count(arity, depth));
  if (idx == total) {
    Block b = make_block(arity, depth,
                         [&] {
                           std::vector<Label> labels(total);
                           for (std::size_t i = 0; i < total; ++i) labels[i] = *work[i];
                           return labels;
                         }());
    stopped = fn(as_tree(std::move(b)));
    return stopped;
  }
  Word x = word_at(idx, arity, depth);
  std::vector<Label> candidates;
  if (fixed[idx]) {
    candidates = {*fixed[idx]};
  } else {
    for (int l = 0; l < e.alphabets().label_count(); ++l)
      candidates.push_back(static_cast<Label>(l));
    if (rng) std::shuffle(candidates.begin(), candidates.end(), *rng);
  }
  for (Label cand : candidates) {
    work[idx] = cand;
    bool ok = true;
    Word root = x;
    for (int back = 0; back < p && ok; ++back) {
      if (static_cast<int>(root.size()) + p <= depth &&
          !e.window_matchable(work, root, depth))
        ok = false;
      if (root.empty()) break;
      root.pop_back();
    }
    if (ok && complete_rec(e, work, fixed, depth, idx + 1, rng, fn, stopped)) return true;
  }
  work[idx] = std::nullopt;
  return false;
}

}  // namespace

void SftEngine::for_each_completion(std::vector<std::optional<Label>> assignment, int depth,
                                    const std::function<bool(const TruncatedTree&)>& fn) const {
  if (depth < height())
    throw std::invalid_argument("completion depth shallower than the forbidden height");
  if (assignment.size() != node_count(alphabets().arity, depth))
    throw std::invalid_argument("assignment size does not match depth");
  std::vector<std::optional<Label>> work = assignment;
  bool stopped = false;
  complete_rec(*this, work, assignment, depth, 0, nullptr, fn, stopped);
}

std::optional<TruncatedTree> SftEngine::complete(std::vector<std::optional<Label>> assignment,
                                                 int depth, std::mt19937_64* rng) const {
  if (depth < height())
    throw std::invalid_argument("completion depth shallower than the forbidden height");
  if (assignment.size() != node_count(alphabets().arity, depth))
    throw std::invalid_argument("assignment size does not match depth");
  std::optional<TruncatedTree> result;
  std::vector<std::optional<Label>> work = assignment;
  bool stopped = false;
  complete_rec(*this, work, assignment, depth, 0, rng,
               [&](const TruncatedTree& t) {
                 result = t;
                 return true;
               },
               stopped);
  return result;
}

std::optional<TruncatedTree> SftEngine::complete_prefix(const Block& top, int depth,
                                                        std::mt19937_64* rng) const {
  if (top.height > depth) throw std::invalid_argument("prefix deeper than target depth");
  std::vector<std::optional<Label>> assignment(
      static_cast<std::size_t>(node_count(alphabets().arity, depth)));
  for (std::size_t i = 0; i < top.labels.size(); ++i) assignment[i] = top.labels[i];
  return complete(std::move(assignment), depth, rng);
}

TruncatedTree SftEngine::sample_tree(int depth, std::mt19937_64& rng) const {
  if (is_empty()) throw std::runtime_error("sample_tree: empty shift");
  std::vector<std::optional<Label>> assignment(
      static_cast<std::size_t>(node_count(alphabets().arity, depth)));
  auto t = complete(std::move(assignment), depth, &rng);
  if (!t) throw std::runtime_error("sample_tree: no certified tree at this depth");
  return *t;
}

}  // namespace treeshift
