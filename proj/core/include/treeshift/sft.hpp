#pragma once

// Finite-type machinery: forbidden pattern sets, normalization to a
// common height, and the viability fixpoint turning the normalized set
// into a decision engine for the block language.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "treeshift/report.hpp"
#include "treeshift/tree.hpp"

namespace treeshift {

// A labeling of a finite prefix-closed word domain.
struct Pattern {
  std::vector<std::pair<Word, Label>> cells;
};

struct ForbiddenSet {
  Alphabets alphabets;
  std::vector<Pattern> patterns;
};

// Forbidden blocks of one common height, sorted in canonical order.
struct NormalizedSft {
  Alphabets alphabets;
  int height = 0;
  std::vector<Block> forbidden;
};

// Extends every pattern of f to the full set of height-p blocks that
// coincide with it on its domain. The defined tree-shift is unchanged.
// Requires p to cover the deepest pattern cell.
NormalizedSft normalize(const ForbiddenSet& f, int p,
                        std::uint64_t budget = kDefaultEnumerationBudget);

// Smallest height accommodating every pattern of f.
int minimal_normal_height(const ForbiddenSet& f);

// True iff no fully contained window of b is forbidden.
// Requires b.height >= sft.height.
bool locally_admissible(const Block& b, const NormalizedSft& sft);

// Precomputed viable-block set (the greatest fixpoint, equal to
// B_p(X)) plus the child-consistency relation between overlapping
// windows. Read-only after construction.
class SftEngine {
 public:
  // Starts from the locally admissible height-p blocks and repeatedly
  // deletes any block lacking, for some direction, a surviving child
  // window; stops at stabilization.
  static SftEngine build(NormalizedSft sft,
                         std::uint64_t budget = kDefaultEnumerationBudget);

  const NormalizedSft& sft() const { return sft_; }
  const Alphabets& alphabets() const { return sft_.alphabets; }
  int height() const { return sft_.height; }  // the common height p

  const std::vector<Block>& viable() const { return viable_; }
  const std::vector<int>& children(int viable_index, int direction) const;
  std::optional<int> viable_index(const Block& b) const;

  bool is_empty() const { return viable_.empty(); }

  // B_n(X). For n >= p: all height-n blocks whose every window is
  // viable; for n < p: distinct restrictions of viable blocks.
  std::vector<Block> block_language(int n,
                                    std::uint64_t budget = kDefaultEnumerationBudget) const;
  std::uint64_t block_count(int n) const;

  bool in_language(const Block& b) const;

  // Lemma-style certification on a truncation: NotInX when some fully
  // visible window is not viable, InX otherwise (the truncation then
  // extends to a member). Requires t.depth() >= p. The violating window
  // root is reported through `violation` when given.
  Verdict certify(const TruncatedTree& t, Word* violation = nullptr) const;

  // Number of blocks of B_{b.height+extra}(X) restricting to b at the
  // root. Requires b in the language and extra >= 1.
  std::uint64_t extension_count(const Block& b, int extra) const;

  // Viable blocks whose cylinder is a singleton; non-empty iff X has an
  // isolated point.
  std::vector<Block> rigidity_fixpoint() const;
  bool is_perfect() const;

  // Completes a partial labeling (nullopt = free) of Sigma^{<depth} to
  // a certified truncation, by backtracking in canonical node order.
  // With an rng, label order is randomized per node; without, the
  // canonically first completion is returned. nullopt when none exists.
  std::optional<TruncatedTree> complete(std::vector<std::optional<Label>> assignment,
                                        int depth, std::mt19937_64* rng = nullptr) const;

  // Enumerates certified completions in canonical order until `fn`
  // returns true (stop) or the search space is exhausted.
  void for_each_completion(std::vector<std::optional<Label>> assignment, int depth,
                           const std::function<bool(const TruncatedTree&)>& fn) const;

  // Certified completion of the given top levels to `depth`.
  std::optional<TruncatedTree> complete_prefix(const Block& top, int depth,
                                               std::mt19937_64* rng = nullptr) const;

  // Random certified truncation of the given depth. Throws when the
  // shift is empty.
  TruncatedTree sample_tree(int depth, std::mt19937_64& rng) const;

  // Pruning test used by the completion search: can the p-window at
  // `root` still be matched by some viable block given the partial
  // assignment?
  bool window_matchable(const std::vector<std::optional<Label>>& assignment,
                        const Word& root, int depth) const;

 private:
  NormalizedSft sft_;
  std::vector<Block> viable_;                          // canonical ascending
  std::vector<std::vector<std::vector<int>>> child_;   // [viable][direction]
};

}  // namespace treeshift
