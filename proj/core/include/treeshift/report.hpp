#pragma once

#include <optional>
#include <string>
#include <utility>

#include "treeshift/tree.hpp"

namespace treeshift {

enum class Verdict { InX, NotInX, Undetermined };

std::string to_string(Verdict v);

// Structured verdict of a verification run. On failure the violation
// site (index word, node within the entry) is recorded so the check can
// be replayed by hand.
struct TraceReport {
  bool pass = false;
  std::optional<std::pair<Word, Word>> first_violation;
  int checked_depth = 0;

  static TraceReport ok(int depth) { return TraceReport{true, std::nullopt, depth}; }
  static TraceReport fail(Word index_word, Word node, int depth) {
    return TraceReport{false, std::make_pair(std::move(index_word), std::move(node)), depth};
  }
};

enum class OpennessVerdict { OpenCertified, NotOpenWitness, Inconclusive };

std::string to_string(OpennessVerdict v);

// Verdict of an openness / approximation-gap query. OpenCertified and
// NotOpenWitness always ship a re-checkable witness: either the
// constructed preimage tree or the separating (inside, outside) block
// pair.
struct WitnessReport {
  OpennessVerdict verdict = OpennessVerdict::Inconclusive;
  std::optional<TruncatedTree> witness;
  std::optional<Block> inside_block;
  std::optional<Block> outside_block;
  int direction = -1;
  std::optional<Block> base_block;
  std::string detail;
};

}  // namespace treeshift
