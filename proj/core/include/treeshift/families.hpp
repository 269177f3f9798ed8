#pragma once

// Built-in tree-shifts used throughout: finite-type fixtures presented
// through an SftEngine, and oracle-presented shifts (membership at
// depth plus an exact block enumerator).

#include <functional>
#include <memory>
#include <string>

#include "treeshift/report.hpp"
#include "treeshift/sft.hpp"

namespace treeshift {

// A tree-shift presented either as finite-type data or as a pair of
// procedures (membership-at-depth, block enumeration). Immutable after
// construction.
class ShiftSpec {
 public:
  using CertifyFn = std::function<Verdict(const TruncatedTree&)>;
  using LanguageFn = std::function<std::vector<Block>(int)>;
  using GapWitnessFn = std::function<std::optional<TruncatedTree>(int)>;

  static ShiftSpec finite_type(std::string name, SftEngine engine);
  // Oracle presentations run a shift-invariance self-test at build
  // time: random certified trees stay certified under every shift map.
  static ShiftSpec oracle(std::string name, Alphabets alphabets, CertifyFn certify,
                          LanguageFn language, GapWitnessFn gap_witness = nullptr,
                          int self_test_depth = 4, int self_test_trials = 1000,
                          std::uint64_t self_test_seed = 7);

  const std::string& name() const { return name_; }
  const Alphabets& alphabets() const { return alphabets_; }
  bool finite_type_presentation() const { return engine_ != nullptr; }
  const SftEngine& engine() const;

  Verdict certify(const TruncatedTree& t) const;
  std::vector<Block> language(int n, std::uint64_t budget = kDefaultEnumerationBudget) const;
  std::uint64_t block_count(int n, std::uint64_t budget = kDefaultEnumerationBudget) const;
  bool in_language(const Block& b) const;

 private:
  std::string name_;
  Alphabets alphabets_;
  std::shared_ptr<const SftEngine> engine_;
  CertifyFn certify_;
  LanguageFn language_;

 public:
  GapWitnessFn gap_witness;
};

// Binary full shift: empty forbidden set at height 1.
const ShiftSpec& full_shift();
// Root labeled 1 forbids any child labeled 1 (height-2 forbidden set).
const ShiftSpec& golden_mean_tree_sft();
// Forbid the height-1 block (1): X is the all-zero singleton.
const ShiftSpec& singleton_shift();
// Arity-1 golden mean (no two consecutive 1s): the classical SFT
// regression fixture.
const ShiftSpec& golden_mean_string_sft();
// At most one zero per row (oracle, not of finite type, all shift maps
// open).
const ShiftSpec& one_zero_row_shift();
// At most one zero in the whole tree (oracle, not of finite type, with
// a non-open shift map; negative fixture for the openness check).
const ShiftSpec& at_most_one_zero_shift();

const ShiftSpec& builtin_shift(const std::string& name);
std::vector<std::string> builtin_shift_names();

// The finite-type gap witness for the one-zero-per-row shift: depth
// n+2, zeros exactly at 0^{n+1} and 1^{n+1}. Every height-n window is
// in the language yet the tree is not a member.
TruncatedTree non_sft_witness(int n);

// Exhibits a tree accepted by the height-n window approximation but
// rejected by the shift itself; "no gap" for finite-type shifts once n
// reaches the forbidden height.
WitnessReport sft_approximation_gap(const ShiftSpec& shift, int n,
                                    std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace treeshift
