#include "treeshift/families.hpp"

#include <algorithm>
#include <stdexcept>

namespace treeshift {

namespace {

const Alphabets kBinary{2, {"0", "1"}};

int count_zeros_in_level(const Block& b, int level) {
  std::size_t start = static_cast<std::size_t>(node_count(b.arity, level));
  std::size_t end = static_cast<std::size_t>(node_count(b.arity, level + 1));
  int zeros = 0;
  for (std::size_t i = start; i < end; ++i)
    if (b.labels[i] == 0) ++zeros;
  return zeros;
}

SftEngine engine_from_forbidden(const Alphabets& a, int height, std::vector<Block> forbidden) {
  NormalizedSft sft;
  sft.alphabets = a;
  sft.height = height;
  sft.forbidden = std::move(forbidden);
  return SftEngine::build(std::move(sft));
}

}  // namespace

ShiftSpec ShiftSpec::finite_type(std::string name, SftEngine engine) {
  ShiftSpec s;
  s.name_ = std::move(name);
  s.alphabets_ = engine.alphabets();
  s.engine_ = std::make_shared<const SftEngine>(std::move(engine));
  return s;
}

ShiftSpec ShiftSpec::oracle(std::string name, Alphabets alphabets, CertifyFn certify,
                            LanguageFn language, GapWitnessFn gap_witness, int self_test_depth,
                            int self_test_trials, std::uint64_t self_test_seed) {
  validate_alphabets(alphabets);
  ShiftSpec s;
  s.name_ = std::move(name);
  s.alphabets_ = std::move(alphabets);
  s.certify_ = std::move(certify);
  s.language_ = std::move(language);
  s.gap_witness = std::move(gap_witness);

  // Shift-invariance self-test: sigma^i(X) must stay inside X.
  auto lang = s.language_(self_test_depth);
  if (lang.empty()) throw std::logic_error("oracle presentation has empty language");
  std::mt19937_64 rng(self_test_seed);
  std::uniform_int_distribution<std::size_t> pick(0, lang.size() - 1);
  for (int trial = 0; trial < self_test_trials; ++trial) {
    TruncatedTree t = as_tree(lang[pick(rng)]);
    if (s.certify_(t) != Verdict::InX)
      throw std::logic_error("oracle self-test: enumerated block not certified");
    for (int i = 0; i < s.alphabets_.arity; ++i) {
      if (s.certify_(shift_tree(t, i)) != Verdict::InX)
        throw std::logic_error("oracle self-test: shift image leaves the shift");
    }
  }
  return s;
}

const SftEngine& ShiftSpec::engine() const {
  if (!engine_) throw std::logic_error("shift has no finite-type presentation");
  return *engine_;
}

Verdict ShiftSpec::certify(const TruncatedTree& t) const {
  if (engine_) return engine_->certify(t);
  return certify_(t);
}

std::vector<Block> ShiftSpec::language(int n, std::uint64_t budget) const {
  if (engine_) return engine_->block_language(n, budget);
  auto lang = language_(n);
  if (lang.size() > budget) throw std::length_error("oracle language exceeds budget");
  return lang;
}

std::uint64_t ShiftSpec::block_count(int n, std::uint64_t budget) const {
  if (engine_) return engine_->block_count(n);
  return language(n, budget).size();
}

bool ShiftSpec::in_language(const Block& b) const {
  if (engine_) return engine_->in_language(b);
  return certify_(as_tree(b)) == Verdict::InX;
}

const ShiftSpec& full_shift() {
  static const ShiftSpec s =
      ShiftSpec::finite_type("full", engine_from_forbidden(kBinary, 1, {}));
  return s;
}

const ShiftSpec& golden_mean_tree_sft() {
  // Root labeled 1 forbids any child labeled 1.
  static const ShiftSpec s = [] {
    std::vector<Block> forbidden;
    for_each_block(kBinary, 2, 64, [&](const Block& b) {
      if (b.root() == 1 && (b.at({0}) == 1 || b.at({1}) == 1)) forbidden.push_back(b);
    });
    return ShiftSpec::finite_type("golden-mean",
                                  engine_from_forbidden(kBinary, 2, std::move(forbidden)));
  }();
  return s;
}

const ShiftSpec& singleton_shift() {
  static const ShiftSpec s = ShiftSpec::finite_type(
      "singleton", engine_from_forbidden(kBinary, 1, {make_block(2, 1, {1})}));
  return s;
}

const ShiftSpec& golden_mean_string_sft() {
  static const ShiftSpec s = ShiftSpec::finite_type(
      "golden-mean-string",
      engine_from_forbidden(Alphabets{1, {"0", "1"}}, 2, {make_block(1, 2, {1, 1})}));
  return s;
}

namespace {

Verdict one_zero_row_certify(const TruncatedTree& t) {
  for (int level = 0; level < t.depth(); ++level)
    if (count_zeros_in_level(t.body, level) > 1) return Verdict::NotInX;
  return Verdict::InX;
}

std::vector<Block> one_zero_row_language(int n) {
  if (n < 1) throw std::invalid_argument("language height must be >= 1");
  // Per level: either no zero or a single zero position.
  std::vector<Block> out{constant_block(2, n, 1)};
  std::vector<Block> next;
  for (int level = 0; level < n; ++level) {
    next.clear();
    std::size_t start = static_cast<std::size_t>(node_count(2, level));
    std::size_t end = static_cast<std::size_t>(node_count(2, level + 1));
    for (const auto& b : out) {
      next.push_back(b);  // no zero in this level
      for (std::size_t i = start; i < end; ++i) {
        Block z = b;
        z.labels[i] = 0;
        next.push_back(std::move(z));
      }
    }
    out.swap(next);
  }
  std::sort(out.begin(), out.end(), block_less);
  return out;
}

Verdict at_most_one_zero_certify(const TruncatedTree& t) {
  int zeros = 0;
  for (Label l : t.body.labels)
    if (l == 0) ++zeros;
  return zeros <= 1 ? Verdict::InX : Verdict::NotInX;
}

std::vector<Block> at_most_one_zero_language(int n) {
  std::vector<Block> out{constant_block(2, n, 1)};
  for (std::size_t i = 0; i < out.front().labels.size(); ++i) {
    Block z = out.front();
    z.labels[i] = 0;
    out.push_back(std::move(z));
  }
  std::sort(out.begin(), out.end(), block_less);
  return out;
}

std::optional<TruncatedTree> at_most_one_zero_gap(int n) {
  // Two zeros on the extreme spines at level n: every height-n window
  // sees at most one of them.
  Block b = constant_block(2, n + 1, 1);
  b.at(Word(static_cast<std::size_t>(n), 0)) = 0;
  b.at(Word(static_cast<std::size_t>(n), 1)) = 0;
  return as_tree(std::move(b));
}

}  // namespace

TruncatedTree non_sft_witness(int n) {
  if (n < 1) throw std::invalid_argument("non_sft_witness: n must be >= 1");
  Block b = constant_block(2, n + 2, 1);
  b.at(Word(static_cast<std::size_t>(n + 1), 0)) = 0;
  b.at(Word(static_cast<std::size_t>(n + 1), 1)) = 0;
  return as_tree(std::move(b));
}

const ShiftSpec& one_zero_row_shift() {
  static const ShiftSpec s = ShiftSpec::oracle(
      "one-zero-row", kBinary, one_zero_row_certify, one_zero_row_language,
      [](int n) -> std::optional<TruncatedTree> { return non_sft_witness(n); });
  return s;
}

const ShiftSpec& at_most_one_zero_shift() {
  static const ShiftSpec s = ShiftSpec::oracle("at-most-one-zero", kBinary,
                                               at_most_one_zero_certify,
                                               at_most_one_zero_language, at_most_one_zero_gap);
  return s;
}

const ShiftSpec& builtin_shift(const std::string& name) {
  if (name == "full") return full_shift();
  if (name == "golden-mean") return golden_mean_tree_sft();
  if (name == "singleton") return singleton_shift();
  if (name == "golden-mean-string") return golden_mean_string_sft();
  if (name == "one-zero-row") return one_zero_row_shift();
  if (name == "at-most-one-zero") return at_most_one_zero_shift();
  throw std::invalid_argument("unknown builtin shift: " + name);
}

std::vector<std::string> builtin_shift_names() {
  return {"full", "golden-mean", "singleton", "golden-mean-string", "one-zero-row",
          "at-most-one-zero"};
}

WitnessReport sft_approximation_gap(const ShiftSpec& shift, int n, std::uint64_t budget) {
  if (n < 1) throw std::invalid_argument("sft_approximation_gap: n must be >= 1");
  WitnessReport report;
  report.detail = "approximation height " + std::to_string(n);
  if (shift.finite_type_presentation()) {
    const int p = shift.engine().height();
    if (n >= p) {
      report.verdict = OpennessVerdict::OpenCertified;
      report.detail = "no gap at n >= " + std::to_string(p) + " (finite type)";
    } else {
      report.verdict = OpennessVerdict::Inconclusive;
      report.detail = "approximation height below the forbidden height";
    }
    return report;
  }
  (void)budget;
  if (!shift.gap_witness) {
    report.verdict = OpennessVerdict::Inconclusive;
    report.detail = "no gap witness rule for this oracle shift";
    return report;
  }
  auto candidate = shift.gap_witness(n);
  if (!candidate) {
    report.verdict = OpennessVerdict::Inconclusive;
    report.detail = "gap witness rule produced nothing at this height";
    return report;
  }
  // Re-check the witness: every height-n window in the language, whole
  // tree rejected.
  for (const auto& w : words_below(candidate->body.arity, candidate->depth() - n + 1)) {
    if (!shift.in_language(restrict_block(candidate->body, w, n))) {
      report.verdict = OpennessVerdict::Inconclusive;
      report.detail = "gap candidate has a window outside the language at " + format_word(w);
      return report;
    }
  }
  if (shift.certify(*candidate) != Verdict::NotInX) {
    report.verdict = OpennessVerdict::Inconclusive;
    report.detail = "gap candidate is a member; no gap exhibited";
    return report;
  }
  report.verdict = OpennessVerdict::NotOpenWitness;
  report.witness = std::move(candidate);
  report.detail = "height-" + std::to_string(n) +
                  " window approximation accepts a non-member";
  return report;
}

}  // namespace treeshift
