#include "treeshift/stability.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace treeshift {

namespace {

int smallest_separating_depth(const PseudoOrbitFamily& f) {
  int depth = 1;
  for (std::size_t i = 0; i < f.entries.size(); ++i) {
    for (std::size_t j = i + 1; j < f.entries.size(); ++j) {
      auto level = distance_level(f.entries[i], f.entries[j]);
      if (!level)
        throw std::runtime_error("entries indistinguishable within their depth");
      depth = std::max(depth, *level + 1);
    }
  }
  return depth;
}

}  // namespace

InjectiveFamily injectivize(const PseudoOrbitFamily& f, const SftEngine& engine, int m) {
  if (m < 1) throw std::invalid_argument("injectivize: m must be >= 1");
  if (!engine.is_perfect())
    throw std::invalid_argument("injectivize: engine not perfect (rigidity set non-empty)");
  auto verified = verify_pseudo_orbit(f);
  if (!verified.pass) throw std::invalid_argument("injectivize: family fails its claim");
  for (const auto& t : f.entries)
    if (engine.certify(t) != Verdict::InX)
      throw std::invalid_argument("injectivize: entry not certified");

  const int n = f.resolution;
  const int keep_levels = std::min(n + 1, f.entry_depth);
  PseudoOrbitFamily out = f;

  // Later (canonically larger) index words get replaced, so the epsilon
  // entry always survives untouched.
  for (std::size_t j = 0; j < out.entries.size(); ++j) {
    bool duplicate = false;
    for (std::size_t i = 0; i < j; ++i)
      if (out.entries[i] == out.entries[j]) { duplicate = true; break; }
    if (!duplicate) continue;

    Block prefix = restrict_block(out.entries[j].body, {}, keep_levels);
    std::vector<std::optional<Label>> base(out.entries[j].body.labels.size());
    for (std::size_t k = 0; k < prefix.labels.size(); ++k) base[k] = prefix.labels[k];
    auto is_fresh = [&](const TruncatedTree& candidate) {
      for (const auto& existing : out.entries)
        if (existing == candidate) return false;
      return true;
    };

    // Force a disagreement at the shallowest free node so the
    // separation depth stays close to keep_levels instead of creeping
    // toward the entry depth.
    std::optional<TruncatedTree> replacement;
    const int label_count = f.alphabets.label_count();
    for (std::size_t node = prefix.labels.size(); node < base.size() && !replacement; ++node) {
      for (int l = 0; l < label_count && !replacement; ++l) {
        if (static_cast<Label>(l) == out.entries[j].body.labels[node]) continue;
        auto forced = base;
        forced[node] = static_cast<Label>(l);
        auto candidate = engine.complete(std::move(forced), f.entry_depth);
        if (candidate && is_fresh(*candidate)) replacement = std::move(candidate);
      }
    }
    if (!replacement)
      engine.for_each_completion(base, f.entry_depth, [&](const TruncatedTree& candidate) {
        if (!is_fresh(candidate)) return false;  // keep searching
        replacement = candidate;
        return true;
      });
    if (!replacement)
      throw std::runtime_error(
          "injectivize: no distinct certified extension below level " +
          std::to_string(keep_levels) + "; entry depth " + std::to_string(f.entry_depth) +
          " leaves too little slack");
    out.entries[j] = std::move(*replacement);
  }

  InjectiveFamily inj;
  inj.separation_depth = std::max({smallest_separating_depth(out), n + 1, m + 1});
  inj.base = std::move(out);
  return inj;
}

TauFamily make_tau_family(InjectiveFamily inj, const SftEngine& engine) {
  if (inj.separation_depth > inj.base.entry_depth)
    throw std::invalid_argument("tau family: separation depth exceeds entry depth");
  return TauFamily{std::move(inj), &engine};
}

std::optional<Word> tau_match(const TauFamily& tf, const TruncatedTree& t) {
  const auto& f = tf.injective.base;
  const int M = tf.injective.separation_depth;
  if (t.depth() < M) throw std::invalid_argument("tau_match: tree shallower than M");
  Block probe = restrict_block(t.body, {}, M);
  std::optional<Word> match;
  for (const auto& w : words_below(f.alphabets.arity, f.order - 1)) {
    if (restrict_block(f.entry(w).body, {}, M) == probe) {
      if (match) throw std::logic_error("tau_match: separation depth fails to separate");
      match = w;
    }
  }
  return match;
}

TruncatedTree tau_apply(const TauFamily& tf, int direction, const TruncatedTree& t) {
  const auto& f = tf.injective.base;
  const int M = tf.injective.separation_depth;
  if (t.depth() < M + 1)
    throw std::invalid_argument("tau_apply: tree depth must be at least M + 1");
  auto w = tau_match(tf, t);
  if (w) {
    Word wi = *w;
    wi.push_back(static_cast<std::uint8_t>(direction));
    if (t.depth() - 1 > f.entry_depth)
      throw std::invalid_argument("tau_apply: entry depth too small for this tree");
    return as_tree(restrict_block(f.entry(wi).body, {}, t.depth() - 1));
  }
  return shift_tree(t, direction);
}

TraceReport tau_closeness_check(const TauFamily& tf, int n,
                                std::span<const TruncatedTree> samples) {
  const int arity = tf.injective.base.alphabets.arity;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    for (int i = 0; i < arity; ++i) {
      Block lhs = restrict_block(tau_apply(tf, i, samples[s]).body, {}, n);
      Block rhs = restrict_block(shift_tree(samples[s], i).body, {}, n);
      if (!(lhs == rhs))
        return TraceReport::fail({static_cast<std::uint8_t>(i)}, {}, n);
    }
  }
  return TraceReport::ok(n);
}

TruncatedTree phi_construct(const TauFamily& tf, const TruncatedTree& t, int out_depth) {
  const int M = tf.injective.separation_depth;
  if (out_depth < 1) throw std::invalid_argument("phi_construct: output depth must be >= 1");
  if (t.depth() < M + out_depth)
    throw std::invalid_argument("phi_construct: tree too shallow for the output depth");
  if (out_depth == 1)
    return as_tree(make_block(t.body.arity, 1, {t.body.root()}));
  std::vector<Block> subtrees;
  subtrees.reserve(static_cast<std::size_t>(t.body.arity));
  for (int i = 0; i < t.body.arity; ++i)
    subtrees.push_back(phi_construct(tf, tau_apply(tf, i, t), out_depth - 1).body);
  return as_tree(assemble_block(t.body.root(), subtrees));
}

TraceReport conjugacy_check(const TauFamily& tf, std::span<const TruncatedTree> samples, int K) {
  const int arity = tf.injective.base.alphabets.arity;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    TruncatedTree phi_t = phi_construct(tf, samples[s], K);
    for (int i = 0; i < arity; ++i) {
      TruncatedTree lhs = shift_tree(phi_t, i);
      TruncatedTree rhs = phi_construct(tf, tau_apply(tf, i, samples[s]), K - 1);
      if (!(lhs == rhs))
        return TraceReport::fail({static_cast<std::uint8_t>(i)}, {}, K);
    }
  }
  return TraceReport::ok(K);
}

TraceReport phi_closeness_check(const TauFamily& tf, std::span<const TruncatedTree> samples,
                                int m) {
  for (const auto& t : samples) {
    TruncatedTree phi_t = phi_construct(tf, t, m);
    Block lhs = restrict_block(phi_t.body, {}, m);
    Block rhs = restrict_block(t.body, {}, m);
    if (!(lhs == rhs)) return TraceReport::fail({}, {}, m);
  }
  return TraceReport::ok(m);
}

}  // namespace treeshift
