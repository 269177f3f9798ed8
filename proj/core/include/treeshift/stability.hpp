#pragma once

// The constructive stability machinery: injectivization of a finite
// pseudo-orbit, the tau-family that is [n]-close to the shift maps, and
// the semiconjugacy phi built by tracing.

#include <span>

#include "treeshift/shadowing.hpp"

namespace treeshift {

// Pseudo-orbit whose entries are pairwise distinct within the first
// `separation_depth` levels. Entries agree with the originating family
// on the first resolution+1 levels.
struct InjectiveFamily {
  PseudoOrbitFamily base;
  int separation_depth = 0;  // M
};

// Replaces duplicate entries by other certified trees agreeing on the
// first n+1 levels, scanning extensions in canonical order and keeping
// the entry at the shorter index word (epsilon in particular is never
// replaced). Requires a perfect engine and certified entries. The
// resulting M exceeds max(m, n).
InjectiveFamily injectivize(const PseudoOrbitFamily& f, const SftEngine& engine, int m);

// The perturbed maps tau^i: matched trees jump along the injective
// family, everything else falls back to the shift. The match test reads
// only the first M levels.
struct TauFamily {
  InjectiveFamily injective;
  const SftEngine* engine = nullptr;
};

TauFamily make_tau_family(InjectiveFamily inj, const SftEngine& engine);

// tau^i(t): s^(wi) when t matches s^(w) on M levels for the unique
// w shorter than order-1, else sigma^i(t). Output depth is t.depth()-1
// on both branches. Requires t.depth() >= M + 1.
TruncatedTree tau_apply(const TauFamily& tf, int direction, const TruncatedTree& t);

// Index word matched by tau's lookup, if any.
std::optional<Word> tau_match(const TauFamily& tf, const TruncatedTree& t);

// restrict(tau^i(t), eps, n) == restrict(sigma^i(t), eps, n) on every
// sample and direction.
TraceReport tau_closeness_check(const TauFamily& tf, int n,
                                std::span<const TruncatedTree> samples);

// phi(t) to the requested depth: node w carries tau^w(t)_eps, with
// tau^w applied innermost-letter-first. Requires t.depth() >= M + out_depth.
TruncatedTree phi_construct(const TauFamily& tf, const TruncatedTree& t, int out_depth);

// shift(phi(t, K), i) == phi(tau^i(t), K-1) on every sample and direction.
TraceReport conjugacy_check(const TauFamily& tf, std::span<const TruncatedTree> samples, int K);

// restrict(phi(t, K), eps, m) == restrict(t, eps, m), K >= m.
TraceReport phi_closeness_check(const TauFamily& tf, std::span<const TruncatedTree> samples,
                                int m);

}  // namespace treeshift
