#pragma once

// Finite pseudo-orbits, the tracing construction t_w = t^(w)_eps and
// the verifiers for the pseudo-orbit condition, tracing, and the
// prefix-coherence identity t^(w)_{uv} = t^(wu)_v.

#include <random>

#include "treeshift/report.hpp"
#include "treeshift/sft.hpp"
#include "treeshift/tree.hpp"

namespace treeshift {

// Family {t^(w)} indexed by words shorter than `order`, every entry a
// truncation of depth `entry_depth`. `resolution` is the claimed n of
// the [n]-pseudo-orbit condition; it is validated, never trusted.
struct PseudoOrbitFamily {
  Alphabets alphabets;
  int order = 0;        // N
  int entry_depth = 0;  // D
  int resolution = 0;   // n
  std::vector<TruncatedTree> entries;  // canonical index order over Sigma^{<order}

  const TruncatedTree& entry(const Word& w) const;
  std::size_t entry_count() const { return entries.size(); }
};

void validate_family(const PseudoOrbitFamily& f);

// Checks restrict(t^(w), i, n) == restrict(t^(wi), eps, n) for every
// index word w shorter than order-1 and every direction. Requires
// entry_depth >= n + 1.
TraceReport verify_pseudo_orbit(const PseudoOrbitFamily& f);
TraceReport verify_pseudo_orbit(const PseudoOrbitFamily& f, int resolution);

// Exact-orbit family: entry(w) = window of `seed` at w. Requires
// seed.depth() >= order - 1 + entry_depth.
PseudoOrbitFamily true_orbit_family(const TruncatedTree& seed, int order, int entry_depth,
                                    int resolution);

// Random [resolution]-pseudo-orbit over the engine's shift: the first
// resolution+1 levels of each entry follow the exact orbit of `seed`,
// deeper levels are re-stitched from viable blocks. Every entry is
// certified. Requires seed certified and deep enough.
PseudoOrbitFamily perturb_orbit(const SftEngine& engine, const TruncatedTree& seed, int order,
                                int entry_depth, int resolution, std::mt19937_64& rng);

// The traced tree: node w carries t^(w)_eps; below the index range the
// labels continue from the entries (t_{wu} = t^(w)_u with |w| = order-1),
// which agrees with every decomposition as long as the probed depth
// stays within the verified resolution. Rejects unverified families.
// Default output depth is `order`; out_depth may go up to
// order - 1 + entry_depth.
TruncatedTree trace_construct(const PseudoOrbitFamily& f);
TruncatedTree trace_construct(const PseudoOrbitFamily& f, int out_depth);

// Checks restrict(t, w, m) == restrict(t^(w), eps, m) for every index
// word. Requires t.depth() >= order - 1 + m.
TraceReport verify_tracing(const TruncatedTree& t, const PseudoOrbitFamily& f, int m);

// The identity t^(w)_{uv} = t^(wu)_v over all triples with wu in the
// index range and uv within the resolution; exhaustive.
TraceReport lemma_po_check(const PseudoOrbitFamily& f);

// Randomized variant drawing `samples` triples (w, u, v).
TraceReport lemma_po_check(const PseudoOrbitFamily& f, std::mt19937_64& rng, int samples);

// Enumerates all depth-(order-1+m) trees and checks that exactly one
// [m]-traces f and that it equals trace_construct's output.
bool uniqueness_check(const PseudoOrbitFamily& f, int m,
                      std::uint64_t budget = kDefaultEnumerationBudget);

// The resolution n = max(p, m) at which every pseudo-orbit over the
// engine's shift is [m]-traced by the construction above.
int shadowing_bound(const SftEngine& engine, int m);

}  // namespace treeshift
