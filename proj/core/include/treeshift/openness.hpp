#pragma once

// Openness of the restricted shift maps: the finite-type preimage
// gluing, the bespoke witness rule for the one-zero-per-row shift, and
// a bounded three-valued openness check.

#include "treeshift/families.hpp"
#include "treeshift/report.hpp"
#include "treeshift/sft.hpp"

namespace treeshift {

// The forced common prefix of sigma^i([b]): restrict(b, i, m-1).
// Requires b.height >= 2.
Block image_prefix(const Block& b, int direction);

// Glues s into the i-subtree of r: q_{iw} = s_w, q_w = r_w off the
// i-subtree, built to depth min(r.depth, s.depth + 1). Requires r and s
// certified, r in [b] with b.height > p, and s agreeing with
// sigma^i(r) on b.height levels. The result is guaranteed certified and
// in [b]; a certification failure is a fatal logic error, not a
// recoverable condition.
TruncatedTree sft_preimage_witness(const SftEngine& engine, int direction, const Block& b,
                                   const TruncatedTree& r, const TruncatedTree& s);

// The example-specific preimage for the one-zero-per-row shift:
// r_{iw} = s_w, r_w = b_w on Sigma^{<n} off the i-subtree, ones
// everywhere else off the i-subtree. Requires s certified and agreeing
// with the i-subtree of t_tilde on n-1 levels, t_tilde in [b].
TruncatedTree one_zero_row_witness(const ShiftSpec& shift, int direction, const Block& b,
                                   const TruncatedTree& s, const TruncatedTree& t_tilde);

// Bounded openness of sigma^i restricted to the shift, at cylinder [b]:
//  - OpenCertified: every language block touching the image received a
//    constructive preimage witness (finite-type gluing, or the bespoke
//    one-zero-per-row rule);
//  - NotOpenWitness: some block meets the image while one of its
//    refinements provably misses it (the separating pair is shipped);
//  - Inconclusive: bounded search found no refutation and no
//    certification rule applies.
WitnessReport bounded_openness_check(const ShiftSpec& shift, int direction, const Block& b,
                                     int probe_depth,
                                     std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace treeshift
