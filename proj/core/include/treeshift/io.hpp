#pragma once

// Text file formats: forbidden-set files describing a finite-type
// shift, and pseudo-orbit family files. Both formats are line-oriented
// with a single `key=value` header line; `#` starts a comment.

#include <iosfwd>
#include <string>

#include "treeshift/families.hpp"
#include "treeshift/sft.hpp"
#include "treeshift/shadowing.hpp"

namespace treeshift {

// Forbidden-set file:
//   arity=<k> labels=<l0,l1,...> height=<p>
//   <block line>                      (labels in canonical order)
//   pattern <word>:<label> ...        (normalized to height p on load)
// Malformed input raises std::runtime_error with the line number.
NormalizedSft load_sft(std::istream& in);
NormalizedSft load_sft_file(const std::string& path);
void save_sft(std::ostream& out, const NormalizedSft& sft);
void save_sft_file(const std::string& path, const NormalizedSft& sft);

// A finite-type ShiftSpec named after the file stem.
ShiftSpec shift_from_file(const std::string& path);

// Pseudo-orbit family file:
//   arity=<k> labels=<l0,l1,...> order=<N> depth=<D> resolution=<n>
//   <word>: <block line>              (epsilon spelled e; one per index word)
PseudoOrbitFamily load_orbit(std::istream& in);
PseudoOrbitFamily load_orbit_file(const std::string& path);
void save_orbit(std::ostream& out, const PseudoOrbitFamily& f);
void save_orbit_file(const std::string& path, const PseudoOrbitFamily& f);

}  // namespace treeshift
