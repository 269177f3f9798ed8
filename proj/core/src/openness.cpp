#include "treeshift/openness.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace treeshift {

Block image_prefix(const Block& b, int direction) {
  if (b.height < 2)
    throw std::invalid_argument("image_prefix: block height must be >= 2");
  if (direction < 0 || direction >= b.arity)
    throw std::invalid_argument("image_prefix: direction out of range");
  return restrict_block(b, {static_cast<std::uint8_t>(direction)}, b.height - 1);
}

TruncatedTree sft_preimage_witness(const SftEngine& engine, int direction, const Block& b,
                                   const TruncatedTree& r, const TruncatedTree& s) {
  const int m = b.height;
  if (m <= engine.height())
    throw std::invalid_argument("sft_preimage_witness: block height must exceed p");
  if (r.depth() < m + 1)
    throw std::invalid_argument("sft_preimage_witness: r must be deeper than b");
  if (!cylinder_match(r, b))
    throw std::invalid_argument("sft_preimage_witness: r outside [b]");
  if (engine.certify(r) != Verdict::InX || engine.certify(s) != Verdict::InX)
    throw std::invalid_argument("sft_preimage_witness: r or s not certified");
  if (s.depth() < m)
    throw std::invalid_argument("sft_preimage_witness: s shallower than b");
  TruncatedTree r_shifted = shift_tree(r, direction);
  if (!(restrict_block(s.body, {}, m) == restrict_block(r_shifted.body, {}, m)))
    throw std::invalid_argument("sft_preimage_witness: s disagrees with sigma^i(r) on m levels");

  const int out_depth = std::min(r.depth(), s.depth() + 1);
  Block q;
  q.arity = b.arity;
  q.height = out_depth;
  q.labels.resize(static_cast<std::size_t>(node_count(b.arity, out_depth)));
  for (std::size_t idx = 0; idx < q.labels.size(); ++idx) {
    Word w = word_at(idx, b.arity, out_depth);
    if (!w.empty() && w[0] == direction) {
      Word u(w.begin() + 1, w.end());
      q.labels[idx] = s.body.at(u);
    } else {
      q.labels[idx] = r.body.at(w);
    }
  }
  TruncatedTree out = as_tree(std::move(q));

  if (engine.certify(out) != Verdict::InX)
    throw std::logic_error("sft_preimage_witness: glued tree failed certification");
  if (!cylinder_match(out, b))
    throw std::logic_error("sft_preimage_witness: glued tree left the cylinder");
  TruncatedTree out_shifted = shift_tree(out, direction);
  int common = std::min(out_shifted.depth(), s.depth());
  if (!(restrict_block(out_shifted.body, {}, common) == restrict_block(s.body, {}, common)))
    throw std::logic_error("sft_preimage_witness: glued tree does not map onto s");
  return out;
}

TruncatedTree one_zero_row_witness(const ShiftSpec& shift, int direction, const Block& b,
                                   const TruncatedTree& s, const TruncatedTree& t_tilde) {
  if (shift.name() != "one-zero-row")
    throw std::invalid_argument("one_zero_row_witness: wrong shift");
  const int n = b.height;
  if (!shift.in_language(b))
    throw std::invalid_argument("one_zero_row_witness: b not in the language");
  if (shift.certify(s) != Verdict::InX)
    throw std::invalid_argument("one_zero_row_witness: s not certified");
  if (t_tilde.depth() < n || !cylinder_match(t_tilde, b))
    throw std::invalid_argument("one_zero_row_witness: t_tilde outside [b]");
  if (s.depth() < n - 1)
    throw std::invalid_argument("one_zero_row_witness: s too shallow");
  if (n >= 2 &&
      !(restrict_block(s.body, {}, n - 1) ==
        restrict_block(t_tilde.body, {static_cast<std::uint8_t>(direction)}, n - 1)))
    throw std::invalid_argument(
        "one_zero_row_witness: s disagrees with the subtree of t_tilde");

  const int out_depth = s.depth() + 1;
  Block r;
  r.arity = b.arity;
  r.height = out_depth;
  r.labels.resize(static_cast<std::size_t>(node_count(b.arity, out_depth)));
  for (std::size_t idx = 0; idx < r.labels.size(); ++idx) {
    Word w = word_at(idx, b.arity, out_depth);
    if (!w.empty() && w[0] == direction) {
      Word u(w.begin() + 1, w.end());
      r.labels[idx] = s.body.at(u);
    } else if (static_cast<int>(w.size()) < n) {
      r.labels[idx] = b.at(w);
    } else {
      r.labels[idx] = 1;
    }
  }
  TruncatedTree out = as_tree(std::move(r));

  if (shift.certify(out) != Verdict::InX)
    throw std::logic_error("one_zero_row_witness: constructed tree failed certification");
  if (!cylinder_match(out, b))
    throw std::logic_error("one_zero_row_witness: constructed tree left the cylinder");
  TruncatedTree out_shifted = shift_tree(out, direction);
  int common = std::min(out_shifted.depth(), s.depth());
  if (!(restrict_block(out_shifted.body, {}, common) == restrict_block(s.body, {}, common)))
    throw std::logic_error("one_zero_row_witness: constructed tree does not map onto s");
  return out;
}

namespace {

// Candidate blocks of height `m` extending the image prefix of [b] in
// the given direction; for height-1 bases the prefix is empty and every
// language block qualifies.
std::vector<Block> image_candidates(const ShiftSpec& shift, const Block& b, int direction,
                                    int m, std::uint64_t budget) {
  if (m == 1) return shift.language(1, budget);
  Block prefix = image_prefix(b, direction);
  std::vector<Block> out;
  for (const auto& c : shift.language(m, budget))
    if (restrict_block(c, {}, m - 1) == prefix) out.push_back(c);
  return out;
}

WitnessReport open_certified(const ShiftSpec& shift, int direction, const Block& b,
                             TruncatedTree witness, std::size_t covered) {
  WitnessReport report;
  report.verdict = OpennessVerdict::OpenCertified;
  report.direction = direction;
  report.base_block = b;
  report.witness = std::move(witness);
  report.detail = "preimage witnesses for all " + std::to_string(covered) +
                  " image candidates in " + shift.name();
  return report;
}

WitnessReport finite_type_check(const ShiftSpec& shift, int direction, const Block& b,
                                std::uint64_t budget) {
  const SftEngine& e = shift.engine();
  const int p = e.height();
  if (b.height <= p) {
    // Decompose [b] into height-(p+1) cylinders and certify each part;
    // a finite union of open images is open.
    std::optional<TruncatedTree> witness;
    std::size_t covered = 0;
    for (const auto& ext : e.block_language(p + 1, budget)) {
      if (!(restrict_block(ext, {}, b.height) == b)) continue;
      WitnessReport part = finite_type_check(shift, direction, ext, budget);
      if (part.verdict != OpennessVerdict::OpenCertified) return part;
      witness = part.witness;
      ++covered;
    }
    if (covered == 0)
      throw std::invalid_argument("bounded_openness_check: block not in the language");
    WitnessReport report = open_certified(shift, direction, b, *witness, covered);
    return report;
  }

  const int m = b.height;
  std::optional<TruncatedTree> witness;
  std::size_t covered = 0;
  for (const auto& c : image_candidates(shift, b, direction, m, budget)) {
    // Preimage block at depth m+1: b on top, c's last level forced into
    // the i-subtree, the rest completed through the engine.
    std::vector<std::optional<Label>> assignment(
        static_cast<std::size_t>(node_count(b.arity, m + 1)));
    for (std::size_t k = 0; k < b.labels.size(); ++k) assignment[k] = b.labels[k];
    for (const auto& u : words_below(b.arity, m)) {
      if (static_cast<int>(u.size()) != m - 1) continue;
      Word iu;
      iu.push_back(static_cast<std::uint8_t>(direction));
      iu.insert(iu.end(), u.begin(), u.end());
      assignment[bfs_index(iu, b.arity)] = c.at(u);
    }
    auto r = e.complete(std::move(assignment), m + 1);
    if (!r) continue;  // [c] provably misses the image
    TruncatedTree q = sft_preimage_witness(e, direction, b, *r, as_tree(c));
    witness = q;
    ++covered;
  }
  if (!witness) {
    WitnessReport report;
    report.verdict = OpennessVerdict::OpenCertified;
    report.direction = direction;
    report.base_block = b;
    report.detail = "image of [b] meets no language candidate (empty image at this depth)";
    return report;
  }
  return open_certified(shift, direction, b, *witness, covered);
}

WitnessReport one_zero_row_check(const ShiftSpec& shift, int direction, const Block& b,
                                 std::uint64_t budget) {
  const int n = b.height;
  std::optional<TruncatedTree> witness;
  std::size_t covered = 0;
  for (const auto& c : image_candidates(shift, b, direction, n, budget)) {
    Block tt = constant_block(b.arity, n + 1, 1);
    for (std::size_t k = 0; k < b.labels.size(); ++k) tt.labels[k] = b.labels[k];
    for (const auto& u : words_below(b.arity, n)) {
      if (static_cast<int>(u.size()) != n - 1) continue;
      Word iu;
      iu.push_back(static_cast<std::uint8_t>(direction));
      iu.insert(iu.end(), u.begin(), u.end());
      tt.at(iu) = c.at(u);
    }
    TruncatedTree t_tilde = as_tree(std::move(tt));
    if (shift.certify(t_tilde) != Verdict::InX) continue;
    TruncatedTree r = one_zero_row_witness(shift, direction, b, as_tree(c), t_tilde);
    witness = r;
    ++covered;
  }
  if (!witness) {
    WitnessReport report;
    report.verdict = OpennessVerdict::Inconclusive;
    report.direction = direction;
    report.base_block = b;
    report.detail = "no image candidate admitted the witness construction";
    return report;
  }
  return open_certified(shift, direction, b, *witness, covered);
}

WitnessReport generic_oracle_check(const ShiftSpec& shift, int direction, const Block& b,
                                   int probe_depth, std::uint64_t budget) {
  const int m = b.height;
  const int h = probe_depth;
  // I_k: k-level prefixes of the image, read off the (k+1)-language.
  auto image_at = [&](int k) {
    std::set<std::vector<Label>> out;
    for (const auto& a : shift.language(k + 1, budget)) {
      if (!(restrict_block(a, {}, m) == b)) continue;
      out.insert(restrict_block(a, {static_cast<std::uint8_t>(direction)}, k).labels);
    }
    return out;
  };
  auto inside_h = image_at(h);
  auto inside_h1 = image_at(h + 1);
  for (const auto& c_labels : inside_h) {
    Block c = make_block(b.arity, h, c_labels);
    for (const auto& refined : shift.language(h + 1, budget)) {
      if (!(restrict_block(refined, {}, h) == c)) continue;
      if (!inside_h1.count(refined.labels)) {
        WitnessReport report;
        report.verdict = OpennessVerdict::NotOpenWitness;
        report.direction = direction;
        report.base_block = b;
        report.inside_block = c;
        report.outside_block = refined;
        report.detail = "cylinder meets the image while its refinement provably misses it";
        return report;
      }
    }
  }
  WitnessReport report;
  report.verdict = OpennessVerdict::Inconclusive;
  report.direction = direction;
  report.base_block = b;
  report.detail = "no refutation up to probe depth " + std::to_string(h) +
                  "; no certification rule for this shift";
  return report;
}

}  // namespace

WitnessReport bounded_openness_check(const ShiftSpec& shift, int direction, const Block& b,
                                     int probe_depth, std::uint64_t budget) {
  if (!shift.in_language(b))
    throw std::invalid_argument("bounded_openness_check: block not in the language");
  if (direction < 0 || direction >= shift.alphabets().arity)
    throw std::invalid_argument("bounded_openness_check: direction out of range");
  if (probe_depth < b.height)
    throw std::invalid_argument("bounded_openness_check: probe depth shallower than the block");

  if (shift.finite_type_presentation())
    return finite_type_check(shift, direction, b, budget);
  if (shift.name() == "one-zero-row")
    return one_zero_row_check(shift, direction, b, budget);
  return generic_oracle_check(shift, direction, b, probe_depth, budget);
}

}  // namespace treeshift
