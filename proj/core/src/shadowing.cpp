#include "treeshift/shadowing.hpp"

#include <algorithm>
#include <stdexcept>

namespace treeshift {

const TruncatedTree& PseudoOrbitFamily::entry(const Word& w) const {
  return entries.at(bfs_index(w, alphabets.arity));
}

void validate_family(const PseudoOrbitFamily& f) {
  validate_alphabets(f.alphabets);
  if (f.order < 1) throw std::invalid_argument("family order must be >= 1");
  if (f.entry_depth < 1) throw std::invalid_argument("entry depth must be >= 1");
  if (f.resolution < 0) throw std::invalid_argument("resolution must be >= 0");
  if (f.entries.size() != node_count(f.alphabets.arity, f.order))
    throw std::invalid_argument("entry count does not match Sigma^{<order}");
  for (const auto& t : f.entries) {
    if (t.depth() != f.entry_depth || t.body.arity != f.alphabets.arity)
      throw std::invalid_argument("entry depth or arity mismatch");
    for (Label l : t.body.labels)
      if (l >= f.alphabets.label_count())
        throw std::invalid_argument("entry label out of range");
  }
}

TraceReport verify_pseudo_orbit(const PseudoOrbitFamily& f) {
  return verify_pseudo_orbit(f, f.resolution);
}

TraceReport verify_pseudo_orbit(const PseudoOrbitFamily& f, int resolution) {
  validate_family(f);
  if (resolution < 1) throw std::invalid_argument("resolution must be >= 1");
  if (f.entry_depth < resolution + 1)
    throw std::invalid_argument("entry depth too shallow to decide the pseudo-orbit condition");
  for (const auto& w : words_below(f.alphabets.arity, f.order - 1)) {
    for (int i = 0; i < f.alphabets.arity; ++i) {
      Word wi = w;
      wi.push_back(static_cast<std::uint8_t>(i));
      Block lhs = restrict_block(f.entry(w).body, {static_cast<std::uint8_t>(i)}, resolution);
      Block rhs = restrict_block(f.entry(wi).body, {}, resolution);
      if (!(lhs == rhs)) {
        std::size_t i = static_cast<std::size_t>(
            std::distance(lhs.labels.begin(),
                          std::mismatch(lhs.labels.begin(), lhs.labels.end(),
                                        rhs.labels.begin())
                              .first));
        return TraceReport::fail(w, word_at(i, f.alphabets.arity, resolution), resolution);
      }
    }
  }
  return TraceReport::ok(resolution);
}

PseudoOrbitFamily true_orbit_family(const TruncatedTree& seed, int order, int entry_depth,
                                    int resolution) {
  if (seed.depth() < order - 1 + entry_depth)
    throw std::invalid_argument("seed too shallow for the requested order and entry depth");
  PseudoOrbitFamily f;
  f.alphabets.arity = seed.body.arity;
  // The label table is unknown here; callers that need symbols set it.
  Label max_label = *std::max_element(seed.body.labels.begin(), seed.body.labels.end());
  for (int l = 0; l <= max_label; ++l) f.alphabets.labels.push_back(std::to_string(l));
  f.order = order;
  f.entry_depth = entry_depth;
  f.resolution = resolution;
  for (const auto& w : words_below(seed.body.arity, order))
    f.entries.push_back(as_tree(restrict_block(seed.body, w, entry_depth)));
  return f;
}

PseudoOrbitFamily perturb_orbit(const SftEngine& engine, const TruncatedTree& seed, int order,
                                int entry_depth, int resolution, std::mt19937_64& rng) {
  if (engine.is_empty()) throw std::invalid_argument("perturb_orbit: empty shift");
  if (resolution < 1) throw std::invalid_argument("perturb_orbit: resolution must be >= 1");
  if (entry_depth < resolution + 1)
    throw std::invalid_argument("perturb_orbit: entry depth must exceed the resolution");
  if (seed.depth() < order - 1 + entry_depth)
    throw std::invalid_argument("perturb_orbit: seed too shallow");
  if (engine.certify(seed) != Verdict::InX)
    throw std::invalid_argument("perturb_orbit: seed not certified");

  PseudoOrbitFamily f;
  f.alphabets = engine.alphabets();
  f.order = order;
  f.entry_depth = entry_depth;
  f.resolution = resolution;
  const int fixed_levels = std::min(resolution + 1, entry_depth);
  for (const auto& w : words_below(engine.alphabets().arity, order)) {
    Block window = restrict_block(seed.body, w, entry_depth);
    std::vector<std::optional<Label>> assignment(window.labels.size());
    std::size_t fixed_nodes =
        static_cast<std::size_t>(node_count(engine.alphabets().arity, fixed_levels));
    for (std::size_t i = 0; i < fixed_nodes; ++i) assignment[i] = window.labels[i];
    auto entry = engine.complete(std::move(assignment), entry_depth, &rng);
    if (!entry)
      throw std::runtime_error("perturb_orbit: no certified completion below the fixed levels");
    f.entries.push_back(std::move(*entry));
  }
  return f;
}

TruncatedTree trace_construct(const PseudoOrbitFamily& f) {
  return trace_construct(f, f.order);
}

TruncatedTree trace_construct(const PseudoOrbitFamily& f, int out_depth) {
  auto verified = verify_pseudo_orbit(f);
  if (!verified.pass)
    throw std::invalid_argument("trace_construct: family fails its pseudo-orbit claim");
  if (out_depth < 1 || out_depth > f.order - 1 + f.entry_depth)
    throw std::invalid_argument("trace_construct: output depth out of range");
  const int arity = f.alphabets.arity;
  Block body;
  body.arity = arity;
  body.height = out_depth;
  body.labels.resize(static_cast<std::size_t>(node_count(arity, out_depth)));
  for (std::size_t i = 0; i < body.labels.size(); ++i) {
    Word x = word_at(i, arity, out_depth);
    std::size_t split = std::min(x.size(), static_cast<std::size_t>(f.order - 1));
    Word w(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(split));
    Word u(x.begin() + static_cast<std::ptrdiff_t>(split), x.end());
    body.labels[i] = f.entry(w).body.at(u);
  }
  return as_tree(std::move(body));
}

TraceReport verify_tracing(const TruncatedTree& t, const PseudoOrbitFamily& f, int m) {
  validate_family(f);
  if (m < 1) throw std::invalid_argument("verify_tracing: m must be >= 1");
  if (m > f.entry_depth) throw std::invalid_argument("verify_tracing: m exceeds entry depth");
  if (t.depth() < f.order - 1 + m)
    throw std::invalid_argument("verify_tracing: traced tree too shallow");
  for (const auto& w : words_below(f.alphabets.arity, f.order)) {
    Block lhs = restrict_block(t.body, w, m);
    Block rhs = restrict_block(f.entry(w).body, {}, m);
    if (!(lhs == rhs)) {
      std::size_t i = static_cast<std::size_t>(
          std::distance(lhs.labels.begin(),
                        std::mismatch(lhs.labels.begin(), lhs.labels.end(), rhs.labels.begin())
                            .first));
      return TraceReport::fail(w, word_at(i, f.alphabets.arity, m), m);
    }
  }
  return TraceReport::ok(m);
}

namespace {

bool po_triple_holds(const PseudoOrbitFamily& f, const Word& w, const Word& u, const Word& v) {
  Word wu = w;
  wu.insert(wu.end(), u.begin(), u.end());
  Word uv = u;
  uv.insert(uv.end(), v.begin(), v.end());
  return f.entry(w).body.at(uv) == f.entry(wu).body.at(v);
}

}  // namespace

TraceReport lemma_po_check(const PseudoOrbitFamily& f) {
  auto verified = verify_pseudo_orbit(f);
  if (!verified.pass) return verified;
  const int arity = f.alphabets.arity;
  const int n = std::min(f.resolution, f.entry_depth);
  for (const auto& w : words_below(arity, f.order)) {
    for (const auto& u : words_below(arity, f.order - static_cast<int>(w.size()))) {
      int vmax = n - static_cast<int>(u.size());
      if (vmax < 1) continue;
      for (const auto& v : words_below(arity, vmax)) {
        if (!po_triple_holds(f, w, u, v)) {
          Word uv = u;
          uv.insert(uv.end(), v.begin(), v.end());
          return TraceReport::fail(w, uv, n);
        }
      }
    }
  }
  return TraceReport::ok(n);
}

TraceReport lemma_po_check(const PseudoOrbitFamily& f, std::mt19937_64& rng, int samples) {
  auto verified = verify_pseudo_orbit(f);
  if (!verified.pass) return verified;
  const int arity = f.alphabets.arity;
  const int n = std::min(f.resolution, f.entry_depth);
  auto index_words = words_below(arity, f.order);
  std::uniform_int_distribution<std::size_t> pick_w(0, index_words.size() - 1);
  for (int s = 0; s < samples; ++s) {
    const Word& w = index_words[pick_w(rng)];
    int max_u = std::min(f.order - static_cast<int>(w.size()) - 1, n - 1);
    std::uniform_int_distribution<int> pick_ulen(0, std::max(0, max_u));
    int ulen = pick_ulen(rng);
    std::uniform_int_distribution<int> pick_vlen(0, std::max(0, n - 1 - ulen));
    int vlen = pick_vlen(rng);
    std::uniform_int_distribution<int> pick_dir(0, arity - 1);
    Word u, v;
    for (int k = 0; k < ulen; ++k) u.push_back(static_cast<std::uint8_t>(pick_dir(rng)));
    for (int k = 0; k < vlen; ++k) v.push_back(static_cast<std::uint8_t>(pick_dir(rng)));
    if (!po_triple_holds(f, w, u, v)) {
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      return TraceReport::fail(w, uv, n);
    }
  }
  return TraceReport::ok(n);
}

bool uniqueness_check(const PseudoOrbitFamily& f, int m, std::uint64_t budget) {
  if (m < 1) throw std::invalid_argument("uniqueness_check: m must be >= 1");
  const int depth = f.order - 1 + m;
  TruncatedTree traced = trace_construct(f, depth);
  int passers = 0;
  bool traced_passes = false;
  for_each_block(f.alphabets, depth, budget, [&](const Block& b) {
    TruncatedTree t = as_tree(b);
    if (verify_tracing(t, f, m).pass) {
      ++passers;
      if (t == traced) traced_passes = true;
    }
  });
  return passers == 1 && traced_passes;
}

int shadowing_bound(const SftEngine& engine, int m) {
  if (engine.is_empty()) throw std::invalid_argument("shadowing_bound: empty shift");
  if (m < 1) throw std::invalid_argument("shadowing_bound: m must be >= 1");
  return std::max(engine.height(), m);
}

}  // namespace treeshift
