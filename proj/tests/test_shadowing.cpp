#include <doctest.h>

#include <stdexcept>

#include <random>

#include "treeshift/families.hpp"
#include "treeshift/shadowing.hpp"

using namespace treeshift;

namespace {
PseudoOrbitFamily sample_orbit(const SftEngine& e, int order, int depth, int n,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  TruncatedTree seed_tree = e.sample_tree(order - 1 + depth, rng);
  return perturb_orbit(e, seed_tree, order, depth, n, rng);
}
}  // namespace

TEST_CASE("true orbits satisfy the pseudo-orbit condition at full resolution") {
  const auto& e = golden_mean_tree_sft().engine();
  std::mt19937_64 rng(3);
  TruncatedTree t = e.sample_tree(8, rng);
  auto f = true_orbit_family(t, 3, 4, 3);
  CHECK(verify_pseudo_orbit(f).pass);
  CHECK(verify_pseudo_orbit(f, 2).pass);
  for (const auto& w : words_below(2, 3))
    CHECK(f.entry(w).body == restrict_block(t.body, w, 4));
}

TEST_CASE("verify_pseudo_orbit localizes a violation") {
  const auto& e = full_shift().engine();
  std::mt19937_64 rng(9);
  auto f = true_orbit_family(e.sample_tree(6, rng), 2, 4, 3);
  // Break the coherence between entry 0 and its parent at level 1.
  f.entries[1].body.at({0}) = static_cast<Label>(1 - f.entries[1].body.at({0}));
  auto r = verify_pseudo_orbit(f);
  if (!r.pass) {
    CHECK(r.first_violation->first == Word{});  // parent index epsilon
  } else {
    // The flip happened to agree; force a root flip which always breaks.
    f.entries[1].body.at({}) = static_cast<Label>(1 - f.entries[1].body.at({}));
    CHECK(!verify_pseudo_orbit(f).pass);
  }
}

TEST_CASE("perturb_orbit yields certified verified families that differ from the true orbit") {
  const auto& e = golden_mean_tree_sft().engine();
  bool saw_perturbation = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    TruncatedTree seed_tree = e.sample_tree(8, rng);
    auto f = perturb_orbit(e, seed_tree, 3, 5, 2, rng);
    CHECK(verify_pseudo_orbit(f).pass);
    for (const auto& t : f.entries) CHECK(e.certify(t) == Verdict::InX);
    auto exact = true_orbit_family(seed_tree, 3, 5, 2);
    for (std::size_t i = 0; i < f.entries.size(); ++i) {
      // Top n+1 levels follow the exact orbit.
      CHECK(restrict_block(f.entries[i].body, {}, 3) ==
            restrict_block(exact.entries[i].body, {}, 3));
      saw_perturbation = saw_perturbation || !(f.entries[i] == exact.entries[i]);
    }
  }
  CHECK(saw_perturbation);
}

TEST_CASE("trace_construct reproduces the seed on a true orbit") {
  const auto& e = golden_mean_tree_sft().engine();
  std::mt19937_64 rng(7);
  TruncatedTree t = e.sample_tree(8, rng);
  auto f = true_orbit_family(t, 3, 4, 3);
  auto traced = trace_construct(f, 6);
  CHECK(traced.body == restrict_block(t.body, {}, 6));
  CHECK(trace_construct(f).depth() == 3);
  CHECK_THROWS_AS(trace_construct(f, 7), std::invalid_argument);  // beyond order-1+depth
}

TEST_CASE("trace_construct refuses unverified families") {
  const auto& e = full_shift().engine();
  std::mt19937_64 rng(4);
  auto f = true_orbit_family(e.sample_tree(6, rng), 2, 4, 3);
  f.entries[2].body.at({}) = static_cast<Label>(1 - f.entries[2].body.at({}));
  bool broken = !verify_pseudo_orbit(f).pass;
  if (broken) CHECK_THROWS_AS(trace_construct(f), std::invalid_argument);
}

TEST_CASE("tracing bound and tracing verification on perturbed orbits") {
  for (const char* name : {"full", "golden-mean", "golden-mean-string"}) {
    auto shift = builtin_shift(name);
    const auto& e = shift.engine();
    for (int m = 1; m <= 3; ++m) {
      int n = shadowing_bound(e, m);
      CHECK(n == std::max(e.height(), m));
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto f = sample_orbit(e, 3, n + 1, n, seed);
        auto t = trace_construct(f, 2 + m);
        CHECK(verify_tracing(t, f, m).pass);
        CHECK(e.certify(t) == Verdict::InX);
      }
    }
  }
}

TEST_CASE("prefix coherence identity holds on true orbits, exhaustively and sampled") {
  const auto& e = golden_mean_tree_sft().engine();
  std::mt19937_64 rng(21);
  auto f = true_orbit_family(e.sample_tree(9, rng), 3, 5, 4);
  CHECK(lemma_po_check(f).pass);
  CHECK(lemma_po_check(f, rng, 2000).pass);
}

TEST_CASE("uniqueness: exactly one depth-2 tree traces an order-2 family") {
  const auto& e = full_shift().engine();
  std::mt19937_64 rng(13);
  auto f = true_orbit_family(e.sample_tree(5, rng), 2, 3, 2);
  CHECK(uniqueness_check(f, 1));
}

TEST_CASE("entry lookup is canonical") {
  const auto& e = full_shift().engine();
  std::mt19937_64 rng(2);
  auto f = true_orbit_family(e.sample_tree(6, rng), 3, 3, 2);
  CHECK(f.entry_count() == 7);
  CHECK(f.entry({1, 0}).body == f.entries[bfs_index({1, 0}, 2)].body);
}
