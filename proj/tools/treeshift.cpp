// Command-line workbench for tree-shifts: block languages, pseudo-orbit
// tracing, the stability pipeline, openness checks and finite-type
// approximation gaps.

#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "treeshift/io.hpp"
#include "treeshift/openness.hpp"
#include "treeshift/shadowing.hpp"
#include "treeshift/stability.hpp"

using nlohmann::json;
using namespace treeshift;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolated = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

struct Options {
  std::string builtin;
  std::string shift_file;
  std::string orbit_file;
  std::string block_text;
  std::string format = "text";
  int n = 0;
  int m = 1;
  int order = 2;
  int depth = 0;
  int probe_depth = 4;
  int direction = -1;
  int samples = 20;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultEnumerationBudget;
  bool list = false;
};

ShiftSpec load_shift(const Options& opt) {
  if (!opt.builtin.empty() && !opt.shift_file.empty())
    throw CLI::ValidationError("--builtin and --shift are mutually exclusive");
  if (!opt.builtin.empty()) return builtin_shift(opt.builtin);
  if (!opt.shift_file.empty()) return shift_from_file(opt.shift_file);
  throw CLI::ValidationError("one of --builtin or --shift is required");
}

// Reports accumulate key/value rows; text mode prints `key=value` lines
// in insertion order, structured mode a single JSON object.
class Report {
 public:
  explicit Report(bool structured) : structured_(structured) {}

  template <typename T>
  void add(const std::string& key, const T& value) {
    obj_[key] = value;
    if constexpr (std::is_same_v<T, std::vector<std::string>>) {
      for (const auto& line : value) rows_.emplace_back(key, line);
    } else if constexpr (std::is_same_v<T, bool>) {
      rows_.emplace_back(key, value ? "true" : "false");
    } else {
      std::ostringstream os;
      os << value;
      rows_.emplace_back(key, os.str());
    }
  }

  void emit(std::ostream& out) const {
    if (structured_) {
      out << obj_.dump(2) << "\n";
      return;
    }
    for (const auto& [k, v] : rows_) out << k << "=" << v << "\n";
  }

 private:
  bool structured_;
  json obj_ = json::object();
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string trace_failure(const TraceReport& r) {
  return "index=" + format_word(r.first_violation->first) +
         " node=" + format_word(r.first_violation->second);
}

int cmd_blocks(const Options& opt, Report& rep) {
  ShiftSpec shift = load_shift(opt);
  if (opt.n < 1) throw CLI::ValidationError("-n must be >= 1");
  auto lang = shift.language(opt.n, opt.budget);
  rep.add("shift", shift.name());
  rep.add("height", opt.n);
  rep.add("count", lang.size());
  if (opt.list) {
    std::vector<std::string> lines;
    for (const auto& b : lang) lines.push_back(block_to_text(b, shift.alphabets()));
    rep.add("blocks", lines);
  }
  return kExitPass;
}

int cmd_shadow(const Options& opt, Report& rep) {
  ShiftSpec shift = load_shift(opt);
  if (opt.orbit_file.empty()) throw CLI::ValidationError("--orbit is required");
  PseudoOrbitFamily f = load_orbit_file(opt.orbit_file);
  rep.add("shift", shift.name());
  rep.add("order", f.order);
  rep.add("resolution", f.resolution);
  rep.add("m", opt.m);

  auto verified = verify_pseudo_orbit(f);
  rep.add("pseudo_orbit", verified.pass ? std::string("pass")
                                        : "fail " + trace_failure(verified));
  if (!verified.pass) return kExitViolated;

  if (shift.finite_type_presentation()) {
    int bound = shadowing_bound(shift.engine(), opt.m);
    rep.add("bound", bound);
    if (f.resolution < bound)
      rep.add("warning", std::string("resolution below the tracing bound"));
  }

  int out_depth = std::min(f.order - 1 + f.entry_depth, std::max(f.order, f.order - 1 + opt.m));
  TruncatedTree t = trace_construct(f, out_depth);
  rep.add("traced_depth", t.depth());

  auto traced = verify_tracing(t, f, opt.m);
  rep.add("tracing", traced.pass ? std::string("pass") : "fail " + trace_failure(traced));
  if (!traced.pass) return kExitViolated;

  Verdict v = shift.certify(t);
  rep.add("membership", to_string(v));
  return v == Verdict::InX ? kExitPass : kExitViolated;
}

int cmd_stability(const Options& opt, Report& rep) {
  ShiftSpec shift = load_shift(opt);
  if (opt.orbit_file.empty()) throw CLI::ValidationError("--orbit is required");
  if (!shift.finite_type_presentation())
    throw CLI::ValidationError("stability requires a finite-type shift");
  const SftEngine& e = shift.engine();
  rep.add("shift", shift.name());
  if (!e.is_perfect()) {
    rep.add("perfect", false);
    rep.add("error", std::string("shift has isolated points; stability pipeline refused"));
    return kExitViolated;
  }
  rep.add("perfect", true);

  PseudoOrbitFamily f = load_orbit_file(opt.orbit_file);
  InjectiveFamily inj = injectivize(f, e, opt.m);
  TauFamily tf = make_tau_family(std::move(inj), e);
  const int M = tf.injective.separation_depth;
  rep.add("M", M);

  const int K = 3;
  const int sample_depth = M + std::max({K, opt.m, 1});
  if (sample_depth - 1 > f.entry_depth)
    throw CLI::ValidationError("entry depth too small for the tau/phi checks");
  std::mt19937_64 rng(opt.seed);
  std::vector<TruncatedTree> samples;
  for (int i = 0; i < opt.samples; ++i) samples.push_back(e.sample_tree(sample_depth, rng));

  auto tau_close = tau_closeness_check(tf, f.resolution, samples);
  rep.add("tau_close", tau_close.pass);
  auto conj = conjugacy_check(tf, samples, K);
  rep.add("conjugacy", conj.pass);
  auto phi_close = phi_closeness_check(tf, samples, opt.m);
  rep.add("phi_close", phi_close.pass);
  bool pass = tau_close.pass && conj.pass && phi_close.pass;
  return pass ? kExitPass : kExitViolated;
}

int openness_verdict_exit(OpennessVerdict v) {
  switch (v) {
    case OpennessVerdict::OpenCertified: return kExitPass;
    case OpennessVerdict::NotOpenWitness: return kExitViolated;
    default: return kExitInconclusive;
  }
}

int cmd_openness(const Options& opt, Report& rep) {
  ShiftSpec shift = load_shift(opt);
  rep.add("shift", shift.name());
  rep.add("probe_depth", opt.probe_depth);

  std::vector<Block> targets;
  if (!opt.block_text.empty()) {
    targets.push_back(block_from_text(opt.block_text, shift.alphabets()));
  } else {
    if (opt.n < 1) throw CLI::ValidationError("give --block or a sweep height -n");
    targets = shift.language(opt.n, opt.budget);
  }
  std::vector<int> directions;
  if (opt.direction >= 0)
    directions.push_back(opt.direction);
  else
    for (int i = 0; i < shift.alphabets().arity; ++i) directions.push_back(i);

  bool any_refuted = false;
  bool any_inconclusive = false;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  for (const auto& b : targets) {
    for (int i : directions) {
      WitnessReport r;
      try {
        r = bounded_openness_check(shift, i, b, opt.probe_depth, opt.budget);
      } catch (const std::invalid_argument& err) {
        throw CLI::ValidationError(err.what());
      }
      ++checked;
      if (r.verdict != OpennessVerdict::OpenCertified) {
        std::string line = "direction=" + std::to_string(i) + " block=" +
                           block_to_text(b, shift.alphabets()) + " verdict=" +
                           to_string(r.verdict) + " detail=" + r.detail;
        if (r.inside_block && r.outside_block)
          line += " inside=" + block_to_text(*r.inside_block, shift.alphabets()) +
                  " outside=" + block_to_text(*r.outside_block, shift.alphabets());
        failures.push_back(std::move(line));
      }
      any_refuted = any_refuted || r.verdict == OpennessVerdict::NotOpenWitness;
      any_inconclusive = any_inconclusive || r.verdict == OpennessVerdict::Inconclusive;
    }
  }
  rep.add("checked", checked);
  rep.add("verdict", any_refuted ? std::string("NotOpenWitness")
                                 : (any_inconclusive ? std::string("Inconclusive")
                                                     : std::string("OpenCertified")));
  if (!failures.empty()) rep.add("findings", failures);
  return any_refuted ? kExitViolated : (any_inconclusive ? kExitInconclusive : kExitPass);
}

int cmd_perfect(const Options& opt, Report& rep) {
  ShiftSpec shift = load_shift(opt);
  if (!shift.finite_type_presentation())
    throw CLI::ValidationError("perfect requires a finite-type shift");
  const SftEngine& e = shift.engine();
  auto rigid = e.rigidity_fixpoint();
  rep.add("shift", shift.name());
  rep.add("perfect", e.is_perfect());
  std::vector<std::string> lines;
  for (const auto& b : rigid) lines.push_back(block_to_text(b, shift.alphabets()));
  rep.add("rigid_blocks", lines);
  return e.is_perfect() ? kExitPass : kExitViolated;
}

int cmd_empty(const Options& opt, Report& rep) {
  ShiftSpec shift = load_shift(opt);
  if (!shift.finite_type_presentation())
    throw CLI::ValidationError("empty requires a finite-type shift");
  bool empty = shift.engine().is_empty();
  rep.add("shift", shift.name());
  rep.add("empty", empty);
  return empty ? kExitViolated : kExitPass;
}

int cmd_gap(const Options& opt, Report& rep) {
  ShiftSpec shift = load_shift(opt);
  if (opt.n < 1) throw CLI::ValidationError("-n must be >= 1");
  WitnessReport r = sft_approximation_gap(shift, opt.n, opt.budget);
  rep.add("shift", shift.name());
  rep.add("n", opt.n);
  rep.add("verdict", to_string(r.verdict));
  rep.add("detail", r.detail);
  if (r.witness)
    rep.add("witness", block_to_text(r.witness->body, shift.alphabets()));
  return openness_verdict_exit(r.verdict);
}

void add_shift_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--builtin", opt.builtin, "built-in shift name");
  cmd->add_option("--shift", opt.shift_file, "forbidden-set file");
  cmd->add_option("--format", opt.format, "text|structured")
      ->check(CLI::IsMember({"text", "structured"}));
  cmd->add_option("--budget", opt.budget, "enumeration budget");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tree-shift workbench"};
  app.require_subcommand(1);
  Options opt;

  auto* blocks = app.add_subcommand("blocks", "block language of a shift");
  add_shift_flags(blocks, opt);
  blocks->add_option("-n", opt.n, "block height");
  blocks->add_flag("--list", opt.list, "print the blocks");

  auto* shadow = app.add_subcommand("shadow", "trace a pseudo-orbit file");
  add_shift_flags(shadow, opt);
  shadow->add_option("--orbit", opt.orbit_file, "pseudo-orbit file");
  shadow->add_option("-m", opt.m, "tracing depth");

  auto* stability = app.add_subcommand("stability", "injectivize + tau/phi pipeline");
  add_shift_flags(stability, opt);
  stability->add_option("--orbit", opt.orbit_file, "pseudo-orbit file");
  stability->add_option("-m", opt.m, "closeness depth");
  stability->add_option("--samples", opt.samples, "random sample trees");
  stability->add_option("--seed", opt.seed, "rng seed");

  auto* openness = app.add_subcommand("openness", "bounded openness of shift maps");
  add_shift_flags(openness, opt);
  openness->add_option("--block", opt.block_text, "base block (text form)");
  openness->add_option("-n", opt.n, "sweep all language blocks of this height");
  openness->add_option("--direction", opt.direction, "single direction (default: all)");
  openness->add_option("--probe-depth", opt.probe_depth, "search depth");

  auto* perfect = app.add_subcommand("perfect", "rigidity set / isolated points");
  add_shift_flags(perfect, opt);

  auto* empty = app.add_subcommand("empty", "emptiness of a finite-type shift");
  add_shift_flags(empty, opt);

  auto* gap = app.add_subcommand("gap", "finite-type approximation gap at height n");
  add_shift_flags(gap, opt);
  gap->add_option("-n", opt.n, "approximation height");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  Report rep(opt.format == "structured");
  int code = kExitUsage;
  try {
    if (blocks->parsed()) code = cmd_blocks(opt, rep);
    else if (shadow->parsed()) code = cmd_shadow(opt, rep);
    else if (stability->parsed()) code = cmd_stability(opt, rep);
    else if (openness->parsed()) code = cmd_openness(opt, rep);
    else if (perfect->parsed()) code = cmd_perfect(opt, rep);
    else if (empty->parsed()) code = cmd_empty(opt, rep);
    else if (gap->parsed()) code = cmd_gap(opt, rep);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  rep.emit(std::cout);
  return code;
}
