#include "treeshift/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace treeshift {

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(line_no) + ": " + what);
}

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// key=value tokens on one line; `labels` splits on commas.
std::map<std::string, std::string> parse_header(const std::string& line, int line_no) {
  std::map<std::string, std::string> out;
  std::istringstream iss(line);
  std::string tok;
  while (iss >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key=value, got '" + tok + "'");
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

int header_int(const std::map<std::string, std::string>& h, const std::string& key,
               int line_no) {
  auto it = h.find(key);
  if (it == h.end()) fail(line_no, "missing header field '" + key + "'");
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    fail(line_no, "field '" + key + "' is not an integer");
  }
}

Alphabets header_alphabets(const std::map<std::string, std::string>& h, int line_no) {
  Alphabets a;
  a.arity = header_int(h, "arity", line_no);
  auto it = h.find("labels");
  if (it == h.end()) fail(line_no, "missing header field 'labels'");
  std::string sym;
  std::istringstream iss(it->second);
  while (std::getline(iss, sym, ',')) a.labels.push_back(sym);
  validate_alphabets(a);
  return a;
}

Label parse_label(const std::string& sym, const Alphabets& a, int line_no) {
  auto it = std::find(a.labels.begin(), a.labels.end(), sym);
  if (it == a.labels.end()) fail(line_no, "unknown label '" + sym + "'");
  return static_cast<Label>(it - a.labels.begin());
}

// Skips blank and comment lines; returns false at end of stream.
bool next_content_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    line = strip(line);
    auto hash = line.find('#');
    if (hash != std::string::npos) line = strip(line.substr(0, hash));
    if (!line.empty()) return true;
  }
  return false;
}

std::string header_line(const Alphabets& a) {
  std::string labels;
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    if (i) labels += ',';
    labels += a.labels[i];
  }
  return "arity=" + std::to_string(a.arity) + " labels=" + labels;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

NormalizedSft load_sft(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_content_line(in, line, line_no)) fail(line_no, "empty forbidden-set file");
  auto header = parse_header(line, line_no);
  Alphabets a = header_alphabets(header, line_no);
  int height = header_int(header, "height", line_no);
  if (height < 1) fail(line_no, "height must be >= 1");

  ForbiddenSet f;
  f.alphabets = a;
  std::vector<Block> blocks;
  while (next_content_line(in, line, line_no)) {
    if (line.rfind("pattern", 0) == 0) {
      Pattern pat;
      std::istringstream iss(line.substr(7));
      std::string cell;
      while (iss >> cell) {
        auto colon = cell.find(':');
        if (colon == std::string::npos) fail(line_no, "expected word:label, got '" + cell + "'");
        Word w;
        try {
          w = parse_word(cell.substr(0, colon), a.arity);
        } catch (const std::exception& e) {
          fail(line_no, e.what());
        }
        if (static_cast<int>(w.size()) >= height)
          fail(line_no, "pattern cell deeper than the header height");
        pat.cells.emplace_back(std::move(w), parse_label(cell.substr(colon + 1), a, line_no));
      }
      if (pat.cells.empty()) fail(line_no, "empty pattern");
      f.patterns.push_back(std::move(pat));
      continue;
    }
    Block b;
    try {
      b = block_from_text(line, a);
    } catch (const std::exception& e) {
      fail(line_no, e.what());
    }
    if (b.height > height) fail(line_no, "block taller than the header height");
    blocks.push_back(std::move(b));
  }

  // Blocks are just fully specified patterns; normalize everything to
  // the common header height.
  for (const auto& b : blocks) {
    Pattern pat;
    for (const auto& w : words_below(b.arity, b.height)) pat.cells.emplace_back(w, b.at(w));
    f.patterns.push_back(std::move(pat));
  }
  return normalize(f, height);
}

NormalizedSft load_sft_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return load_sft(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_sft(std::ostream& out, const NormalizedSft& sft) {
  out << header_line(sft.alphabets) << " height=" << sft.height << "\n";
  for (const auto& b : sft.forbidden) out << block_to_text(b, sft.alphabets) << "\n";
}

void save_sft_file(const std::string& path, const NormalizedSft& sft) {
  auto out = open_output(path);
  save_sft(out, sft);
}

ShiftSpec shift_from_file(const std::string& path) {
  auto slash = path.find_last_of("/\\");
  std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = stem.find_last_of('.');
  if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return ShiftSpec::finite_type(stem, SftEngine::build(load_sft_file(path)));
}

PseudoOrbitFamily load_orbit(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_content_line(in, line, line_no)) fail(line_no, "empty orbit file");
  auto header = parse_header(line, line_no);
  PseudoOrbitFamily f;
  f.alphabets = header_alphabets(header, line_no);
  f.order = header_int(header, "order", line_no);
  f.entry_depth = header_int(header, "depth", line_no);
  f.resolution = header_int(header, "resolution", line_no);
  if (f.order < 1 || f.entry_depth < 1 || f.resolution < 0)
    fail(line_no, "order and depth must be >= 1, resolution >= 0");

  std::size_t count = static_cast<std::size_t>(node_count(f.alphabets.arity, f.order));
  std::vector<std::optional<TruncatedTree>> slots(count);
  while (next_content_line(in, line, line_no)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) fail(line_no, "expected '<word>: <block>'");
    Word w;
    try {
      w = parse_word(strip(line.substr(0, colon)), f.alphabets.arity);
    } catch (const std::exception& e) {
      fail(line_no, e.what());
    }
    if (static_cast<int>(w.size()) >= f.order) fail(line_no, "index word beyond the order");
    std::size_t idx = bfs_index(w, f.alphabets.arity);
    if (slots[idx]) fail(line_no, "duplicate entry for " + format_word(w));
    Block b;
    try {
      b = block_from_text(strip(line.substr(colon + 1)), f.alphabets);
    } catch (const std::exception& e) {
      fail(line_no, e.what());
    }
    if (b.height != f.entry_depth) fail(line_no, "entry depth differs from the header");
    slots[idx] = as_tree(std::move(b));
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (!slots[i])
      throw std::runtime_error("missing entry for " +
                               format_word(word_at(i, f.alphabets.arity, f.order)));
    f.entries.push_back(std::move(*slots[i]));
  }
  validate_family(f);
  return f;
}

PseudoOrbitFamily load_orbit_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return load_orbit(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_orbit(std::ostream& out, const PseudoOrbitFamily& f) {
  out << header_line(f.alphabets) << " order=" << f.order << " depth=" << f.entry_depth
      << " resolution=" << f.resolution << "\n";
  for (const auto& w : words_below(f.alphabets.arity, f.order))
    out << format_word(w) << ": " << block_to_text(f.entry(w).body, f.alphabets) << "\n";
}

void save_orbit_file(const std::string& path, const PseudoOrbitFamily& f) {
  auto out = open_output(path);
  save_orbit(out, f);
}

}  // namespace treeshift
