#include "streq/io.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "streq/core.hpp"

namespace streq {

namespace {

// Strips the comment and splits the rest into whitespace-separated tokens.
std::vector<std::string> tokenize(std::string line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

int parse_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  }
}

}  // namespace

System parse_instance(std::istream& in) {
  System sys;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] == "semantics:") {
      if (toks.size() != 2)
        throw ParseError(lineno, "semantics: wants exactly one value");
      if (toks[1] == "nonerasing")
        sys.semantics = Semantics::NonErasing;
      else if (toks[1] == "allowempty")
        sys.semantics = Semantics::AllowEmpty;
      else
        throw ParseError(lineno, "unknown semantics '" + toks[1] + "'");
    } else if (toks[0] == "deletions:") {
      if (toks.size() != 2)
        throw ParseError(lineno, "deletions: wants exactly one value");
      int d = parse_int(toks[1], lineno);
      if (d < 0) throw ParseError(lineno, "deletion budget must be non-negative");
      sys.deletion_budget = d;
    } else if (toks[0] == "eq:") {
      SymbolString target;
      std::vector<BlockId> pattern;
      bool after_bar = false;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const std::string& t = toks[i];
        if (t == "|") {
          if (after_bar) throw ParseError(lineno, "more than one '|' in equation");
          after_bar = true;
        } else if (!after_bar) {
          if (t.front() == '*')
            throw ParseError(lineno, "'*' is not allowed in targets");
          target.push_back(sys.symbol(t));
        } else if (t == "*") {
          pattern.push_back(sys.joker());
        } else if (t.front() == '*') {
          throw ParseError(lineno, "block names must not start with '*'");
        } else {
          pattern.push_back(sys.block(t));
        }
      }
      if (!after_bar) throw ParseError(lineno, "equation needs a '|' separator");
      if (target.empty()) throw EmptyTarget(lineno, "equation has an empty target");
      if (pattern.empty()) throw EmptyPattern(lineno, "equation has an empty pattern");
      sys.add_equation(std::move(target), std::move(pattern));
    } else {
      throw ParseError(lineno, "unrecognized directive '" + toks[0] + "'");
    }
  }
  if (auto bad = sys.check()) throw ParseError(lineno, *bad);
  return sys;
}

System parse_instance_string(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::string render_instance(const System& sys) {
  std::ostringstream out;
  out << "semantics: "
      << (sys.semantics == Semantics::AllowEmpty ? "allowempty" : "nonerasing")
      << "\n";
  if (sys.deletion_budget) out << "deletions: " << *sys.deletion_budget << "\n";
  for (const auto& eq : sys.equations()) {
    out << "eq:";
    for (SymbolId s : eq.target) out << " " << sys.symbol_name(s);
    out << " |";
    for (BlockId b : eq.pattern)
      out << " " << (sys.is_joker(b) ? "*" : sys.block_name(b));
    out << "\n";
  }
  return out.str();
}

bool same_system(const System& a, const System& b) {
  if (a.semantics != b.semantics) return false;
  if (a.deletion_budget != b.deletion_budget) return false;
  if (a.equations().size() != b.equations().size()) return false;
  for (std::size_t i = 0; i < a.equations().size(); ++i) {
    const auto& ea = a.equations()[i];
    const auto& eb = b.equations()[i];
    if (ea.target.size() != eb.target.size()) return false;
    if (ea.pattern.size() != eb.pattern.size()) return false;
    for (std::size_t j = 0; j < ea.target.size(); ++j)
      if (a.symbol_name(ea.target[j]) != b.symbol_name(eb.target[j])) return false;
    for (std::size_t j = 0; j < ea.pattern.size(); ++j)
      if (a.block_name(ea.pattern[j]) != b.block_name(eb.pattern[j])) return false;
  }
  return true;
}

Graph parse_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next_tokens = [&]() -> std::vector<std::string> {
    while (std::getline(in, line)) {
      ++lineno;
      auto toks = tokenize(line);
      if (!toks.empty()) return toks;
    }
    return {};
  };

  auto header = next_tokens();
  if (header.empty()) throw ParseError(lineno, "missing graph header");
  if (header.size() < 2 || header.size() > 3)
    throw ParseError(lineno, "graph header wants 'n m' or 'n m k'");
  Graph g;
  g.n = parse_int(header[0], lineno);
  int m = parse_int(header[1], lineno);
  int k = header.size() == 3 ? parse_int(header[2], lineno) : 0;
  if (g.n < 0 || m < 0 || k < 0)
    throw ParseError(lineno, "graph header values must be non-negative");

  for (int e = 0; e < m; ++e) {
    auto toks = next_tokens();
    if (toks.size() != 2) throw ParseError(lineno, "expected an edge line 's t'");
    int s = parse_int(toks[0], lineno);
    int t = parse_int(toks[1], lineno);
    if (s == t) throw ParseError(lineno, "self-loops are not allowed");
    if (s > t) std::swap(s, t);
    g.edges.emplace_back(s, t);
  }
  std::sort(g.edges.begin(), g.edges.end());
  if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end())
    throw ParseError(lineno, "duplicate edge");

  auto tail = next_tokens();
  if (k > 0) {
    if (static_cast<int>(tail.size()) != g.n)
      throw ParseError(lineno, "expected one color per vertex");
    for (const auto& t : tail) g.colors.push_back(parse_int(t, lineno));
    tail = next_tokens();
  }
  if (!tail.empty() && tail[0] == "labels:") {
    g.labels.assign(tail.begin() + 1, tail.end());
    tail = next_tokens();
  }
  if (!tail.empty()) throw ParseError(lineno, "trailing content in graph file");

  if (auto bad = g.check(k)) throw ParseError(lineno, "bad graph: " + *bad);
  return g;
}

Graph parse_graph_string(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

std::string render_graph(const Graph& g) {
  std::ostringstream out;
  out << g.n << " " << g.edges.size();
  int k = 0;
  for (int c : g.colors) k = std::max(k, c);
  if (g.colored()) out << " " << k;
  out << "\n";
  for (auto [s, t] : g.edges) out << s << " " << t << "\n";
  if (g.colored()) {
    for (int v = 0; v < g.n; ++v) out << (v ? " " : "") << g.colors[v];
    out << "\n";
  }
  if (!g.labels.empty()) {
    out << "labels:";
    for (const auto& l : g.labels) out << " " << l;
    out << "\n";
  }
  return out.str();
}

Assignment parse_assignment(System& sys, std::istream& in) {
  Assignment sigma;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks.size() < 2 || toks[1] != "=")
      throw ParseError(lineno, "expected '<block> = <value tokens>'");
    auto b = sys.find_block(toks[0]);
    if (!b) throw ParseError(lineno, "unknown block '" + toks[0] + "'");
    SymbolString value;
    for (std::size_t i = 2; i < toks.size(); ++i) value.push_back(sys.symbol(toks[i]));
    sigma.set(*b, std::move(value));
  }
  return sigma;
}

Assignment parse_assignment_string(System& sys, const std::string& text) {
  std::istringstream in(text);
  return parse_assignment(sys, in);
}

std::string render_assignment(const System& sys, const Assignment& sigma) {
  // Blocks in first-occurrence order, then any assigned strays by id.
  std::vector<BlockId> order;
  std::vector<char> seen(sys.block_count(), 0);
  for (const auto& eq : sys.equations())
    for (BlockId b : eq.pattern)
      if (!seen[b]) {
        seen[b] = 1;
        order.push_back(b);
      }
  for (BlockId b = 0; b < sys.block_count(); ++b)
    if (!seen[b]) order.push_back(b);

  std::ostringstream out;
  for (BlockId b : order) {
    if (const SymbolString* v = sigma.get_if(b)) {
      out << sys.block_name(b) << " =";
      for (SymbolId s : *v) out << " " << sys.symbol_name(s);
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace streq
