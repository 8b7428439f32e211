#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace streq {

// A terminal symbol. Symbols are interned: equality is id equality.
using SymbolId = std::uint32_t;
// A word over the terminal alphabet.
using SymbolString = std::vector<SymbolId>;
// A block variable. Blocks are interned per System; jokers are blocks that
// were introduced anonymously and must occur exactly once system-wide.
using BlockId = std::uint32_t;

enum class Semantics {
  NonErasing,  // every block must be assigned a non-empty word
  AllowEmpty,  // blocks may be assigned the empty word
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingBlock : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  std::uint64_t branches;
  explicit BudgetExceeded(std::uint64_t n)
      : Error("branch cap exceeded after " + std::to_string(n) + " branches"),
        branches(n) {}
};

struct NotBorderOnly : Error {
  using Error::Error;
};

struct BadKappa : Error {
  using Error::Error;
};

struct NotColored : Error {
  using Error::Error;
};

struct DecodeFailure : Error {
  using Error::Error;
};

struct InternalInconsistency : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line;
  ParseError(int line_, const std::string& what_)
      : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

class SymbolTable {
 public:
  SymbolId intern(std::string_view name) {
    auto it = index_.find(std::string(name));
    if (it != index_.end()) return it->second;
    SymbolId id = static_cast<SymbolId>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
  }

  std::optional<SymbolId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& name(SymbolId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, SymbolId> index_;
};

struct Equation {
  SymbolString target;          // non-empty word over the symbol table
  std::vector<BlockId> pattern; // non-empty sequence of blocks
};

// A system of string equations over one shared symbol table and one shared
// block namespace. Build it up with symbol()/block()/joker()/add_equation(),
// then treat it as immutable; all solver operations take `const System&`.
class System {
 public:
  Semantics semantics = Semantics::NonErasing;
  std::optional<int> deletion_budget;

  SymbolId symbol(std::string_view name) { return symbols_.intern(name); }
  const SymbolTable& symbols() const { return symbols_; }
  const std::string& symbol_name(SymbolId id) const { return symbols_.name(id); }

  SymbolString word(std::initializer_list<std::string_view> names) {
    SymbolString w;
    for (auto n : names) w.push_back(symbol(n));
    return w;
  }

  // Interns a named block. The name "*" is reserved for jokers.
  BlockId block(std::string_view name) {
    if (name.empty() || name.front() == '*')
      throw Error("block names must be non-empty and must not start with '*'");
    auto it = block_index_.find(std::string(name));
    if (it != block_index_.end()) return it->second;
    return new_block(name, /*joker=*/false);
  }

  // Creates a fresh joker block. Jokers are auto-named *1, *2, ... in
  // creation order so that rendering and re-parsing reproduce identical ids.
  BlockId joker() {
    ++joker_count_;
    return new_block("*" + std::to_string(joker_count_), /*joker=*/true);
  }

  bool is_joker(BlockId b) const { return block_joker_.at(b); }
  const std::string& block_name(BlockId b) const { return block_names_.at(b); }
  std::optional<BlockId> find_block(std::string_view name) const {
    auto it = block_index_.find(std::string(name));
    if (it == block_index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t block_count() const { return block_names_.size(); }

  void add_equation(SymbolString target, std::vector<BlockId> pattern) {
    if (target.empty()) throw Error("equation target must be non-empty");
    if (pattern.empty()) throw Error("equation pattern must be non-empty");
    for (BlockId b : pattern)
      if (b >= block_names_.size()) throw Error("pattern references unknown block");
    equations_.push_back({std::move(target), std::move(pattern)});
  }

  const std::vector<Equation>& equations() const { return equations_; }

  // Returns a problem description if the system violates a structural
  // invariant (currently: a joker block referenced more than once, or an
  // unused joker), or nullopt if well-formed.
  std::optional<std::string> check() const {
    std::vector<int> uses(block_names_.size(), 0);
    for (const auto& eq : equations_)
      for (BlockId b : eq.pattern) ++uses[b];
    for (BlockId b = 0; b < block_names_.size(); ++b) {
      if (block_joker_[b] && uses[b] != 1)
        return "joker " + block_names_[b] + " must occur exactly once, occurs " +
               std::to_string(uses[b]) + " times";
    }
    return std::nullopt;
  }

 private:
  BlockId new_block(std::string_view name, bool joker) {
    BlockId id = static_cast<BlockId>(block_names_.size());
    block_names_.emplace_back(name);
    block_joker_.push_back(joker);
    block_index_.emplace(block_names_.back(), id);
    return id;
  }

  SymbolTable symbols_;
  std::vector<std::string> block_names_;
  std::vector<bool> block_joker_;
  std::unordered_map<std::string, BlockId> block_index_;
  int joker_count_ = 0;
  std::vector<Equation> equations_;
};

// A (possibly partial) substitution from blocks to words.
class Assignment {
 public:
  void set(BlockId b, SymbolString value) {
    if (values_.size() <= b) values_.resize(b + 1);
    values_[b] = std::move(value);
  }
  void unset(BlockId b) {
    if (b < values_.size()) values_[b].reset();
  }
  bool has(BlockId b) const { return b < values_.size() && values_[b].has_value(); }
  const SymbolString& get(BlockId b) const {
    if (!has(b)) throw MissingBlock("assignment has no entry for block id " + std::to_string(b));
    return *values_[b];
  }
  const SymbolString* get_if(BlockId b) const {
    return has(b) ? &*values_[b] : nullptr;
  }

  bool operator==(const Assignment& o) const {
    std::size_t n = std::max(values_.size(), o.values_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const bool a = i < values_.size() && values_[i].has_value();
      const bool b = i < o.values_.size() && o.values_[i].has_value();
      if (a != b) return false;
      if (a && *values_[i] != *o.values_[i]) return false;
    }
    return true;
  }

 private:
  std::vector<std::optional<SymbolString>> values_;
};

}  // namespace streq
