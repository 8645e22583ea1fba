#pragma once

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "omlkit/rational.hpp"

namespace omlkit {

/// Atoms-and-contexts hypergraph: the compact pasting representation of a
/// finite quantum logic. Contexts (blocks) are the maximal Boolean
/// subalgebras; each is stored as a list of atom indices.
class GreechieDiagram {
 public:
  GreechieDiagram(std::vector<std::string> atoms, std::vector<std::vector<int>> contexts)
      : atoms_(std::move(atoms)), contexts_(std::move(contexts)) {
    validate();
  }

  static GreechieDiagram from_names(const std::vector<std::vector<std::string>>& contexts) {
    std::vector<std::string> atoms;
    std::map<std::string, int> index;
    std::vector<std::vector<int>> ctx;
    for (const auto& c : contexts) {
      std::vector<int> ids;
      for (const auto& name : c) {
        auto it = index.find(name);
        if (it == index.end()) {
          it = index.emplace(name, static_cast<int>(atoms.size())).first;
          atoms.push_back(name);
        }
        ids.push_back(it->second);
      }
      ctx.push_back(std::move(ids));
    }
    return GreechieDiagram(std::move(atoms), std::move(ctx));
  }

  std::size_t atom_count() const { return atoms_.size(); }
  std::size_t context_count() const { return contexts_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<std::vector<int>>& contexts() const { return contexts_; }
  const std::string& atom_name(int i) const { return atoms_[i]; }

  int atom_index(const std::string& name) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i] == name) return static_cast<int>(i);
    throw DomainError("unknown atom '" + name + "'");
  }

  /// Contexts containing each atom.
  std::vector<std::vector<int>> atom_contexts() const {
    std::vector<std::vector<int>> out(atoms_.size());
    for (std::size_t c = 0; c < contexts_.size(); ++c)
      for (int a : contexts_[c]) out[a].push_back(static_cast<int>(c));
    return out;
  }

  /// Same hypergraph up to atom renaming and context/atom order.
  bool same_shape(const GreechieDiagram& other) const;

 private:
  void validate() const {
    std::vector<int> seen(atoms_.size(), 0);
    std::vector<std::set<int>> sets;
    for (const auto& c : contexts_) {
      std::set<int> s(c.begin(), c.end());
      if (s.size() < 2) throw DomainError("context with fewer than 2 distinct atoms");
      if (s.size() != c.size()) throw DomainError("repeated atom inside a context");
      for (int a : c) {
        if (a < 0 || a >= static_cast<int>(atoms_.size()))
          throw DomainError("context references unknown atom id");
        seen[a] = 1;
      }
      sets.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (std::size_t j = 0; j < sets.size(); ++j)
        if (i != j && std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(),
                                    sets[i].end()))
          throw DomainError("context is a subset of another context");
    for (std::size_t a = 0; a < atoms_.size(); ++a)
      if (!seen[a]) throw DomainError("atom '" + atoms_[a] + "' appears in no context");
    std::set<std::string> names(atoms_.begin(), atoms_.end());
    if (names.size() != atoms_.size()) throw DomainError("duplicate atom name");
  }

  std::vector<std::string> atoms_;
  std::vector<std::vector<int>> contexts_;
};

// --- text format ------------------------------------------------------------
// One context per line, comma-separated atom names; `#` starts a comment.

inline GreechieDiagram parse_greechie(std::istream& in) {
  std::vector<std::vector<std::string>> contexts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::vector<std::string> names;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      auto b = tok.find_first_not_of(" \t\r");
      auto e = tok.find_last_not_of(" \t\r");
      if (b == std::string::npos) throw ParseError("line " + std::to_string(lineno) +
                                                   ": empty atom name");
      names.push_back(tok.substr(b, e - b + 1));
    }
    if (names.empty()) continue;
    contexts.push_back(std::move(names));
  }
  if (contexts.empty()) throw ParseError("no contexts in Greechie input");
  try {
    return GreechieDiagram::from_names(contexts);
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid Greechie diagram: ") + e.what());
  }
}

inline void emit_greechie(const GreechieDiagram& d, std::ostream& out) {
  for (const auto& c : d.contexts()) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out << ",";
      out << d.atom_name(c[i]);
    }
    out << "\n";
  }
}

/// Deterministic Graphviz rendering: atoms as circles, each context drawn as
/// a chain of edges in its own color.
inline std::string greechie_dot(const GreechieDiagram& d) {
  static const char* palette[] = {"black",  "red",    "blue",   "darkgreen",
                                  "orange", "purple", "brown",  "cadetblue",
                                  "crimson", "darkcyan"};
  std::ostringstream out;
  out << "graph greechie {\n  node [shape=circle];\n";
  std::vector<std::string> sorted = d.atoms();
  std::sort(sorted.begin(), sorted.end());
  for (const auto& a : sorted) out << "  \"" << a << "\";\n";
  for (std::size_t c = 0; c < d.context_count(); ++c) {
    const auto& ctx = d.contexts()[c];
    for (std::size_t i = 0; i + 1 < ctx.size(); ++i) {
      out << "  \"" << d.atom_name(ctx[i]) << "\" -- \"" << d.atom_name(ctx[i + 1])
          << "\" [color=" << palette[c % 10] << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

inline bool GreechieDiagram::same_shape(const GreechieDiagram& other) const {
  if (atoms_.size() != other.atoms_.size() || contexts_.size() != other.contexts_.size())
    return false;
  // Backtracking atom matching guided by context-size multisets per atom.
  auto signature = [](const GreechieDiagram& d) {
    auto ac = d.atom_contexts();
    std::vector<std::vector<int>> sig(d.atom_count());
    for (std::size_t a = 0; a < d.atom_count(); ++a) {
      for (int c : ac[a]) sig[a].push_back(static_cast<int>(d.contexts()[c].size()));
      std::sort(sig[a].begin(), sig[a].end());
    }
    return sig;
  };
  auto sig1 = signature(*this), sig2 = signature(other);
  auto ctx_sets = [](const GreechieDiagram& d) {
    std::set<std::set<int>> s;
    for (const auto& c : d.contexts()) s.insert(std::set<int>(c.begin(), c.end()));
    return s;
  };
  std::set<std::set<int>> target = ctx_sets(other);
  std::vector<int> map(atoms_.size(), -1);
  std::vector<char> used(atoms_.size(), 0);
  auto consistent = [&]() {
    // All fully-mapped contexts must exist in the target.
    for (const auto& c : contexts_) {
      std::set<int> img;
      bool full = true;
      for (int a : c) {
        if (map[a] < 0) {
          full = false;
          break;
        }
        img.insert(map[a]);
      }
      if (full && !target.count(img)) return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> go = [&](std::size_t a) -> bool {
    if (a == atoms_.size()) return consistent();
    for (std::size_t b = 0; b < atoms_.size(); ++b) {
      if (used[b] || sig1[a] != sig2[b]) continue;
      map[a] = static_cast<int>(b);
      used[b] = 1;
      if (consistent() && go(a + 1)) return true;
      used[b] = 0;
      map[a] = -1;
    }
    return false;
  };
  return go(0);
}

}  // namespace omlkit
