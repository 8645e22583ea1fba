#pragma once

#include <algorithm>
#include <functional>
#include <istream>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "omlkit/lattice.hpp"
#include "omlkit/states.hpp"

namespace omlkit {

/// Bounded poset of subsets of a named ground set, ordered by inclusion.
/// The bottom is the empty set, the top the full ground set; every figure
/// in scope is of this set-labeled form, which makes relative complements
/// concrete set differences.
class SetPoset {
 public:
  SetPoset(std::vector<std::string> ground, std::vector<std::set<int>> elements)
      : ground_(std::move(ground)), elements_(std::move(elements)) {
    validate();
    locate_bounds();
  }

  static SetPoset from_sets(const std::vector<std::set<std::string>>& sets);

  std::size_t size() const { return elements_.size(); }
  std::size_t ground_size() const { return ground_.size(); }
  const std::set<int>& element(int i) const { return elements_[i]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  bool leq(int x, int y) const {
    return std::includes(elements_[y].begin(), elements_[y].end(), elements_[x].begin(),
                         elements_[x].end());
  }

  std::string label(int i) const {
    std::string s = "{";
    bool first = true;
    for (int g : elements_[i]) {
      if (!first) s += ",";
      s += ground_[g];
      first = false;
    }
    return s + "}";
  }

  std::string set_label(const std::set<int>& s) const {
    std::string out = "{";
    bool first = true;
    for (int g : s) {
      if (!first) out += ",";
      out += ground_[g];
      first = false;
    }
    return out + "}";
  }

  /// Greatest lower bound among the listed elements, if it exists.
  std::optional<int> meet_opt(int x, int y) const {
    int best = -1;
    for (std::size_t z = 0; z < size(); ++z)
      if (leq(static_cast<int>(z), x) && leq(static_cast<int>(z), y) &&
          (best < 0 || leq(best, static_cast<int>(z))))
        best = static_cast<int>(z);
    if (best < 0) return std::nullopt;
    for (std::size_t z = 0; z < size(); ++z)
      if (leq(static_cast<int>(z), x) && leq(static_cast<int>(z), y) &&
          !leq(static_cast<int>(z), best))
        return std::nullopt;
    return best;
  }
  std::optional<int> join_opt(int x, int y) const {
    int best = -1;
    for (std::size_t z = 0; z < size(); ++z)
      if (leq(x, static_cast<int>(z)) && leq(y, static_cast<int>(z)) &&
          (best < 0 || leq(static_cast<int>(z), best)))
        best = static_cast<int>(z);
    if (best < 0) return std::nullopt;
    for (std::size_t z = 0; z < size(); ++z)
      if (leq(x, static_cast<int>(z)) && leq(y, static_cast<int>(z)) &&
          !leq(best, static_cast<int>(z)))
        return std::nullopt;
    return best;
  }

  /// Bounded poset as a Lattice object (no orthocomplement); for law checks
  /// on figure inputs.
  Lattice to_lattice() const {
    std::vector<std::string> labels(size());
    for (std::size_t i = 0; i < size(); ++i) labels[i] = label(static_cast<int>(i));
    std::vector<std::vector<bool>> m(size(), std::vector<bool>(size(), false));
    for (std::size_t x = 0; x < size(); ++x)
      for (std::size_t y = 0; y < size(); ++y)
        m[x][y] = leq(static_cast<int>(x), static_cast<int>(y));
    return Lattice(std::move(labels), std::move(m));
  }

 private:
  void validate() const {
    if (elements_.empty()) throw DomainError("empty poset");
    std::set<std::set<int>> uniq(elements_.begin(), elements_.end());
    if (uniq.size() != elements_.size()) throw DomainError("duplicate poset element");
    std::set<std::string> names(ground_.begin(), ground_.end());
    if (names.size() != ground_.size()) throw DomainError("duplicate ground-set name");
    for (const auto& e : elements_)
      for (int g : e)
        if (g < 0 || g >= static_cast<int>(ground_.size()))
          throw DomainError("element references unknown ground-set member");
  }

  void locate_bounds() {
    bottom_ = top_ = -1;
    std::set<int> full;
    for (int g = 0; g < static_cast<int>(ground_.size()); ++g) full.insert(g);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (elements_[i].empty()) bottom_ = static_cast<int>(i);
      if (elements_[i] == full) top_ = static_cast<int>(i);
    }
    if (bottom_ < 0) throw DomainError("poset has no {} bottom element");
    if (top_ < 0) throw DomainError("poset has no full-set top element");
  }

  std::vector<std::string> ground_;
  std::vector<std::set<int>> elements_;
  int bottom_ = -1, top_ = -1;
};

inline SetPoset SetPoset::from_sets(const std::vector<std::set<std::string>>& sets) {
  std::set<std::string> ground_names;
  for (const auto& s : sets) ground_names.insert(s.begin(), s.end());
  std::vector<std::string> ground(ground_names.begin(), ground_names.end());
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < ground.size(); ++i) index[ground[i]] = static_cast<int>(i);
  std::vector<std::set<int>> elements;
  for (const auto& s : sets) {
    std::set<int> e;
    for (const auto& n : s) e.insert(index[n]);
    elements.push_back(std::move(e));
  }
  return SetPoset(std::move(ground), std::move(elements));
}

// --- poset file format --------------------------------------------------------
// One element per line as a set literal: `{a,b}`, `{}` for the bottom.

inline SetPoset parse_set_poset(std::istream& in) {
  std::vector<std::set<std::string>> sets;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    std::string body = line.substr(b, e - b + 1);
    if (body.front() != '{' || body.back() != '}')
      throw ParseError("line " + std::to_string(lineno) + ": expected {..} set literal");
    body = body.substr(1, body.size() - 2);
    std::set<std::string> s;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      auto tb = tok.find_first_not_of(" \t");
      auto te = tok.find_last_not_of(" \t");
      if (tb == std::string::npos)
        throw ParseError("line " + std::to_string(lineno) + ": empty set member");
      s.insert(tok.substr(tb, te - tb + 1));
    }
    sets.push_back(std::move(s));
  }
  if (sets.empty()) throw ParseError("no elements in poset input");
  try {
    return SetPoset::from_sets(sets);
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid poset: ") + e.what());
  }
}

inline void emit_set_poset(const SetPoset& p, std::ostream& out) {
  for (std::size_t i = 0; i < p.size(); ++i) out << p.label(static_cast<int>(i)) << "\n";
}

// --- maximal chains and their Boolean blocks -----------------------------------

/// All maximal totally ordered subsets from bottom to top, as index paths
/// along the covering relation, in canonical order.
inline std::vector<std::vector<int>> maximal_chains(const SetPoset& p) {
  std::size_t n = p.size();
  std::vector<std::vector<int>> covers(n);  // x -> elements covering x
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !p.leq(static_cast<int>(x), static_cast<int>(y))) continue;
      bool strict_between = false;
      for (std::size_t z = 0; z < n && !strict_between; ++z)
        if (z != x && z != y && p.leq(static_cast<int>(x), static_cast<int>(z)) &&
            p.leq(static_cast<int>(z), static_cast<int>(y)))
          strict_between = true;
      if (!strict_between) covers[x].push_back(static_cast<int>(y));
    }
  std::vector<std::vector<int>> chains;
  std::vector<int> cur{p.bottom()};
  std::function<void()> walk = [&] {
    int x = cur.back();
    if (x == p.top()) {
      chains.push_back(cur);
      return;
    }
    for (int y : covers[x]) {
      cur.push_back(y);
      walk();
      cur.pop_back();
    }
  };
  walk();
  std::sort(chains.begin(), chains.end(), [&](const auto& a, const auto& b) {
    std::vector<std::string> la, lb;
    for (int x : a) la.push_back(p.label(x));
    for (int x : b) lb.push_back(p.label(x));
    return la < lb;
  });
  return chains;
}

/// Atoms of the Boolean block generated by a bounded chain: consecutive set
/// differences a_n \ a_{n-1}. The block is 2^(chain length - 1).
inline std::vector<std::set<int>> chain_block_atoms(const SetPoset& p,
                                                    const std::vector<int>& chain) {
  if (chain.size() < 2) throw DomainError("chain must run from bottom to top");
  std::vector<std::set<int>> atoms;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const auto& lo = p.element(chain[i - 1]);
    const auto& hi = p.element(chain[i]);
    if (!std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()) || hi.size() == lo.size())
      throw DomainError("chain is not strictly increasing");
    std::set<int> diff;
    std::set_difference(hi.begin(), hi.end(), lo.begin(), lo.end(),
                        std::inserter(diff, diff.begin()));
    atoms.push_back(std::move(diff));
  }
  return atoms;
}

/// Source poset, pasted target, and the element map.
struct EmbeddingMap {
  SetPoset source;
  Lattice target;
  std::vector<int> map;  // source element -> target element
};

/// Pasting of the Boolean blocks of all maximal chains: blocks are glued
/// along the Boolean subalgebra generated by the chain elements two chains
/// share (always including the bounds), never just by equal set labels.
inline EmbeddingMap kalmbach_embedding(const SetPoset& p) {
  std::vector<std::vector<int>> chains = maximal_chains(p);
  std::size_t nb = chains.size();
  std::vector<std::vector<std::set<int>>> block_atoms(nb);
  for (std::size_t b = 0; b < nb; ++b) block_atoms[b] = chain_block_atoms(p, chains[b]);

  // nodes: (block, union of a subset of its atoms)
  struct Node {
    int block;
    std::set<int> set;
    std::size_t mask;
  };
  std::vector<Node> nodes;
  std::map<std::pair<int, std::set<int>>, int> node_id;
  for (std::size_t b = 0; b < nb; ++b) {
    std::size_t m = block_atoms[b].size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
      std::set<int> s;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (std::size_t(1) << i))
          s.insert(block_atoms[b][i].begin(), block_atoms[b][i].end());
      int id = static_cast<int>(nodes.size());
      nodes.push_back({static_cast<int>(b), s, mask});
      node_id[{static_cast<int>(b), std::move(s)}] = id;
    }
  }
  std::vector<int> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
  auto id_of = [&](int b, const std::set<int>& s) {
    auto it = node_id.find({b, s});
    if (it == node_id.end())
      throw DomainError("pasting inconsistency: shared element missing from a block");
    return it->second;
  };

  for (std::size_t b1 = 0; b1 < nb; ++b1)
    for (std::size_t b2 = b1 + 1; b2 < nb; ++b2) {
      // shared chain elements form a subchain; its consecutive differences
      // generate the shared Boolean subalgebra
      std::vector<int> shared;
      for (int x : chains[b1])
        if (std::find(chains[b2].begin(), chains[b2].end(), x) != chains[b2].end())
          shared.push_back(x);
      std::sort(shared.begin(), shared.end(), [&](int x, int y) {
        return p.element(x).size() < p.element(y).size();
      });
      std::vector<std::set<int>> parts;
      for (std::size_t i = 1; i < shared.size(); ++i) {
        std::set<int> diff;
        const auto& lo = p.element(shared[i - 1]);
        const auto& hi = p.element(shared[i]);
        std::set_difference(hi.begin(), hi.end(), lo.begin(), lo.end(),
                            std::inserter(diff, diff.begin()));
        parts.push_back(std::move(diff));
      }
      std::size_t k = parts.size();
      for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
        std::set<int> u;
        for (std::size_t i = 0; i < k; ++i)
          if (mask & (std::size_t(1) << i)) u.insert(parts[i].begin(), parts[i].end());
        unite(id_of(static_cast<int>(b1), u), id_of(static_cast<int>(b2), u));
      }
    }

  // classes, deterministic numbering
  std::map<int, int> rep_to_el;
  std::vector<int> el_rep;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    int r = find(static_cast<int>(i));
    if (!rep_to_el.count(r)) {
      rep_to_el[r] = static_cast<int>(el_rep.size());
      el_rep.push_back(r);
    }
  }
  std::size_t n = el_rep.size();

  // labels: the set, disambiguated by block when distinct classes share it
  std::map<std::set<int>, int> set_class_count;
  for (std::size_t e = 0; e < n; ++e) ++set_class_count[nodes[el_rep[e]].set];
  std::vector<std::string> labels(n);
  for (std::size_t e = 0; e < n; ++e) {
    const Node& nd = nodes[el_rep[e]];
    labels[e] = p.set_label(nd.set);
    if (set_class_count[nd.set] > 1) labels[e] += "@" + std::to_string(nd.block + 1);
  }

  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t e = 0; e < n; ++e) leq[e][e] = true;
  for (const Node& x : nodes)
    for (const Node& y : nodes) {
      if (x.block != y.block) continue;
      if ((x.mask & y.mask) == x.mask) {
        int ex = rep_to_el[find(id_of(x.block, x.set))];
        int ey = rep_to_el[find(id_of(y.block, y.set))];
        leq[ex][ey] = true;
      }
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (leq[k][j]) leq[i][j] = true;
    }

  std::vector<int> ortho(n, -1);
  for (std::size_t b = 0; b < nb; ++b) {
    std::size_t m = block_atoms[b].size();
    std::size_t full = (std::size_t(1) << m) - 1;
    for (const Node& nd : nodes) {
      if (nd.block != static_cast<int>(b)) continue;
      std::size_t cmask = full & ~nd.mask;
      std::set<int> comp;
      for (std::size_t i = 0; i < m; ++i)
        if (cmask & (std::size_t(1) << i))
          comp.insert(block_atoms[b][i].begin(), block_atoms[b][i].end());
      int e = rep_to_el[find(id_of(static_cast<int>(b), nd.set))];
      int eo = rep_to_el[find(id_of(static_cast<int>(b), comp))];
      if (ortho[e] >= 0 && ortho[e] != eo)
        throw DomainError("pasting inconsistency: ambiguous orthocomplement at " + labels[e]);
      ortho[e] = eo;
    }
  }

  Lattice target = [&] {
    try {
      return Lattice(std::move(labels), std::move(leq), std::move(ortho));
    } catch (const DomainError& e) {
      throw DomainError(std::string("pasting inconsistency: ") + e.what());
    }
  }();

  std::vector<int> phi(p.size(), -1);
  for (std::size_t b = 0; b < nb; ++b)
    for (int x : chains[b]) phi[x] = rep_to_el[find(id_of(static_cast<int>(b), p.element(x)))];
  for (std::size_t x = 0; x < p.size(); ++x)
    if (phi[x] < 0)
      throw DomainError("element " + p.label(static_cast<int>(x)) + " lies on no maximal chain");
  return {p, std::move(target), std::move(phi)};
}

/// Verification of the three embedding properties by exhaustive scan.
struct EmbeddingReport {
  bool injective = true;
  bool order_ok = true;     // x <= y iff phi(x) <= phi(y)
  bool meets_ok = true;     // existing meets preserved
  bool joins_ok = true;     // existing joins preserved
  std::vector<std::string> failures;
  bool ok() const { return injective && order_ok && meets_ok && joins_ok; }
};

inline EmbeddingReport verify_embedding(const EmbeddingMap& m) {
  EmbeddingReport rep;
  const SetPoset& p = m.source;
  const Lattice& k = m.target;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y) {
      int fx = m.map[x], fy = m.map[y];
      if (x != y && fx == fy) {
        rep.injective = false;
        rep.failures.push_back("collision: " + p.label(static_cast<int>(x)) + " and " +
                               p.label(static_cast<int>(y)));
      }
      bool src = p.leq(static_cast<int>(x), static_cast<int>(y));
      bool dst = k.leq(fx, fy);
      if (src != dst) {
        rep.order_ok = false;
        rep.failures.push_back("order: " + p.label(static_cast<int>(x)) + " vs " +
                               p.label(static_cast<int>(y)));
      }
      auto pm = p.meet_opt(static_cast<int>(x), static_cast<int>(y));
      if (pm) {
        auto km = k.meet_opt(fx, fy);
        if (!km || *km != m.map[*pm]) {
          rep.meets_ok = false;
          rep.failures.push_back("meet not preserved at (" + p.label(static_cast<int>(x)) +
                                 ", " + p.label(static_cast<int>(y)) + ")");
        }
      }
      auto pj = p.join_opt(static_cast<int>(x), static_cast<int>(y));
      if (pj) {
        auto kj = k.join_opt(fx, fy);
        if (!kj || *kj != m.map[*pj]) {
          rep.joins_ok = false;
          rep.failures.push_back("join not preserved at (" + p.label(static_cast<int>(x)) +
                                 ", " + p.label(static_cast<int>(y)) + ")");
        }
      }
    }
  return rep;
}

/// Extract the Greechie diagram of a pasted lattice and require a full
/// (separating and unital) set of two-valued states.
inline StateClassification full_state_check(const Lattice& l) {
  StateClassification c = classify(l.to_greechie());
  if (!c.separating || !c.unital)
    throw DomainError("pasted lattice lacks a full set of two-valued states");
  return c;
}

}  // namespace omlkit
