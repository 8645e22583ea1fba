#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "omlkit/greechie.hpp"
#include "omlkit/rational.hpp"

namespace omlkit {

/// Finite bounded lattice (or poset) with an optional orthocomplementation.
/// Elements carry stable string labels; the order is a dense boolean matrix.
/// Immutable after construction; meet/join tables are precomputed.
///
/// Law checks are O(n^3) scans and refuse instances above `law_check_cap`
/// elements unless the caller overrides.
class Lattice {
 public:
  static constexpr std::size_t kDefaultLawCheckCap = 1000;

  /// Pairs (element, element) witnessing a failed law; empty when the law holds.
  struct LawReport {
    bool holds = true;
    std::vector<std::string> witness;  // labels, in the law's variable order
  };

  Lattice(std::vector<std::string> labels, std::vector<std::vector<bool>> leq,
          std::optional<std::vector<int>> ortho = std::nullopt)
      : labels_(std::move(labels)), leq_(std::move(leq)), ortho_(std::move(ortho)) {
    validate_poset();
    locate_bounds();
    build_tables();
    if (ortho_) validate_ortho();
    by_label_.resize(labels_.size());
    std::iota(by_label_.begin(), by_label_.end(), 0);
    std::sort(by_label_.begin(), by_label_.end(),
              [&](int a, int b) { return labels_[a] < labels_[b]; });
  }

  // --- constructors for the stock structures -------------------------------

  /// MO_n: n complementary atom pairs pasted at 0 and 1 (2n+2 elements).
  /// Blocks are lettered p, q, r, ... with -/+ atoms.
  static Lattice mo(int n);

  /// Boolean algebra 2^k on k atoms a1..ak.
  static Lattice boolean_algebra(int k);

  /// Disjoint union with the bounds identified; everything else stays distinct.
  static Lattice horizontal_sum(const Lattice& l1, const Lattice& l2);

  /// Componentwise order and orthocomplement on the Cartesian product.
  static Lattice product(const Lattice& l1, const Lattice& l2);

  /// Pasting of the Boolean blocks of a Greechie diagram, identified at the
  /// bounds, shared atoms, and their relative complements. Requires blocks to
  /// share at most one atom.
  static Lattice from_greechie(const GreechieDiagram& d);

  // --- basic access ---------------------------------------------------------

  std::size_t size() const { return labels_.size(); }
  const std::string& label(int x) const { return labels_[x]; }
  int index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return static_cast<int>(i);
    throw DomainError("unknown element '" + label + "'");
  }
  bool leq(int x, int y) const { return leq_[x][y]; }
  int zero() const { return zero_; }
  int one() const { return one_; }
  bool has_ortho() const { return ortho_.has_value(); }
  int ortho(int x) const {
    if (!ortho_) throw DomainError("lattice has no orthocomplementation");
    return (*ortho_)[x];
  }

  // --- meet / join ----------------------------------------------------------

  std::optional<int> meet_opt(int x, int y) const {
    int m = meet_[idx(x, y)];
    return m < 0 ? std::nullopt : std::optional<int>(m);
  }
  std::optional<int> join_opt(int x, int y) const {
    int j = join_[idx(x, y)];
    return j < 0 ? std::nullopt : std::optional<int>(j);
  }
  int meet(int x, int y) const {
    auto m = meet_opt(x, y);
    if (!m)
      throw DomainError("meet(" + labels_[x] + ", " + labels_[y] + ") does not exist");
    return *m;
  }
  int join(int x, int y) const {
    auto j = join_opt(x, y);
    if (!j)
      throw DomainError("join(" + labels_[x] + ", " + labels_[y] + ") does not exist");
    return *j;
  }

  /// Every pair has a meet and a join.
  bool is_lattice() const {
    for (std::size_t x = 0; x < size(); ++x)
      for (std::size_t y = 0; y < size(); ++y)
        if (meet_[idx(x, y)] < 0 || join_[idx(x, y)] < 0) return false;
    return true;
  }

  /// Ortho present, involutive, order-reversing, complemented. Checked at
  /// construction; this re-runs the scan.
  bool is_ortholattice() const {
    if (!ortho_ || !is_lattice()) return false;
    for (std::size_t x = 0; x < size(); ++x) {
      int xo = (*ortho_)[x];
      if ((*ortho_)[xo] != static_cast<int>(x)) return false;
      if (meet_[idx(x, xo)] != zero_ || join_[idx(x, xo)] != one_) return false;
      for (std::size_t y = 0; y < size(); ++y)
        if (leq_[x][y] && !leq_[(*ortho_)[y]][xo]) return false;
    }
    return true;
  }

  // --- law checks (lexicographically first witness by label order) ----------

  /// a AND (b OR c) == (a AND b) OR (a AND c) for all triples.
  LawReport distributive(std::size_t cap = kDefaultLawCheckCap) const {
    check_cap(cap);
    require_lattice();
    for (int a : by_label_)
      for (int b : by_label_)
        for (int c : by_label_) {
          int lhs = meet_[idx(a, join_[idx(b, c)])];
          int rhs = join_[idx(meet_[idx(a, b)], meet_[idx(a, c)])];
          if (lhs != rhs) return {false, {labels_[a], labels_[b], labels_[c]}};
        }
    return {};
  }

  /// (a OR b) AND c == a OR (b AND c) whenever a <= c.
  LawReport modular(std::size_t cap = kDefaultLawCheckCap) const {
    check_cap(cap);
    require_lattice();
    for (int a : by_label_)
      for (int b : by_label_)
        for (int c : by_label_) {
          if (!leq_[a][c]) continue;
          int lhs = meet_[idx(join_[idx(a, b)], c)];
          int rhs = join_[idx(a, meet_[idx(b, c)])];
          if (lhs != rhs) return {false, {labels_[a], labels_[b], labels_[c]}};
        }
    return {};
  }

  /// a <= b implies b == a OR (b AND a').
  LawReport orthomodular(std::size_t cap = kDefaultLawCheckCap) const {
    check_cap(cap);
    require_lattice();
    if (!ortho_) throw DomainError("orthomodular law needs an orthocomplementation");
    for (int a : by_label_)
      for (int b : by_label_) {
        if (!leq_[a][b]) continue;
        if (join_[idx(a, meet_[idx(b, (*ortho_)[a])])] != b)
          return {false, {labels_[a], labels_[b]}};
      }
    return {};
  }

  /// Comeasurability: exist mutually orthogonal a, b, c with p = a OR b and
  /// q = a OR c. Exhaustive over triples.
  bool are_compatible(int p, int q) const {
    require_lattice();
    if (!ortho_) throw DomainError("compatibility needs an orthocomplementation");
    auto orth = [&](int x, int y) { return leq_[x][(*ortho_)[y]]; };
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b) {
        if (!orth(a, b)) continue;
        if (join_[idx(a, b)] != p) continue;
        for (std::size_t c = 0; c < size(); ++c)
          if (orth(a, c) && orth(b, c) && join_[idx(a, c)] == q) return true;
      }
    return false;
  }

  // --- structure ------------------------------------------------------------

  std::vector<int> atoms() const {
    std::vector<int> out;
    for (std::size_t x = 0; x < size(); ++x)
      if (covers(static_cast<int>(x), zero_)) out.push_back(static_cast<int>(x));
    return out;
  }

  /// y covers x: x < y with nothing strictly between.
  bool covers(int y, int x) const {
    if (x == y || !leq_[x][y]) return false;
    for (std::size_t z = 0; z < size(); ++z)
      if (z != static_cast<std::size_t>(x) && z != static_cast<std::size_t>(y) &&
          leq_[x][z] && leq_[z][y])
        return false;
    return true;
  }

  /// Atoms + maximal sets of mutually orthogonal atoms, as a Greechie diagram.
  GreechieDiagram to_greechie() const;

  /// Isomorphism test: iterated signature refinement, then backtracking.
  bool isomorphic_to(const Lattice& other) const;

  // --- export ---------------------------------------------------------------

  std::string hasse_dot() const {
    std::ostringstream out;
    out << "graph hasse {\n  rankdir=BT;\n  node [shape=point, width=0.12];\n";
    std::vector<int> order = by_label_;
    for (int x : order)
      out << "  \"" << labels_[x] << "\" [xlabel=\"" << labels_[x] << "\"];\n";
    for (int y : order)
      for (int x : order)
        if (covers(y, x)) out << "  \"" << labels_[x] << "\" -- \"" << labels_[y] << "\";\n";
    out << "}\n";
    return out.str();
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["format_version"] = 1;
    j["elements"] = labels_;
    nlohmann::json pairs = nlohmann::json::array();
    for (std::size_t x = 0; x < size(); ++x)
      for (std::size_t y = 0; y < size(); ++y)
        if (x != y && leq_[x][y]) pairs.push_back({labels_[x], labels_[y]});
    j["leq"] = pairs;
    if (ortho_) {
      nlohmann::json op = nlohmann::json::array();
      for (std::size_t x = 0; x < size(); ++x)
        if (static_cast<int>(x) <= (*ortho_)[x])
          op.push_back({labels_[x], labels_[(*ortho_)[x]]});
      j["ortho"] = op;
    }
    j["zero"] = labels_[zero_];
    j["one"] = labels_[one_];
    return j;
  }

  static Lattice from_json(const nlohmann::json& j);

 private:
  std::size_t idx(std::size_t x, std::size_t y) const { return x * size() + y; }

  void check_cap(std::size_t cap) const {
    if (size() > cap)
      throw DomainError("law check refused: " + std::to_string(size()) +
                        " elements exceeds cap " + std::to_string(cap));
  }

  void require_lattice() const {
    if (!is_lattice()) throw DomainError("operation requires a lattice (missing meets/joins)");
  }

  void validate_poset() const {
    std::size_t n = labels_.size();
    if (n == 0) throw DomainError("empty lattice");
    if (leq_.size() != n) throw DomainError("order matrix size mismatch");
    std::set<std::string> names(labels_.begin(), labels_.end());
    if (names.size() != n) throw DomainError("duplicate element label");
    for (std::size_t x = 0; x < n; ++x) {
      if (leq_[x].size() != n) throw DomainError("order matrix size mismatch");
      if (!leq_[x][x]) throw DomainError("order not reflexive");
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (x != y && leq_[x][y] && leq_[y][x])
          throw DomainError("order not antisymmetric at (" + labels_[x] + ", " +
                            labels_[y] + ")");
        if (leq_[x][y])
          for (std::size_t z = 0; z < n; ++z)
            if (leq_[y][z] && !leq_[x][z]) throw DomainError("order not transitive");
      }
  }

  void locate_bounds() {
    zero_ = one_ = -1;
    for (std::size_t x = 0; x < size(); ++x) {
      bool bot = true, top = true;
      for (std::size_t y = 0; y < size(); ++y) {
        bot = bot && leq_[x][y];
        top = top && leq_[y][x];
      }
      if (bot) zero_ = static_cast<int>(x);
      if (top) one_ = static_cast<int>(x);
    }
    if (zero_ < 0 || one_ < 0) throw DomainError("poset is not bounded");
  }

  void build_tables() {
    std::size_t n = size();
    meet_.assign(n * n, -1);
    join_.assign(n * n, -1);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        // glb: a lower bound dominating every lower bound
        int glb = -1;
        for (std::size_t z = 0; z < n; ++z) {
          if (!leq_[z][x] || !leq_[z][y]) continue;
          if (glb < 0 || leq_[glb][z]) glb = static_cast<int>(z);
        }
        if (glb >= 0) {
          for (std::size_t z = 0; z < n && glb >= 0; ++z)
            if (leq_[z][x] && leq_[z][y] && !leq_[z][glb]) glb = -1;
        }
        meet_[idx(x, y)] = glb;
        int lub = -1;
        for (std::size_t z = 0; z < n; ++z) {
          if (!leq_[x][z] || !leq_[y][z]) continue;
          if (lub < 0 || leq_[z][lub]) lub = static_cast<int>(z);
        }
        if (lub >= 0) {
          for (std::size_t z = 0; z < n && lub >= 0; ++z)
            if (leq_[x][z] && leq_[y][z] && !leq_[lub][z]) lub = -1;
        }
        join_[idx(x, y)] = lub;
      }
  }

  void validate_ortho() const {
    if (ortho_->size() != size()) throw DomainError("ortho map size mismatch");
    for (std::size_t x = 0; x < size(); ++x) {
      int xo = (*ortho_)[x];
      if (xo < 0 || xo >= static_cast<int>(size()))
        throw DomainError("ortho map out of range");
      if ((*ortho_)[xo] != static_cast<int>(x))
        throw DomainError("ortho is not involutive at " + labels_[x]);
      for (std::size_t y = 0; y < size(); ++y)
        if (leq_[x][y] && !leq_[(*ortho_)[y]][xo])
          throw DomainError("ortho is not order-reversing");
    }
    if ((*ortho_)[zero_] != one_) throw DomainError("ortho(zero) != one");
    for (std::size_t x = 0; x < size(); ++x) {
      int xo = (*ortho_)[x];
      if (meet_[idx(x, xo)] != zero_)
        throw DomainError("x AND x' != 0 at " + labels_[x]);
      if (join_[idx(x, xo)] != one_)
        throw DomainError("x OR x' != 1 at " + labels_[x]);
    }
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> leq_;
  std::optional<std::vector<int>> ortho_;
  std::vector<int> meet_, join_;  // -1 where nonexistent
  std::vector<int> by_label_;    // indices sorted by label
  int zero_ = -1, one_ = -1;
};

// --- constructors ------------------------------------------------------------

inline std::string mo_block_name(int i) {
  if (i < 11) return std::string(1, static_cast<char>('p' + i));
  return "b" + std::to_string(i + 1);
}

inline Lattice Lattice::mo(int n) {
  if (n < 1) throw DomainError("mo(n) requires n >= 1");
  std::size_t sz = 2 * static_cast<std::size_t>(n) + 2;
  std::vector<std::string> labels(sz);
  labels[0] = "0";
  labels[1] = "1";
  for (int i = 0; i < n; ++i) {
    labels[2 + 2 * i] = mo_block_name(i) + "-";
    labels[3 + 2 * i] = mo_block_name(i) + "+";
  }
  std::vector<std::vector<bool>> leq(sz, std::vector<bool>(sz, false));
  for (std::size_t x = 0; x < sz; ++x) {
    leq[x][x] = true;
    leq[0][x] = true;
    leq[x][1] = true;
  }
  std::vector<int> ortho(sz);
  ortho[0] = 1;
  ortho[1] = 0;
  for (int i = 0; i < n; ++i) {
    ortho[2 + 2 * i] = 3 + 2 * i;
    ortho[3 + 2 * i] = 2 + 2 * i;
  }
  return Lattice(std::move(labels), std::move(leq), std::move(ortho));
}

inline Lattice Lattice::boolean_algebra(int k) {
  if (k < 0) throw DomainError("boolean_algebra(k) requires k >= 0");
  std::size_t sz = std::size_t(1) << k;
  std::vector<std::string> labels(sz);
  for (std::size_t s = 0; s < sz; ++s) {
    if (s == 0) {
      labels[s] = "0";
    } else if (s == sz - 1) {
      labels[s] = "1";
    } else {
      std::string l;
      for (int i = 0; i < k; ++i)
        if (s & (std::size_t(1) << i)) l += (l.empty() ? "" : "+") + ("a" + std::to_string(i + 1));
      labels[s] = l;
    }
  }
  std::vector<std::vector<bool>> leq(sz, std::vector<bool>(sz, false));
  for (std::size_t x = 0; x < sz; ++x)
    for (std::size_t y = 0; y < sz; ++y) leq[x][y] = (x & y) == x;
  std::vector<int> ortho(sz);
  for (std::size_t x = 0; x < sz; ++x) ortho[x] = static_cast<int>((sz - 1) & ~x);
  return Lattice(std::move(labels), std::move(leq), std::move(ortho));
}

inline Lattice Lattice::horizontal_sum(const Lattice& l1, const Lattice& l2) {
  if (!l1.has_ortho() || !l2.has_ortho())
    throw DomainError("horizontal sum needs bounded ortholattices");
  // keep l1 labels; uniquify colliding l2 labels with a _2 suffix
  std::vector<std::string> labels = l1.labels_;
  std::set<std::string> used(labels.begin(), labels.end());
  std::vector<int> map2(l2.size(), -1);  // l2 index -> new index
  map2[l2.zero()] = l1.zero();
  map2[l2.one()] = l1.one();
  for (std::size_t x = 0; x < l2.size(); ++x) {
    if (map2[x] >= 0) continue;
    std::string l = l2.labels_[x];
    while (used.count(l)) l += "_2";
    used.insert(l);
    map2[x] = static_cast<int>(labels.size());
    labels.push_back(l);
  }
  std::size_t n = labels.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x) {
    leq[x][x] = true;
    leq[l1.zero()][x] = true;
    leq[x][l1.one()] = true;
  }
  for (std::size_t x = 0; x < l1.size(); ++x)
    for (std::size_t y = 0; y < l1.size(); ++y)
      if (l1.leq_[x][y]) leq[x][y] = true;
  for (std::size_t x = 0; x < l2.size(); ++x)
    for (std::size_t y = 0; y < l2.size(); ++y)
      if (l2.leq_[x][y]) leq[map2[x]][map2[y]] = true;
  std::vector<int> ortho(n);
  for (std::size_t x = 0; x < l1.size(); ++x) ortho[x] = (*l1.ortho_)[x];
  for (std::size_t x = 0; x < l2.size(); ++x) ortho[map2[x]] = map2[(*l2.ortho_)[x]];
  return Lattice(std::move(labels), std::move(leq), std::move(ortho));
}

inline Lattice Lattice::product(const Lattice& l1, const Lattice& l2) {
  std::size_t n1 = l1.size(), n2 = l2.size(), n = n1 * n2;
  std::vector<std::string> labels(n);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  auto id = [&](std::size_t x, std::size_t y) { return x * n2 + y; };
  for (std::size_t x = 0; x < n1; ++x)
    for (std::size_t y = 0; y < n2; ++y)
      labels[id(x, y)] = "(" + l1.labels_[x] + "," + l2.labels_[y] + ")";
  for (std::size_t x1 = 0; x1 < n1; ++x1)
    for (std::size_t y1 = 0; y1 < n2; ++y1)
      for (std::size_t x2 = 0; x2 < n1; ++x2)
        for (std::size_t y2 = 0; y2 < n2; ++y2)
          leq[id(x1, y1)][id(x2, y2)] = l1.leq_[x1][x2] && l2.leq_[y1][y2];
  std::optional<std::vector<int>> ortho;
  if (l1.has_ortho() && l2.has_ortho()) {
    ortho.emplace(n);
    for (std::size_t x = 0; x < n1; ++x)
      for (std::size_t y = 0; y < n2; ++y)
        (*ortho)[id(x, y)] = static_cast<int>(id((*l1.ortho_)[x], (*l2.ortho_)[y]));
  }
  return Lattice(std::move(labels), std::move(leq), std::move(ortho));
}

inline Lattice Lattice::from_greechie(const GreechieDiagram& d) {
  const auto& ctxs = d.contexts();
  for (std::size_t i = 0; i < ctxs.size(); ++i)
    for (std::size_t j = i + 1; j < ctxs.size(); ++j) {
      std::set<int> a(ctxs[i].begin(), ctxs[i].end());
      int shared = 0;
      for (int x : ctxs[j]) shared += a.count(x);
      if (shared > 1)
        throw DomainError("pasting not defined: contexts share more than one atom");
    }

  // Elements: (context, atom subset) pairs, glued with union-find.
  struct Node {
    int ctx;
    std::set<int> atoms;
  };
  std::vector<Node> nodes;
  std::map<std::pair<int, std::vector<int>>, int> node_id;
  auto get = [&](int c, const std::set<int>& s) {
    std::vector<int> key(s.begin(), s.end());
    auto it = node_id.find({c, key});
    if (it != node_id.end()) return it->second;
    int id = static_cast<int>(nodes.size());
    node_id.emplace(std::make_pair(c, key), id);
    nodes.push_back({c, s});
    return id;
  };
  for (std::size_t c = 0; c < ctxs.size(); ++c) {
    std::vector<int> atoms = ctxs[c];
    std::size_t m = atoms.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
      std::set<int> s;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (std::size_t(1) << i)) s.insert(atoms[i]);
      get(static_cast<int>(c), s);
    }
  }

  std::vector<int> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

  auto full_set = [&](int c) {
    return std::set<int>(ctxs[c].begin(), ctxs[c].end());
  };
  for (std::size_t c = 1; c < ctxs.size(); ++c) {
    unite(get(static_cast<int>(c), {}), get(0, {}));
    unite(get(static_cast<int>(c), full_set(static_cast<int>(c))), get(0, full_set(0)));
  }
  auto atom_ctx = d.atom_contexts();
  for (std::size_t a = 0; a < d.atom_count(); ++a) {
    const auto& cs = atom_ctx[a];
    for (std::size_t k = 1; k < cs.size(); ++k) {
      unite(get(cs[k], {static_cast<int>(a)}), get(cs[0], {static_cast<int>(a)}));
      std::set<int> r0 = full_set(cs[0]), rk = full_set(cs[k]);
      r0.erase(static_cast<int>(a));
      rk.erase(static_cast<int>(a));
      unite(get(cs[k], rk), get(cs[0], r0));
    }
  }

  // Distinct atoms must stay distinct (e.g. two 2-atom contexts sharing an
  // atom would merge the other two).
  for (std::size_t a = 0; a < d.atom_count(); ++a)
    for (std::size_t b = a + 1; b < d.atom_count(); ++b) {
      int na = get(atom_ctx[a][0], {static_cast<int>(a)});
      int nb = get(atom_ctx[b][0], {static_cast<int>(b)});
      if (find(na) == find(nb))
        throw DomainError("pasting identifies distinct atoms '" + d.atom_name(a) +
                          "' and '" + d.atom_name(b) + "'");
    }

  // Representatives and labels.
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
  auto label_of = [&](int rep) -> std::string {
    const Node& nd = nodes[rep];
    std::size_t csz = ctxs[nd.ctx].size();
    if (nd.atoms.empty()) return "0";
    if (nd.atoms.size() == csz) return "1";
    if (nd.atoms.size() == 1) return d.atom_name(*nd.atoms.begin());
    if (nd.atoms.size() == csz - 1) {
      std::set<int> full = full_set(nd.ctx);
      for (int a : nd.atoms) full.erase(a);
      return d.atom_name(*full.begin()) + "'";
    }
    std::string l = "{";
    bool first = true;
    for (int a : nd.atoms) {
      if (!first) l += "+";
      l += d.atom_name(a);
      first = false;
    }
    return l + "}";
  };
  std::vector<std::string> labels(n);
  for (std::size_t e = 0; e < n; ++e) labels[e] = label_of(el_rep[e]);

  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t e = 0; e < n; ++e) leq[e][e] = true;
  for (const auto& [key, id] : node_id) {
    const Node& x = nodes[id];
    for (const auto& [key2, id2] : node_id) {
      const Node& y = nodes[id2];
      if (x.ctx != y.ctx) continue;
      if (std::includes(y.atoms.begin(), y.atoms.end(), x.atoms.begin(), x.atoms.end()))
        leq[rep_to_el[find(id)]][rep_to_el[find(id2)]] = true;
    }
  }
  // Warshall transitive closure across blocks.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!leq[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (leq[k][j]) leq[i][j] = true;
    }
  std::vector<int> ortho(n, -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& nd = nodes[i];
    std::set<int> comp = full_set(nd.ctx);
    for (int a : nd.atoms) comp.erase(a);
    int e = rep_to_el[find(static_cast<int>(i))];
    int eo = rep_to_el[find(get(nd.ctx, comp))];
    if (ortho[e] >= 0 && ortho[e] != eo)
      throw DomainError("pasting breaks the orthocomplement at " + labels[e]);
    ortho[e] = eo;
  }
  try {
    return Lattice(std::move(labels), std::move(leq), std::move(ortho));
  } catch (const DomainError& e) {
    throw DomainError(std::string("pasting produced an invalid ortholattice: ") + e.what());
  }
}

inline GreechieDiagram Lattice::to_greechie() const {
  if (!ortho_) throw DomainError("Greechie extraction needs an orthocomplementation");
  std::vector<int> at = atoms();
  auto orth = [&](int a, int b) { return leq_[a][(*ortho_)[b]]; };
  // maximal cliques of the orthogonality graph on atoms (greedy extension +
  // maximality filter keeps this exact at desk scale)
  std::vector<std::vector<int>> cliques;
  std::function<void(std::vector<int>&, std::size_t)> grow = [&](std::vector<int>& cur,
                                                                 std::size_t from) {
    bool extended = false;
    for (std::size_t i = from; i < at.size(); ++i) {
      bool ok = true;
      for (int c : cur)
        if (!orth(at[i], c)) ok = false;
      if (!ok) continue;
      extended = true;
      cur.push_back(at[i]);
      grow(cur, i + 1);
      cur.pop_back();
    }
    if (!extended && cur.size() >= 2) {
      // maximal w.r.t. the atoms before `from` as well
      for (int a : at) {
        bool in = std::find(cur.begin(), cur.end(), a) != cur.end();
        if (in) continue;
        bool ok = true;
        for (int c : cur)
          if (!orth(a, c)) ok = false;
        if (ok) return;
      }
      cliques.push_back(cur);
    }
  };
  std::vector<int> cur;
  grow(cur, 0);
  std::sort(cliques.begin(), cliques.end());
  cliques.erase(std::unique(cliques.begin(), cliques.end()), cliques.end());
  std::vector<std::vector<std::string>> named;
  for (const auto& c : cliques) {
    std::vector<std::string> names;
    for (int a : c) names.push_back(labels_[a]);
    named.push_back(std::move(names));
  }
  return GreechieDiagram::from_names(named);
}

inline bool Lattice::isomorphic_to(const Lattice& other) const {
  if (size() != other.size() || has_ortho() != other.has_ortho()) return false;
  auto signatures = [](const Lattice& l) {
    std::size_t n = l.size();
    std::vector<std::size_t> color(n, 0);
    for (std::size_t round = 0; round < n; ++round) {
      std::vector<std::string> key(n);
      for (std::size_t x = 0; x < n; ++x) {
        std::vector<std::size_t> below, above;
        for (std::size_t y = 0; y < n; ++y) {
          if (y == x) continue;
          if (l.leq_[y][x]) below.push_back(color[y]);
          if (l.leq_[x][y]) above.push_back(color[y]);
        }
        std::sort(below.begin(), below.end());
        std::sort(above.begin(), above.end());
        std::ostringstream k;
        k << color[x] << "|";
        for (auto c : below) k << c << ",";
        k << "|";
        for (auto c : above) k << c << ",";
        if (l.has_ortho()) k << "|" << color[(*l.ortho_)[x]];
        key[x] = k.str();
      }
      std::map<std::string, std::size_t> remap;
      std::vector<std::size_t> next(n);
      std::vector<std::string> sorted(key);
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i) remap[sorted[i]] = i;
      for (std::size_t x = 0; x < n; ++x) next[x] = remap[key[x]];
      if (next == color) break;
      color = next;
    }
    return color;
  };
  std::vector<std::size_t> c1 = signatures(*this), c2 = signatures(other);
  {
    std::vector<std::size_t> s1 = c1, s2 = c2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return false;
  }
  std::size_t n = size();
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> go = [&](std::size_t x) -> bool {
    if (x == n) return true;
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || c1[x] != c2[y]) continue;
      bool ok = true;
      for (std::size_t z = 0; z < x && ok; ++z) {
        std::size_t yz = static_cast<std::size_t>(map[z]);
        if (leq_[x][z] != other.leq_[y][yz] || leq_[z][x] != other.leq_[yz][y]) ok = false;
      }
      if (ok && has_ortho()) {
        int xo = (*ortho_)[x];
        if (static_cast<std::size_t>(xo) < x &&
            (*other.ortho_)[y] != map[static_cast<std::size_t>(xo)])
          ok = false;
      }
      if (!ok) continue;
      map[x] = static_cast<int>(y);
      used[y] = 1;
      if (go(x + 1)) return true;
      used[y] = 0;
      map[x] = -1;
    }
    return false;
  };
  return go(0);
}

inline Lattice Lattice::from_json(const nlohmann::json& j) {
  try {
    if (j.contains("format_version") && j.at("format_version").get<int>() != 1)
      throw ParseError("unsupported lattice format_version");
    std::vector<std::string> labels = j.at("elements").get<std::vector<std::string>>();
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = static_cast<int>(i);
    auto look = [&](const std::string& l) {
      auto it = index.find(l);
      if (it == index.end()) throw ParseError("unknown element '" + l + "' in JSON");
      return it->second;
    };
    std::size_t n = labels.size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t x = 0; x < n; ++x) leq[x][x] = true;
    for (const auto& p : j.at("leq")) leq[look(p.at(0))][look(p.at(1))] = true;
    // accept covering-pairs-only input
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t x = 0; x < n; ++x) {
        if (!leq[x][k]) continue;
        for (std::size_t y = 0; y < n; ++y)
          if (leq[k][y]) leq[x][y] = true;
      }
    std::optional<std::vector<int>> ortho;
    if (j.contains("ortho")) {
      ortho.emplace(n, -1);
      for (const auto& p : j.at("ortho")) {
        int a = look(p.at(0)), b = look(p.at(1));
        (*ortho)[a] = b;
        (*ortho)[b] = a;
      }
      for (int x : *ortho)
        if (x < 0) throw ParseError("ortho map incomplete in JSON");
    }
    return Lattice(std::move(labels), std::move(leq), std::move(ortho));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad lattice JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("bad lattice JSON: ") + e.what());
  }
}

}  // namespace omlkit
