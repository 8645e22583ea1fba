#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "omlkit/greechie.hpp"

namespace omlkit {

/// Classical truth assignment on a Greechie diagram: exactly one atom true in
/// every context. Bits are indexed by the diagram's atom order.
struct TwoValuedState {
  std::vector<uint8_t> bits;

  bool operator==(const TwoValuedState& o) const { return bits == o.bits; }

  nlohmann::json to_json(const GreechieDiagram& d) const {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t a = 0; a < bits.size(); ++a) j[d.atom_name(static_cast<int>(a))] = bits[a];
    return j;
  }
};

struct StateClassification {
  std::size_t count = 0;
  bool unital = false;
  bool separating = false;
  bool full = false;  // reported as separating-and-unital

  nlohmann::json to_json() const {
    return {{"count", count}, {"unital", unital}, {"separating", separating}, {"full", full}};
  }
};

namespace detail {

/// Backtracking with unit propagation. Deterministic: atoms are branched in
/// canonical (name-sorted) order, value 1 before 0.
class StateSearch {
 public:
  explicit StateSearch(const GreechieDiagram& d) : d_(d) {
    order_.resize(d.atom_count());
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(),
              [&](int a, int b) { return d.atom_name(a) < d.atom_name(b); });
    ctx_of_atom_ = d.atom_contexts();
  }

  std::vector<TwoValuedState> run(std::optional<int> forced_true = std::nullopt) {
    std::vector<int8_t> val(d_.atom_count(), -1);
    std::vector<TwoValuedState> out;
    std::vector<int> trail;
    if (forced_true) {
      if (!assign(val, *forced_true, 1, trail)) return out;
    }
    search(val, out);
    std::sort(out.begin(), out.end(), [&](const TwoValuedState& x, const TwoValuedState& y) {
      for (int a : order_) {
        if (x.bits[a] != y.bits[a]) return x.bits[a] < y.bits[a];
      }
      return false;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  bool assign(std::vector<int8_t>& val, int atom, int8_t v, std::vector<int>& trail) {
    if (val[atom] == v) return true;
    if (val[atom] != -1) return false;
    val[atom] = v;
    trail.push_back(atom);
    for (int c : ctx_of_atom_[atom])
      if (!propagate_context(val, c, trail)) return false;
    return true;
  }

  bool propagate_context(std::vector<int8_t>& val, int c, std::vector<int>& trail) {
    const auto& atoms = d_.contexts()[c];
    int ones = 0, unknown = 0, last_unknown = -1;
    for (int a : atoms) {
      if (val[a] == 1) ++ones;
      if (val[a] == -1) {
        ++unknown;
        last_unknown = a;
      }
    }
    if (ones > 1) return false;
    if (ones == 1) {
      for (int a : atoms)
        if (val[a] == -1 && !assign(val, a, 0, trail)) return false;
      return true;
    }
    if (unknown == 0) return false;             // all atoms 0: tautology unresolved
    if (unknown == 1) return assign(val, last_unknown, 1, trail);
    return true;
  }

  void search(std::vector<int8_t>& val, std::vector<TwoValuedState>& out) {
    int branch = -1;
    for (int a : order_)
      if (val[a] == -1) {
        branch = a;
        break;
      }
    if (branch < 0) {
      TwoValuedState s;
      s.bits.assign(val.begin(), val.end());
      out.push_back(std::move(s));
      return;
    }
    for (int8_t v : {int8_t(1), int8_t(0)}) {
      std::vector<int> trail;
      if (assign(val, branch, v, trail)) search(val, out);
      for (int a : trail) val[a] = -1;
    }
  }

  const GreechieDiagram& d_;
  std::vector<int> order_;
  std::vector<std::vector<int>> ctx_of_atom_;
};

}  // namespace detail

/// Complete, duplicate-free, canonically ordered list of all two-valued states.
inline std::vector<TwoValuedState> enumerate_states(const GreechieDiagram& d) {
  return detail::StateSearch(d).run();
}

/// States with value 1 at the given atom (the "without loss of generality"
/// seeding of the symmetry argument).
inline std::vector<TwoValuedState> symmetric_seed(const GreechieDiagram& d,
                                                  const std::string& atom) {
  return detail::StateSearch(d).run(d.atom_index(atom));
}

inline StateClassification classify(const GreechieDiagram& d) {
  std::vector<TwoValuedState> states = enumerate_states(d);
  StateClassification c;
  c.count = states.size();
  std::size_t n = d.atom_count();
  c.unital = n > 0;
  for (std::size_t a = 0; a < n && c.unital; ++a) {
    bool hit = false;
    for (const auto& s : states) hit = hit || s.bits[a] == 1;
    c.unital = hit;
  }
  c.separating = true;
  for (std::size_t a = 0; a < n && c.separating; ++a)
    for (std::size_t b = a + 1; b < n && c.separating; ++b) {
      bool split = false;
      for (const auto& s : states) split = split || s.bits[a] != s.bits[b];
      c.separating = split;
    }
  c.full = c.separating && c.unital;
  return c;
}

inline nlohmann::json states_to_json(const GreechieDiagram& d,
                                     const std::vector<TwoValuedState>& states) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["states"] = nlohmann::json::array();
  for (const auto& s : states) j["states"].push_back(s.to_json(d));
  return j;
}

}  // namespace omlkit
