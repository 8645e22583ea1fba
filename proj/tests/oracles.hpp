#pragma once

// Independent reference implementations used to cross-check the library.
// These deliberately avoid the code paths they verify: state enumeration by
// full truth-table scan, facet enumeration by hyperplane subset search, and
// context extraction by a literal maximal-clique filter.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "omlkit/greechie.hpp"
#include "omlkit/polytope.hpp"
#include "omlkit/ray.hpp"
#include "omlkit/states.hpp"

namespace oracle {

/// All admissible two-valued states by brute force over 2^|atoms| assignments.
inline std::vector<std::vector<uint8_t>> brute_force_states(const omlkit::GreechieDiagram& d) {
  std::size_t n = d.atom_count();
  if (n > 20) throw std::runtime_error("brute force capped at 20 atoms");
  std::vector<std::vector<uint8_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    bool ok = true;
    for (const auto& ctx : d.contexts()) {
      int ones = 0;
      for (int a : ctx) ones += static_cast<int>((mask >> a) & 1);
      if (ones != 1) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<uint8_t> bits(n);
    for (std::size_t a = 0; a < n; ++a) bits[a] = static_cast<uint8_t>((mask >> a) & 1);
    out.push_back(std::move(bits));
  }
  return out;
}

inline std::set<std::vector<uint8_t>> as_set(const std::vector<omlkit::TwoValuedState>& states) {
  std::set<std::vector<uint8_t>> s;
  for (const auto& st : states) s.insert(st.bits);
  return s;
}

/// Exact affine rank of a point set (dimension of the affine hull).
inline std::size_t affine_rank(const std::vector<omlkit::RVec>& pts) {
  using omlkit::Rat;
  if (pts.size() <= 1) return 0;
  std::vector<std::vector<Rat>> rows;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rat> r(pts[0].size());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = pts[i][j] - pts[0][j];
    rows.push_back(std::move(r));
  }
  std::size_t rank = 0, ncols = pts[0].size();
  for (std::size_t c = 0; c < ncols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      Rat f = rows[i][c] / rows[rank][c];
      for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

/// Brute-force facet enumeration of a full-dimensional hull: for every
/// d-subset of vertices spanning a hyperplane, keep the hyperplane if all
/// vertices lie on one side. Canonical integer form, sorted.
inline std::vector<omlkit::LinearInequality> brute_force_facets(
    const std::vector<omlkit::RVec>& verts_in) {
  using omlkit::Int;
  using omlkit::Rat;
  using omlkit::RVec;
  std::set<RVec> uniq(verts_in.begin(), verts_in.end());
  std::vector<RVec> verts(uniq.begin(), uniq.end());
  std::size_t d = verts[0].size();
  if (affine_rank(verts) != d) throw std::runtime_error("oracle needs a full-dimensional hull");

  // solve for the hyperplane through d points: nullspace of [p | 1]
  auto hyperplane = [&](const std::vector<std::size_t>& subset)
      -> std::optional<std::pair<RVec, Rat>> {
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i : subset) {
      std::vector<Rat> r = verts[i];
      r.push_back(1);
      rows.push_back(std::move(r));
    }
    std::size_t ncols = d + 1;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < ncols && rank < rows.size(); ++c) {
      std::size_t piv = rank;
      while (piv < rows.size() && rows[piv][c] == 0) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[rank], rows[piv]);
      Rat pv = rows[rank][c];
      for (auto& x : rows[rank]) x /= pv;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == rank || rows[i][c] == 0) continue;
        Rat f = rows[i][c];
        for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= f * rows[rank][j];
      }
      pivots.push_back(c);
      ++rank;
    }
    if (rank != d) return std::nullopt;  // degenerate subset or not a hyperplane
    std::set<std::size_t> piv_set(pivots.begin(), pivots.end());
    std::size_t free_col = ncols;
    for (std::size_t c = 0; c < ncols; ++c)
      if (!piv_set.count(c)) {
        free_col = c;
        break;
      }
    std::vector<Rat> sol(ncols, Rat(0));
    sol[free_col] = 1;
    for (std::size_t j = 0; j < rank; ++j) sol[pivots[j]] = -rows[j][free_col];
    RVec c(sol.begin(), sol.begin() + d);
    Rat b = -sol[d];
    bool zero = true;
    for (const Rat& x : c) zero = zero && x == 0;
    if (zero) return std::nullopt;
    return std::make_pair(c, b);
  };

  std::set<omlkit::LinearInequality> out;
  std::vector<std::size_t> idx(d);
  std::vector<std::size_t> subset;
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t from,
                                                             std::size_t left) {
    if (left == 0) {
      auto hp = hyperplane(subset);
      if (!hp) return;
      auto [c, b] = *hp;
      bool all_le = true, all_ge = true;
      for (const auto& v : verts) {
        Rat s = -b;
        for (std::size_t j = 0; j < d; ++j) s += c[j] * v[j];
        if (s > 0) all_le = false;
        if (s < 0) all_ge = false;
      }
      if (!all_le && !all_ge) return;
      RVec full = c;
      full.push_back(b);
      if (all_ge && !all_le)
        for (auto& x : full) x = -x;
      std::vector<Int> ci = omlkit::detail::integerize(full);
      Int bound = ci.back();
      ci.pop_back();
      out.insert({std::move(ci), bound});
      return;
    }
    for (std::size_t i = from; i + left <= verts.size(); ++i) {
      subset.push_back(i);
      choose(i + 1, left - 1);
      subset.pop_back();
    }
  };
  choose(0, d);
  return std::vector<omlkit::LinearInequality>(out.begin(), out.end());
}

/// Maximal mutually-orthogonal subsets by direct filtering of all orthogonal
/// pairs/triples (independent of the nor-based completion in the library).
inline std::set<std::vector<std::string>> clique_contexts(const std::vector<omlkit::Ray>& rays) {
  std::size_t n = rays.size();
  auto orth = [&](std::size_t i, std::size_t j) {
    return omlkit::is_orthogonal(rays[i], rays[j]);
  };
  std::set<std::set<std::size_t>> cliques;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!orth(i, j)) continue;
      std::set<std::size_t> c{i, j};
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j && orth(i, k) && orth(j, k)) c.insert(k);
      cliques.insert(c);
    }
  // drop non-maximal sets
  std::set<std::vector<std::string>> out;
  for (const auto& c : cliques) {
    bool maximal = true;
    for (const auto& other : cliques)
      if (c != other &&
          std::includes(other.begin(), other.end(), c.begin(), c.end()))
        maximal = false;
    if (!maximal) continue;
    std::vector<std::string> names;
    for (std::size_t i : c) names.push_back(rays[i].name());
    std::sort(names.begin(), names.end());
    out.insert(names);
  }
  return out;
}

}  // namespace oracle
