#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "omlkit/rational.hpp"

namespace omlkit {

using RVec = std::vector<Rat>;

/// Which single-event and joint-product terms span the probability vector
/// p = (p_1, ..., p_n, p_ij, ...). Indices are 1-based; singleton terms come
/// before joint terms.
struct EventScheme {
  int n = 0;
  std::vector<std::vector<int>> terms;

  EventScheme(int n_, std::vector<std::vector<int>> terms_) : n(n_), terms(std::move(terms_)) {
    for (auto& t : terms) std::sort(t.begin(), t.end());
    validate();
  }

  std::size_t dim() const { return terms.size(); }

  void validate() const {
    if (n < 1) throw DomainError("scheme needs n >= 1 events");
    if (terms.empty()) throw DomainError("scheme needs at least one term");
    std::set<std::vector<int>> seen;
    bool joint_seen = false;
    for (const auto& t : terms) {
      if (t.empty()) throw DomainError("empty term");
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 1 || t[i] > n) throw DomainError("term index out of range 1..n");
        if (i && t[i] == t[i - 1]) throw DomainError("repeated index inside a term");
      }
      if (t.size() == 1 && joint_seen)
        throw DomainError("singleton terms must precede joint terms");
      if (t.size() > 1) joint_seen = true;
      if (!seen.insert(t).second) throw DomainError("duplicate term");
    }
  }
};

/// Truth-table vertex set: one vector of term evaluations per assignment
/// t in {0,1}^n, deduplicated, in ascending lexicographic order.
inline std::vector<RVec> vertices(const EventScheme& s) {
  if (s.n > 20) throw DomainError("vertex enumeration capped at n = 20");
  std::set<RVec> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << s.n); ++mask) {
    RVec v;
    v.reserve(s.terms.size());
    for (const auto& t : s.terms) {
      int prod = 1;
      for (int i : t) prod &= static_cast<int>((mask >> (i - 1)) & 1);
      v.push_back(Rat(prod));
    }
    out.insert(std::move(v));
  }
  return std::vector<RVec>(out.begin(), out.end());
}

/// coeffs . x <= bound with integer coefficients of content 1.
struct LinearInequality {
  std::vector<Int> coeffs;
  Int bound;

  friend bool operator==(const LinearInequality& a, const LinearInequality& b) {
    return a.coeffs == b.coeffs && a.bound == b.bound;
  }
  friend bool operator<(const LinearInequality& a, const LinearInequality& b) {
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    return a.bound < b.bound;
  }

  Rat evaluate(const RVec& x) const {
    Rat v = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) v += Rat(coeffs[i]) * x[i];
    return v;
  }
  bool satisfied_by(const RVec& x) const { return evaluate(x) <= Rat(bound); }

  std::string str() const {
    std::string s;
    for (const auto& c : coeffs) s += c.str() + " ";
    return s + "<= " + bound.str();
  }
};

/// coeffs . x == value; one line of the affine hull of a degenerate hull.
struct LinearEquality {
  std::vector<Int> coeffs;
  Int value;

  friend bool operator<(const LinearEquality& a, const LinearEquality& b) {
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    return a.value < b.value;
  }

  Rat evaluate(const RVec& x) const {
    Rat v = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) v += Rat(coeffs[i]) * x[i];
    return v;
  }

  std::string str() const {
    std::string s;
    for (const auto& c : coeffs) s += c.str() + " ";
    return s + "== " + value.str();
  }
};

/// Complete irredundant half-space description; for lower-dimensional hulls
/// the affine-hull equalities are reported separately.
struct PolytopeH {
  std::vector<LinearInequality> inequalities;
  std::vector<LinearEquality> equalities;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["format_version"] = 1;
    j["inequalities"] = nlohmann::json::array();
    for (const auto& q : inequalities) {
      nlohmann::json c = nlohmann::json::array();
      for (const auto& x : q.coeffs) c.push_back(x.str());
      j["inequalities"].push_back({{"coeffs", c}, {"bound", q.bound.str()}});
    }
    j["equalities"] = nlohmann::json::array();
    for (const auto& q : equalities) {
      nlohmann::json c = nlohmann::json::array();
      for (const auto& x : q.coeffs) c.push_back(x.str());
      j["equalities"].push_back({{"coeffs", c}, {"value", q.value.str()}});
    }
    return j;
  }
};

namespace detail {

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(std::vector<RVec>& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  std::size_t ncols = rows[0].size(), r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    Rat pv = rows[r][c];
    for (auto& x : rows[r]) x /= pv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(pivots.size());
  return pivots;
}

/// Scale a rational vector to integers with content 1.
inline std::vector<Int> integerize(const RVec& v) {
  Int den = 1;
  for (const Rat& x : v) den = int_lcm(den, denominator(x));
  std::vector<Int> out;
  out.reserve(v.size());
  for (const Rat& x : v) out.push_back(numerator(Rat(x * den)));
  Int g = content(out);
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

inline void reduce_content(std::vector<Int>& v) {
  Int g = content(v);
  if (g > 1)
    for (auto& x : v) x /= g;
}

/// Extreme rays of the pointed cone { y : row . y >= 0 for all rows } by
/// double description: simplicial start from a nonsingular row subset, then
/// one constraint at a time in lexicographic order, combining adjacent rays.
class DoubleDescription {
 public:
  explicit DoubleDescription(std::vector<std::vector<Int>> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw DomainError("double description needs constraints");
    dim_ = rows_[0].size();
    run();
  }

  const std::vector<std::vector<Int>>& rays() const { return rays_; }

 private:
  void run() {
    std::vector<std::size_t> base = independent_rows();
    if (base.size() != dim_)
      throw DomainError("cone is not pointed: constraint rank below dimension");
    initial_rays(base);
    std::set<std::size_t> in_base(base.begin(), base.end());
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (!in_base.count(i)) rest.push_back(i);
    std::sort(rest.begin(), rest.end(),
              [&](std::size_t a, std::size_t b) { return rows_[a] < rows_[b]; });
    for (std::size_t c : rest) insert(c);
  }

  std::vector<std::size_t> independent_rows() {
    std::vector<RVec> acc;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < rows_.size() && chosen.size() < dim_; ++i) {
      std::vector<RVec> trial = acc;
      RVec row(rows_[i].size());
      for (std::size_t j = 0; j < row.size(); ++j) row[j] = Rat(rows_[i][j]);
      trial.push_back(row);
      std::vector<RVec> reduced = trial;
      if (rref(reduced).size() == trial.size()) {
        acc = std::move(trial);
        chosen.push_back(i);
      }
    }
    return chosen;
  }

  void initial_rays(const std::vector<std::size_t>& base) {
    // invert the base matrix; columns of the inverse are the simplicial rays
    std::size_t n = dim_;
    std::vector<RVec> aug(n, RVec(2 * n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug[i][j] = Rat(rows_[base[i]][j]);
      aug[i][n + i] = 1;
    }
    if (rref(aug).size() != n) throw DomainError("singular base in double description");
    rays_.clear();
    active_.clear();
    for (std::size_t col = 0; col < n; ++col) {
      RVec ray(n);
      for (std::size_t i = 0; i < n; ++i) ray[i] = aug[i][n + col];
      rays_.push_back(integerize(ray));
    }
    for (std::size_t j = 0; j < rays_.size(); ++j) {
      std::set<std::size_t> act;
      for (std::size_t i = 0; i < base.size(); ++i)
        if (i != j) act.insert(base[i]);
      active_.push_back(std::move(act));
    }
    processed_ = std::set<std::size_t>(base.begin(), base.end());
  }

  Int dot_row(std::size_t row, const std::vector<Int>& ray) const {
    Int s = 0;
    for (std::size_t j = 0; j < dim_; ++j) s += rows_[row][j] * ray[j];
    return s;
  }

  void insert(std::size_t c) {
    std::vector<Int> sign(rays_.size());
    for (std::size_t i = 0; i < rays_.size(); ++i) sign[i] = dot_row(c, rays_[i]);
    std::vector<std::vector<Int>> next;
    std::vector<std::set<std::size_t>> next_active;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      if (sign[i] < 0) continue;
      next.push_back(rays_[i]);
      auto act = active_[i];
      if (sign[i] == 0) act.insert(c);
      next_active.push_back(std::move(act));
    }
    for (std::size_t p = 0; p < rays_.size(); ++p) {
      if (sign[p] <= 0) continue;
      for (std::size_t q = 0; q < rays_.size(); ++q) {
        if (sign[q] >= 0) continue;
        if (!adjacent(p, q)) continue;
        std::vector<Int> blend(dim_);
        for (std::size_t j = 0; j < dim_; ++j)
          blend[j] = sign[p] * rays_[q][j] - sign[q] * rays_[p][j];
        reduce_content(blend);
        std::set<std::size_t> act;
        std::set_intersection(active_[p].begin(), active_[p].end(), active_[q].begin(),
                              active_[q].end(), std::inserter(act, act.begin()));
        act.insert(c);
        next.push_back(std::move(blend));
        next_active.push_back(std::move(act));
      }
    }
    rays_ = std::move(next);
    active_ = std::move(next_active);
    processed_.insert(c);
  }

  bool adjacent(std::size_t p, std::size_t q) const {
    std::set<std::size_t> common;
    std::set_intersection(active_[p].begin(), active_[p].end(), active_[q].begin(),
                          active_[q].end(), std::inserter(common, common.begin()));
    for (std::size_t r = 0; r < rays_.size(); ++r) {
      if (r == p || r == q) continue;
      if (std::includes(active_[r].begin(), active_[r].end(), common.begin(), common.end()))
        return false;
    }
    return true;
  }

  std::vector<std::vector<Int>> rows_;
  std::size_t dim_ = 0;
  std::vector<std::vector<Int>> rays_;
  std::vector<std::set<std::size_t>> active_;
  std::set<std::size_t> processed_;
};

}  // namespace detail

/// Hull problem, exactly: the facet description of conv(verts). Affine-hull
/// equalities are split out when the hull is not full-dimensional.
inline PolytopeH facets(const std::vector<RVec>& verts_in) {
  if (verts_in.empty()) throw DomainError("facet enumeration needs at least one vertex");
  std::set<RVec> uniq(verts_in.begin(), verts_in.end());
  std::vector<RVec> verts(uniq.begin(), uniq.end());
  std::size_t d = verts[0].size();
  for (const auto& v : verts)
    if (v.size() != d) throw DomainError("vertex dimension mismatch");

  PolytopeH out;
  const RVec& v0 = verts[0];

  std::vector<RVec> diffs;
  for (std::size_t i = 1; i < verts.size(); ++i) {
    RVec row(d);
    for (std::size_t j = 0; j < d; ++j) row[j] = verts[i][j] - v0[j];
    diffs.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots = detail::rref(diffs);
  std::size_t r = pivots.size();

  // affine hull: one equality per free column
  std::set<std::size_t> pivot_set(pivots.begin(), pivots.end());
  for (std::size_t f = 0; f < d; ++f) {
    if (pivot_set.count(f)) continue;
    RVec z(d, Rat(0));
    z[f] = 1;
    for (std::size_t j = 0; j < r; ++j) z[pivots[j]] = -diffs[j][f];
    Rat rhs = 0;
    for (std::size_t j = 0; j < d; ++j) rhs += z[j] * v0[j];
    RVec full = z;
    full.push_back(rhs);
    std::vector<Int> zi = detail::integerize(full);
    Int val = zi.back();
    zi.pop_back();
    for (const Int& x : zi) {
      if (x == 0) continue;
      if (x < 0) {
        for (auto& y : zi) y = -y;
        val = -val;
      }
      break;
    }
    out.equalities.push_back({std::move(zi), val});
  }
  std::sort(out.equalities.begin(), out.equalities.end());

  if (r == 0) return out;  // single point: equalities only

  // coordinates inside the hull: pivot-column offsets from v0
  std::vector<RVec> coords;
  for (const auto& v : verts) {
    RVec u(r);
    for (std::size_t j = 0; j < r; ++j) u[j] = v[pivots[j]] - v0[pivots[j]];
    coords.push_back(std::move(u));
  }

  // polar cone: one constraint (1, u) per vertex
  std::vector<std::vector<Int>> rows;
  for (const auto& u : coords) {
    RVec row(r + 1);
    row[0] = 1;
    for (std::size_t j = 0; j < r; ++j) row[j + 1] = u[j];
    rows.push_back(detail::integerize(row));
  }
  detail::DoubleDescription dd(std::move(rows));

  for (const auto& ray : dd.rays()) {
    // ray (y0, y): y . u >= -y0, i.e. (-y) . u <= y0
    RVec c(d, Rat(0));
    Rat b = Rat(ray[0]);
    for (std::size_t j = 0; j < r; ++j) {
      c[pivots[j]] = Rat(-ray[j + 1]);
      b += c[pivots[j]] * v0[pivots[j]];
    }
    RVec full = c;
    full.push_back(b);
    std::vector<Int> ci = detail::integerize(full);
    Int bound = ci.back();
    ci.pop_back();
    out.inequalities.push_back({std::move(ci), bound});
  }
  std::sort(out.inequalities.begin(), out.inequalities.end());
  out.inequalities.erase(std::unique(out.inequalities.begin(), out.inequalities.end()),
                         out.inequalities.end());

  for (const auto& q : out.inequalities)
    for (const auto& v : verts)
      if (!q.satisfied_by(v))
        throw DomainError("internal hull error: vertex violates computed facet");
  return out;
}

/// Outcome of the exact membership test: convex weights over vertices, or a
/// violated linear condition.
struct ClassicalityCertificate {
  bool classical = false;
  std::vector<std::pair<std::size_t, Rat>> weights;  // indices into vertices(s)
  std::optional<LinearInequality> violated;
};

namespace detail {

/// Phase-1 exact simplex with Bland's rule: feasibility of
/// { lambda >= 0 : V^T lambda = p, sum lambda = 1 }.
inline std::optional<std::vector<Rat>> convex_combination(const std::vector<RVec>& verts,
                                                          const RVec& p) {
  std::size_t m = verts.size(), d = p.size(), k = d + 1;
  std::vector<RVec> t(k, RVec(m + k + 1, Rat(0)));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < m; ++j) t[i][j] = verts[j][i];
    t[i][m + k] = p[i];
  }
  for (std::size_t j = 0; j < m; ++j) t[d][j] = 1;
  t[d][m + k] = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (t[i][m + k] < 0)
      for (auto& x : t[i]) x = -x;
    t[i][m + i] = 1;
  }
  std::vector<std::size_t> basis(k);
  for (std::size_t i = 0; i < k; ++i) basis[i] = m + i;
  RVec obj(m + k + 1, Rat(0));  // reduced costs of min sum(artificials)
  for (std::size_t j = m; j < m + k; ++j) obj[j] = 1;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j <= m + k; ++j) obj[j] -= t[i][j];

  while (true) {
    std::size_t enter = m + k;
    for (std::size_t j = 0; j < m + k; ++j)
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    if (enter == m + k) break;
    std::size_t leave = k;
    Rat best = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][m + k] / t[i][enter];
      if (leave == k || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == k) throw DomainError("phase-1 objective unbounded (internal error)");
    Rat pv = t[leave][enter];
    for (auto& x : t[leave]) x /= pv;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t j = 0; j <= m + k; ++j) t[i][j] -= f * t[leave][j];
    }
    Rat fo = obj[enter];
    if (fo != 0)
      for (std::size_t j = 0; j <= m + k; ++j) obj[j] -= fo * t[leave][j];
    basis[leave] = enter;
  }

  Rat z = 0;
  for (std::size_t i = 0; i < k; ++i)
    if (basis[i] >= m) z += t[i][m + k];
  if (z != 0) return std::nullopt;
  std::vector<Rat> lambda(m, Rat(0));
  for (std::size_t i = 0; i < k; ++i)
    if (basis[i] < m) lambda[basis[i]] = t[i][m + k];
  return lambda;
}

}  // namespace detail

/// Exact LP membership in the correlation polytope: convex weights on success,
/// the first violated facet (canonical order) on failure.
inline ClassicalityCertificate is_classical(const RVec& p, const EventScheme& s) {
  if (p.size() != s.dim()) throw DomainError("probability vector does not match scheme");
  std::vector<RVec> verts = vertices(s);
  ClassicalityCertificate cert;
  auto lambda = detail::convex_combination(verts, p);
  if (lambda) {
    cert.classical = true;
    Rat total = 0;
    RVec recon(p.size(), Rat(0));
    for (std::size_t j = 0; j < lambda->size(); ++j) {
      const Rat& w = (*lambda)[j];
      if (w == 0) continue;
      if (w < 0) throw DomainError("internal LP error: negative weight");
      cert.weights.emplace_back(j, w);
      total += w;
      for (std::size_t i = 0; i < p.size(); ++i) recon[i] += w * verts[j][i];
    }
    if (total != 1 || recon != p) throw DomainError("internal LP error: bad certificate");
    return cert;
  }
  PolytopeH h = facets(verts);
  for (const auto& q : h.equalities) {
    Rat v = q.evaluate(p);
    if (v == Rat(q.value)) continue;
    LinearInequality viol{q.coeffs, q.value};
    if (v < Rat(q.value)) {
      for (auto& x : viol.coeffs) x = -x;
      viol.bound = -viol.bound;
    }
    cert.violated = viol;
    return cert;
  }
  for (const auto& q : h.inequalities)
    if (!q.satisfied_by(p)) {
      cert.violated = q;
      return cert;
    }
  throw DomainError("internal error: infeasible point violates no facet");
}

// --- scheme file format ---------------------------------------------------------
// First line: n. Each further line: the index list of one term.

inline EventScheme parse_scheme(std::istream& in) {
  std::vector<std::vector<int>> lines;
  std::string line;
  std::size_t lineno = 0;
  std::optional<int> n;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::stringstream ss(line);
    std::vector<int> nums;
    int x;
    while (ss >> x) nums.push_back(x);
    std::string rest;
    if (ss.clear(), ss >> rest)
      throw ParseError("line " + std::to_string(lineno) + ": expected integers");
    if (nums.empty()) continue;
    if (!n) {
      if (nums.size() != 1)
        throw ParseError("line " + std::to_string(lineno) + ": first line must be n alone");
      n = nums[0];
    } else {
      lines.push_back(std::move(nums));
    }
  }
  if (!n) throw ParseError("empty scheme input");
  try {
    return EventScheme(*n, std::move(lines));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid scheme: ") + e.what());
  }
}

inline void emit_scheme(const EventScheme& s, std::ostream& out) {
  out << s.n << "\n";
  for (const auto& t : s.terms) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out << " ";
      out << t[i];
    }
    out << "\n";
  }
}

inline RVec parse_rational_vector(const std::string& text) {
  RVec out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto b = tok.find_first_not_of(" \t");
    auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty vector component");
    out.push_back(parse_rat(tok.substr(b, e - b + 1)));
  }
  if (out.empty()) throw ParseError("empty vector");
  return out;
}

}  // namespace omlkit
