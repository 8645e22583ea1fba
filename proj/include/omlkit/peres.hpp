#pragma once

#include <algorithm>
#include <array>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "omlkit/greechie.hpp"
#include "omlkit/ray.hpp"

namespace omlkit {

namespace detail {

inline Scalar digit_scalar(char c) {
  switch (c) {
    case '0': return Scalar(0);
    case '1': return Scalar(1);
    case '2': return Scalar::sqrt2();
    case 'A': return Scalar(-1);
    default: throw DomainError("bad coordinate digit");
  }
}

inline Ray digit_ray(const char* d) {
  return Ray(digit_scalar(d[0]), digit_scalar(d[1]), digit_scalar(d[2]));
}

inline void add_permutations(std::set<Ray>& out, const Ray& r) {
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& p : perms) out.insert(Ray(r[p[0]], r[p[1]], r[p[2]]));
}

}  // namespace detail

/// The three nonorthogonal generators (1,0,0), (1,1,0), (sqrt2,1,1).
inline std::vector<Ray> three_generators() {
  return {detail::digit_ray("100"), detail::digit_ray("110"), detail::digit_ray("211")};
}

/// The 33-ray configuration: all coordinate permutations of
/// (0,0,1), (0,±1,1), (0,±1,sqrt2), (±1,±1,sqrt2), deduplicated projectively.
inline std::vector<Ray> peres_rays() {
  std::set<Ray> out;
  detail::add_permutations(out, detail::digit_ray("001"));
  detail::add_permutations(out, detail::digit_ray("011"));
  detail::add_permutations(out, detail::digit_ray("01A"));
  detail::add_permutations(out, detail::digit_ray("012"));
  detail::add_permutations(out, detail::digit_ray("0A2"));
  for (const char* d : {"112", "1A2", "A12", "AA2"})
    detail::add_permutations(out, detail::digit_ray(d));
  return std::vector<Ray>(out.begin(), out.end());
}

/// The 17-ray orthogenerating subset: (0,0,1), (0,1,0), and all coordinate
/// permutations of (0,1,sqrt2), (1,±1,sqrt2).
inline std::vector<Ray> seventeen_generators() {
  std::set<Ray> out;
  out.insert(detail::digit_ray("001"));
  out.insert(detail::digit_ray("010"));
  detail::add_permutations(out, detail::digit_ray("012"));
  detail::add_permutations(out, detail::digit_ray("112"));
  detail::add_permutations(out, detail::digit_ray("1A2"));
  return std::vector<Ray>(out.begin(), out.end());
}

namespace detail {

/// The generation script: nor-expressions over the three generators, one per
/// derived ray, with the expected coordinates for transcription checking.
/// `+` is the nor of two lines (cross product in R^3).
struct ScriptRow {
  const char* expected;
  const char* expr;
};

inline const std::vector<ScriptRow>& derivation_script() {
  static const std::vector<ScriptRow> rows = {
      {"001", "(a+b)"},
      {"01A", "(a+c)"},
      {"010", "(a+(a+b))"},
      {"011", "(a+(a+c))"},
      {"1A0", "(b+(a+b))"},
      {"A20", "(c+(a+b))"},
      {"2AA", "(c+(a+c))"},
      {"A02", "(c+(a+(a+b)))"},
      {"210", "((a+b)+(c+(a+b)))"},
      {"120", "((a+b)+(c+(a+c)))"},
      {"102", "((a+(a+b))+(c+(a+c)))"},
      {"21A", "((a+(a+c))+(c+(a+b)))"},
      {"201", "((a+(a+b))+(c+(a+(a+b))))"},
      {"2A0", "((a+b)+((a+b)+(c+(a+c))))"},
      {"2A1", "((a+(a+c))+(c+(a+(a+b))))"},
      {"A12", "(b+((a+(a+b))+(c+(a+(a+b)))))"},
      {"02A", "(a+(b+((a+(a+b))+(c+(a+(a+b))))))"},
      {"20A", "((a+(a+b))+((a+(a+b))+(c+(a+c))))"},
      {"1A2", "(b+(b+((a+(a+b))+(c+(a+(a+b))))))"},
      {"012", "(a+(a+(b+((a+(a+b))+(c+(a+(a+b)))))))"},
      {"021", "(a+(b+(b+((a+(a+b))+(c+(a+(a+b)))))))"},
      {"AA2", "((b+(a+b))+((a+(a+b))+(c+(a+(a+b)))))"},
      {"0A2", "(a+(a+(b+(b+((a+(a+b))+(c+(a+(a+b))))))))"},
      {"112", "((b+(a+b))+(a+(b+((a+(a+b))+(c+(a+(a+b)))))))"},
      {"A2A", "(((a+b)+(c+(a+b)))+(a+(a+(b+((a+(a+b))+(c+(a+(a+b))))))))"},
      {"A21", "(((a+b)+(c+(a+b)))+(a+(a+(b+(b+((a+(a+b))+(c+(a+(a+b)))))))))"},
      {"12A", "(((a+b)+((a+b)+(c+(a+c))))+(a+(a+(b+((a+(a+b))+(c+(a+(a+b))))))))"},
      {"A01", "((a+(a+b))+(((a+b)+(c+(a+b)))+(a+(a+(b+((a+(a+b))+(c+(a+(a+b)))))))))"},
      {"121", "(((a+b)+((a+b)+(c+(a+c))))+(a+(a+(b+(b+((a+(a+b))+(c+(a+(a+b)))))))))"},
      {"101", "((a+(a+b))+(((a+b)+(c+(a+b)))+(a+(a+(b+(b+((a+(a+b))+(c+(a+(a+b))))))))))"},
  };
  return rows;
}

inline Ray eval_nor_expression(const std::string& s, std::size_t& pos,
                               const std::map<char, Ray>& gens) {
  if (pos >= s.size()) throw DomainError("truncated nor-expression");
  char ch = s[pos];
  if (gens.count(ch)) {
    ++pos;
    return gens.at(ch);
  }
  if (ch != '(') throw DomainError("bad nor-expression near '" + s.substr(pos) + "'");
  ++pos;
  Ray left = eval_nor_expression(s, pos, gens);
  if (pos >= s.size() || s[pos] != '+') throw DomainError("expected '+' in nor-expression");
  ++pos;
  Ray right = eval_nor_expression(s, pos, gens);
  if (pos >= s.size() || s[pos] != ')') throw DomainError("expected ')' in nor-expression");
  ++pos;
  return nor(left, right);
}

}  // namespace detail

/// Evaluate one nor-expression (grammar: a|b|c or (E+E)) over the three
/// generators. Throws on parallel operands.
inline Ray eval_nor_expression(const std::string& expr) {
  auto g = three_generators();
  std::map<char, Ray> gens{{'a', g[0]}, {'b', g[1]}, {'c', g[2]}};
  std::size_t pos = 0;
  Ray r = detail::eval_nor_expression(expr, pos, gens);
  if (pos != expr.size()) throw DomainError("trailing input in nor-expression");
  return r;
}

/// Replay the 30-row generation script from the three generators. Each row is
/// checked against its recorded coordinates; the full result is the 33-ray set.
inline std::vector<Ray> replay_derivation() {
  std::set<Ray> out;
  for (const Ray& g : three_generators()) out.insert(g);
  for (const auto& row : detail::derivation_script()) {
    Ray r = eval_nor_expression(row.expr);
    if (r != detail::digit_ray(row.expected))
      throw DomainError(std::string("derivation row for ") + row.expected +
                        " evaluated to " + r.name());
    out.insert(r);
  }
  return std::vector<Ray>(out.begin(), out.end());
}

/// Least fixpoint of the nor operation over orthogonal pairs. The cap guards
/// against configurations that generate dense line sets.
inline std::vector<Ray> ortho_closure(const std::vector<Ray>& rays,
                                      std::size_t cap = 10000) {
  std::set<Ray> cur(rays.begin(), rays.end());
  std::size_t added = 0;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Ray> snapshot(cur.begin(), cur.end());
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        if (!is_orthogonal(snapshot[i], snapshot[j])) continue;
        Ray n = nor(snapshot[i], snapshot[j]);
        if (cur.insert(n).second) {
          grew = true;
          if (++added > cap)
            throw DomainError("orthogeneration exceeded cap of " + std::to_string(cap) +
                              " new rays; the input likely generates a dense set");
        }
      }
  }
  return std::vector<Ray>(cur.begin(), cur.end());
}

/// All maximal mutually-orthogonal subsets of a set of rays in R^3, as a
/// Greechie diagram with atoms named by canonical coordinates.
inline GreechieDiagram ray_contexts(const std::vector<Ray>& rays) {
  std::set<Ray> uniq(rays.begin(), rays.end());
  std::vector<Ray> v(uniq.begin(), uniq.end());
  if (v.size() != rays.size()) throw DomainError("rays must be pairwise distinct");
  for (const Ray& r : v)
    if (r.dim() != 3) throw DomainError("context extraction requires rays in R^3");
  std::size_t n = v.size();
  std::vector<std::vector<bool>> orth(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      orth[i][j] = orth[j][i] = is_orthogonal(v[i], v[j]);
  std::set<std::vector<int>> ctxs;
  std::vector<char> in_context(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!orth[i][j]) continue;
      // in R^3 an orthogonal pair has exactly one completion candidate
      Ray third = nor(v[i], v[j]);
      auto it = uniq.find(third);
      std::vector<int> ctx;
      if (it != uniq.end()) {
        std::size_t k = std::lower_bound(v.begin(), v.end(), third) - v.begin();
        ctx = {static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)};
        std::sort(ctx.begin(), ctx.end());
      } else {
        ctx = {static_cast<int>(i), static_cast<int>(j)};
      }
      ctxs.insert(ctx);
      for (int a : ctx) in_context[a] = 1;
    }
  // triads subsume their pairs
  std::set<std::vector<int>> maximal;
  for (const auto& c : ctxs) {
    if (c.size() == 3) {
      maximal.insert(c);
      continue;
    }
    bool covered = false;
    for (const auto& t : ctxs)
      if (t.size() == 3 && std::includes(t.begin(), t.end(), c.begin(), c.end()))
        covered = true;
    if (!covered) maximal.insert(c);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!in_context[i])
      throw DomainError("ray " + v[i].name() + " is orthogonal to no other ray");
  std::vector<std::string> names;
  names.reserve(n);
  for (const Ray& r : v) names.push_back(r.name());
  std::vector<std::vector<int>> out(maximal.begin(), maximal.end());
  return GreechieDiagram(std::move(names), std::move(out));
}

/// 0, 1, one atom per ray and one coatom plane per ray: 2 + 2|rays|.
/// Requires the set to be closed under nor of orthogonal pairs.
inline std::size_t orthoposet_element_count(const std::vector<Ray>& rays) {
  std::set<Ray> s(rays.begin(), rays.end());
  for (auto i = s.begin(); i != s.end(); ++i)
    for (auto j = std::next(i); j != s.end(); ++j)
      if (is_orthogonal(*i, *j) && !s.count(nor(*i, *j)))
        throw DomainError("ray set is not orthogeneration-closed");
  return 2 + 2 * s.size();
}

/// Histogram of context sizes (e.g. {3: 40} for a closed triad configuration).
inline std::map<std::size_t, std::size_t> context_size_histogram(const GreechieDiagram& d) {
  std::map<std::size_t, std::size_t> h;
  for (const auto& c : d.contexts()) ++h[c.size()];
  return h;
}

/// Family histogram: canonical |coordinate| multiset -> count.
inline std::map<std::string, std::size_t> family_histogram(const std::vector<Ray>& rays) {
  std::map<std::string, std::size_t> h;
  for (const Ray& r : rays) ++h[r.family()];
  return h;
}

// --- product-of-factors frame checks ----------------------------------------

/// Rowwise orthogonality report for vector lists realizing products of
/// Chinese-lantern factors: each row [v, v', w, w'] supplies one factor's
/// atoms (two complementary pairs); distinct rows must be fully orthogonal.
struct ProductFrameReport {
  std::vector<std::vector<Ray>> factors;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

inline ProductFrameReport check_product_frames(std::vector<std::vector<Ray>> factors) {
  ProductFrameReport rep;
  rep.factors = std::move(factors);
  auto need = [&](const Ray& x, const Ray& y, bool want, const std::string& what) {
    if (is_orthogonal(x, y) != want)
      rep.failures.push_back(what + ": " + x.name() + " vs " + y.name());
  };
  for (std::size_t f = 0; f < rep.factors.size(); ++f) {
    const auto& row = rep.factors[f];
    if (row.size() != 4) {
      rep.failures.push_back("factor row must list 4 vectors");
      continue;
    }
    need(row[0], row[1], true, "complement pair not orthogonal");
    need(row[2], row[3], true, "complement pair not orthogonal");
  }
  for (std::size_t f = 0; f < rep.factors.size(); ++f)
    for (std::size_t g = f + 1; g < rep.factors.size(); ++g)
      for (const Ray& x : rep.factors[f])
        for (const Ray& y : rep.factors[g]) need(x, y, true, "cross-factor pair not orthogonal");
  return rep;
}

/// The MO_2 x MO_2 configuration in R^4: 8 rays, two orthogonal frames
/// {a,a',c,c'} and {b,b',d,d'}, factor rows {a,a',b,b'} and {c,c',d,d'}.
struct R4ProductReport {
  std::map<std::string, Ray> vectors;
  ProductFrameReport frame_report;
  bool frames_orthogonal = false;  // the two interleaved 4-frames
  bool ok() const { return frame_report.ok() && frames_orthogonal; }
};

inline R4ProductReport r4_product_check() {
  auto ray4 = [](int x, int y, int z, int w) {
    return Ray({Scalar(x), Scalar(y), Scalar(z), Scalar(w)});
  };
  R4ProductReport rep;
  rep.vectors = {
      {"a", ray4(1, 0, 0, 0)}, {"a'", ray4(0, 1, 0, 0)},
      {"b", ray4(1, 1, 0, 0)}, {"b'", ray4(1, -1, 0, 0)},
      {"c", ray4(0, 0, 1, 0)}, {"c'", ray4(0, 0, 0, 1)},
      {"d", ray4(0, 0, 1, 1)}, {"d'", ray4(0, 0, 1, -1)},
  };
  auto v = [&](const char* n) { return rep.vectors.at(n); };
  rep.frame_report = check_product_frames({{v("a"), v("a'"), v("b"), v("b'")},
                                           {v("c"), v("c'"), v("d"), v("d'")}});
  auto frame_ok = [&](std::vector<Ray> f) {
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j)
        if (!is_orthogonal(f[i], f[j])) return false;
    return true;
  };
  rep.frames_orthogonal = frame_ok({v("a"), v("a'"), v("c"), v("c'")}) &&
                          frame_ok({v("b"), v("b'"), v("d"), v("d'")});
  return rep;
}

/// Three MO_2 factors in R^6, one factor row per coordinate plane.
inline ProductFrameReport r6_product_check() {
  auto ray6 = [](std::array<int, 6> c) {
    std::vector<Scalar> v;
    for (int x : c) v.push_back(Scalar(x));
    return Ray(std::move(v));
  };
  return check_product_frames({
      {ray6({1, 0, 0, 0, 0, 0}), ray6({0, 1, 0, 0, 0, 0}), ray6({1, 1, 0, 0, 0, 0}),
       ray6({1, -1, 0, 0, 0, 0})},
      {ray6({0, 0, 1, 0, 0, 0}), ray6({0, 0, 0, 1, 0, 0}), ray6({0, 0, 1, 1, 0, 0}),
       ray6({0, 0, 1, -1, 0, 0})},
      {ray6({0, 0, 0, 0, 1, 0}), ray6({0, 0, 0, 0, 0, 1}), ray6({0, 0, 0, 0, 1, 1}),
       ray6({0, 0, 0, 0, 1, -1})},
  });
}

/// Whether 2^q x MO_{m_1} x ... x MO_{m_k} embeds into the subspace logic of
/// R^n: q + 2k <= n, and for odd n a Boolean factor is mandatory (q != 0).
inline bool embeddable(int q, const std::vector<int>& mo_factors, int n) {
  if (q < 0 || n < 1) throw DomainError("embeddable: q >= 0 and n >= 1 required");
  for (int m : mo_factors)
    if (m < 2) throw DomainError("embeddable: MO factors need m >= 2");
  int k = static_cast<int>(mo_factors.size());
  if (q + 2 * k > n) return false;
  if (n % 2 == 1 && q == 0) return false;
  return true;
}

}  // namespace omlkit
