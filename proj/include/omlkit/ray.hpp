#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "omlkit/sqrt2.hpp"

namespace omlkit {

/// Projective vector over Q(sqrt2). Construction canonicalizes, so two Ray
/// values compare equal iff they span the same line.
///
/// Canonical form: divide by the first nonzero coordinate (this removes the
/// whole Q(sqrt2)* scaling freedom, units included), rescale to coordinates
/// in Z[sqrt2], divide out the integer content, pull out sqrt2 factors while
/// every rational part is even, and fix the first nonzero coordinate positive.
class Ray {
 public:
  explicit Ray(std::vector<Scalar> coords) : c_(std::move(coords)) {
    canonicalize();
  }
  Ray(Scalar x, Scalar y, Scalar z) : c_{std::move(x), std::move(y), std::move(z)} {
    canonicalize();
  }

  std::size_t dim() const { return c_.size(); }
  const Scalar& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<Scalar>& coords() const { return c_; }

  friend bool operator==(const Ray& u, const Ray& v) { return u.c_ == v.c_; }
  friend bool operator!=(const Ray& u, const Ray& v) { return !(u == v); }
  friend bool operator<(const Ray& u, const Ray& v) {
    if (u.c_.size() != v.c_.size()) return u.c_.size() < v.c_.size();
    for (std::size_t i = 0; i < u.c_.size(); ++i) {
      if (u.c_[i] != v.c_[i]) return scalar_less(u.c_[i], v.c_[i]);
    }
    return false;
  }

  /// Colon-joined coordinates, e.g. "1:-1:r2". Safe as a Greechie atom name.
  std::string name() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ':';
      s += c_[i].str();
    }
    return s;
  }

  /// Multiset of |coordinate| values in numeric order, e.g. "0,1,r2".
  /// Identifies the permutation/sign family a ray belongs to.
  std::string family() const {
    std::vector<Scalar> abs;
    abs.reserve(c_.size());
    for (const Scalar& x : c_) abs.push_back(x.sign() < 0 ? -x : x);
    std::sort(abs.begin(), abs.end(),
              [](const Scalar& x, const Scalar& y) { return x < y; });
    std::string s;
    for (std::size_t i = 0; i < abs.size(); ++i) {
      if (i) s += ',';
      s += abs[i].str();
    }
    return s;
  }

 private:
  static bool scalar_less(const Scalar& x, const Scalar& y) {
    if (x.rational_part() != y.rational_part())
      return x.rational_part() < y.rational_part();
    return x.sqrt2_part() < y.sqrt2_part();
  }

  void canonicalize() {
    std::size_t lead = c_.size();
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!c_[i].is_zero()) {
        lead = i;
        break;
      }
    }
    if (lead == c_.size()) throw DomainError("zero vector is not a ray");
    Scalar inv = c_[lead].inverse();
    for (Scalar& x : c_) x = x * inv;

    Int den = 1;
    for (const Scalar& x : c_) {
      den = int_lcm(den, denominator(x.rational_part()));
      den = int_lcm(den, denominator(x.sqrt2_part()));
    }
    std::vector<Int> a(c_.size()), b(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      a[i] = numerator(Rat(c_[i].rational_part() * den));
      b[i] = numerator(Rat(c_[i].sqrt2_part() * den));
    }
    auto reduce_content = [&] {
      std::vector<Int> all(a);
      all.insert(all.end(), b.begin(), b.end());
      Int g = content(all);
      if (g > 1) {
        for (auto& x : a) x /= g;
        for (auto& x : b) x /= g;
      }
    };
    reduce_content();
    auto all_even = [&] {
      for (const Int& x : a)
        if (x % 2 != 0) return false;
      return true;
    };
    while (all_even()) {
      // (a + b*sqrt2)/sqrt2 = b + (a/2)*sqrt2
      for (std::size_t i = 0; i < a.size(); ++i) {
        Int half = a[i] / 2;
        a[i] = b[i];
        b[i] = half;
      }
      reduce_content();
    }
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = Scalar(Rat(a[i]), Rat(b[i]));
    for (const Scalar& x : c_) {
      int s = x.sign();
      if (s != 0) {
        if (s < 0)
          for (Scalar& y : c_) y = -y;
        break;
      }
    }
  }

  std::vector<Scalar> c_;
};

inline Scalar dot(const Ray& u, const Ray& v) {
  if (u.dim() != v.dim()) throw DomainError("dimension mismatch in dot");
  Scalar s(0);
  for (std::size_t i = 0; i < u.dim(); ++i) s = s + u[i] * v[i];
  return s;
}

inline bool is_orthogonal(const Ray& u, const Ray& v) { return dot(u, v).is_zero(); }

/// The unique ray orthogonal to two independent rays in R^3: the
/// orthocomplement of their span, realized as the cross product.
inline Ray nor(const Ray& u, const Ray& v) {
  if (u.dim() != 3 || v.dim() != 3) throw DomainError("nor requires rays in R^3");
  std::vector<Scalar> c{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                        u[0] * v[1] - u[1] * v[0]};
  if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero())
    throw DomainError("nor of parallel rays: complement is a plane, not a ray");
  return Ray(std::move(c));
}

// --- ray file format -------------------------------------------------------
// One ray per line, coordinates comma-separated; each coordinate is `p/q` or
// `p/q+r/s r2` (the literal token r2 denotes sqrt2); `#` starts a comment.

inline Scalar parse_scalar(const std::string& tok) {
  static const std::regex plain(R"(^\s*([+-]?\d+(?:/[+-]?\d+)?)\s*$)");
  static const std::regex with_r2(
      R"(^\s*(?:([+-]?\d+(?:/[+-]?\d+)?)\s*\+)?\s*([+-]?\d+(?:/[+-]?\d+)?)?\s*r2\s*$)");
  std::smatch m;
  if (std::regex_match(tok, m, plain)) return Scalar(parse_rat(m[1]), Rat(0));
  if (std::regex_match(tok, m, with_r2)) {
    Rat a = m[1].matched ? parse_rat(m[1]) : Rat(0);
    Rat b = m[2].matched ? parse_rat(m[2]) : Rat(1);
    return Scalar(a, b);
  }
  throw ParseError("bad coordinate '" + tok + "'");
}

inline std::string emit_scalar(const Scalar& x) {
  if (x.sqrt2_part() == 0) return rat_str(x.rational_part());
  return rat_str(x.rational_part()) + "+" + rat_str(x.sqrt2_part()) + " r2";
}

inline std::vector<Ray> parse_rays(std::istream& in) {
  std::vector<Ray> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<Scalar> coords;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) coords.push_back(parse_scalar(tok));
    if (coords.size() < 2)
      throw ParseError("line " + std::to_string(lineno) + ": need >= 2 coordinates");
    try {
      out.emplace_back(std::move(coords));
    } catch (const DomainError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline void emit_rays(const std::vector<Ray>& rays, std::ostream& out) {
  for (const Ray& r : rays) {
    for (std::size_t i = 0; i < r.dim(); ++i) {
      if (i) out << ",";
      out << emit_scalar(r[i]);
    }
    out << "\n";
  }
}

}  // namespace omlkit
