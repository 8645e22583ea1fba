#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "omlkit/rational.hpp"

namespace omlkit {

using Complex = std::complex<double>;

/// Dense complex matrix with an attached tolerance for the hermiticity /
/// idempotence / positivity checks. Value semantics throughout.
class CMatrix {
 public:
  static constexpr double kDefaultTol = 1e-9;

  CMatrix(int dim, double tol = kDefaultTol)
      : dim_(dim), tol_(tol), a_(static_cast<std::size_t>(dim) * dim, Complex(0, 0)) {
    if (dim < 1) throw DomainError("matrix dimension must be positive");
    if (tol <= 0) throw DomainError("tolerance must be positive");
  }

  CMatrix(int dim, std::vector<Complex> entries, double tol = kDefaultTol)
      : dim_(dim), tol_(tol), a_(std::move(entries)) {
    if (dim < 1) throw DomainError("matrix dimension must be positive");
    if (tol <= 0) throw DomainError("tolerance must be positive");
    if (a_.size() != static_cast<std::size_t>(dim) * dim)
      throw DomainError("entry count does not match dimension");
  }

  static CMatrix identity(int dim, double tol = kDefaultTol) {
    CMatrix m(dim, tol);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }

  int dim() const { return dim_; }
  double tolerance() const { return tol_; }
  Complex& at(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
  const Complex& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * dim_ + c]; }

  CMatrix adjoint() const {
    CMatrix m(dim_, tol_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) m.at(c, r) = std::conj(at(r, c));
    return m;
  }

  Complex trace() const {
    Complex t = 0;
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
  }

  friend CMatrix operator+(const CMatrix& x, const CMatrix& y) {
    x.check_dim(y);
    CMatrix m(x.dim_, std::min(x.tol_, y.tol_));
    for (std::size_t i = 0; i < x.a_.size(); ++i) m.a_[i] = x.a_[i] + y.a_[i];
    return m;
  }
  friend CMatrix operator-(const CMatrix& x, const CMatrix& y) {
    x.check_dim(y);
    CMatrix m(x.dim_, std::min(x.tol_, y.tol_));
    for (std::size_t i = 0; i < x.a_.size(); ++i) m.a_[i] = x.a_[i] - y.a_[i];
    return m;
  }
  friend CMatrix operator*(const CMatrix& x, const CMatrix& y) {
    x.check_dim(y);
    CMatrix m(x.dim_, std::min(x.tol_, y.tol_));
    for (int r = 0; r < x.dim_; ++r)
      for (int k = 0; k < x.dim_; ++k) {
        Complex v = x.at(r, k);
        if (v == Complex(0, 0)) continue;
        for (int c = 0; c < x.dim_; ++c) m.at(r, c) += v * y.at(k, c);
      }
    return m;
  }
  friend CMatrix operator*(Complex s, const CMatrix& x) {
    CMatrix m(x.dim_, x.tol_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) m.a_[i] = s * x.a_[i];
    return m;
  }

  double max_abs_diff(const CMatrix& y) const {
    check_dim(y);
    double d = 0;
    for (std::size_t i = 0; i < a_.size(); ++i) d = std::max(d, std::abs(a_[i] - y.a_[i]));
    return d;
  }

  bool is_hermitian() const { return max_abs_diff(adjoint()) <= tol_; }
  bool is_idempotent() const { return ((*this) * (*this)).max_abs_diff(*this) <= tol_; }
  bool is_projector() const { return is_hermitian() && is_idempotent(); }

  bool is_density() const {
    if (!is_hermitian()) return false;
    if (std::abs(trace() - Complex(1, 0)) > tol_) return false;
    for (double ev : eigenvalues())
      if (ev < -tol_) return false;
    return true;
  }

  /// Eigenvalues of a hermitian matrix, ascending.
  std::vector<double> eigenvalues() const {
    return eigensystem().first;
  }

  /// (eigenvalues ascending, orthonormal eigenvectors as matrix columns).
  std::pair<std::vector<double>, CMatrix> eigensystem() const {
    Eigen::MatrixXcd m(dim_, dim_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) m(r, c) = at(r, c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) throw DomainError("eigendecomposition failed");
    std::vector<double> vals(dim_);
    CMatrix vecs(dim_, tol_);
    for (int i = 0; i < dim_; ++i) {
      vals[i] = solver.eigenvalues()(i);
      for (int r = 0; r < dim_; ++r) vecs.at(r, i) = solver.eigenvectors()(r, i);
    }
    return {vals, vecs};
  }

  nlohmann::json to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < dim_; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < dim_; ++c) row.push_back({at(r, c).real(), at(r, c).imag()});
      rows.push_back(row);
    }
    return {{"dim", dim_}, {"entries", rows}};
  }

  static CMatrix from_json(const nlohmann::json& j, double tol = kDefaultTol) {
    try {
      int dim = j.at("dim").get<int>();
      CMatrix m(dim, tol);
      const auto& rows = j.at("entries");
      if (static_cast<int>(rows.size()) != dim) throw ParseError("bad matrix row count");
      for (int r = 0; r < dim; ++r) {
        if (static_cast<int>(rows[r].size()) != dim) throw ParseError("bad matrix row length");
        for (int c = 0; c < dim; ++c)
          m.at(r, c) = Complex(rows[r][c].at(0).get<double>(), rows[r][c].at(1).get<double>());
      }
      return m;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad matrix JSON: ") + e.what());
    }
  }

 private:
  void check_dim(const CMatrix& y) const {
    if (dim_ != y.dim_) throw DomainError("matrix dimension mismatch");
  }

  int dim_;
  double tol_;
  std::vector<Complex> a_;
};

// --- Born rule ----------------------------------------------------------------

/// trace(rho * e) for a density operator and a projector; real within
/// tolerance and clamped to [0,1].
inline double born_probability(const CMatrix& rho, const CMatrix& e) {
  if (rho.dim() != e.dim()) throw DomainError("dimension mismatch");
  if (!rho.is_density()) throw DomainError("rho is not a density operator");
  if (!e.is_projector()) throw DomainError("e is not a projector");
  Complex t = (rho * e).trace();
  double tol = std::min(rho.tolerance(), e.tolerance());
  if (std::abs(t.imag()) > tol) throw DomainError("trace has a nonreal part");
  double p = t.real();
  if (p < -tol || p > 1 + tol) throw DomainError("probability out of [0,1] beyond tolerance");
  return std::clamp(p, 0.0, 1.0);
}

/// trace(rho * a) for hermitian a, cross-checked against the spectral
/// resolution sum(lambda_i * trace(rho E_i)).
inline double expectation(const CMatrix& rho, const CMatrix& a) {
  if (rho.dim() != a.dim()) throw DomainError("dimension mismatch");
  if (!rho.is_density()) throw DomainError("rho is not a density operator");
  if (!a.is_hermitian()) throw DomainError("observable is not hermitian");
  double tol = std::min(rho.tolerance(), a.tolerance());
  Complex t = (rho * a).trace();
  if (std::abs(t.imag()) > tol) throw DomainError("trace has a nonreal part");
  auto [vals, vecs] = a.eigensystem();
  double by_spectrum = 0;
  for (int i = 0; i < a.dim(); ++i) {
    CMatrix proj(a.dim(), a.tolerance());
    for (int r = 0; r < a.dim(); ++r)
      for (int c = 0; c < a.dim(); ++c) proj.at(r, c) = vecs.at(r, i) * std::conj(vecs.at(c, i));
    by_spectrum += vals[i] * (rho * proj).trace().real();
  }
  if (std::abs(by_spectrum - t.real()) > tol)
    throw DomainError("spectral resolution disagrees with the direct trace");
  return t.real();
}

// --- the maximal-operator construction -----------------------------------------

/// Squares of the three spin-1 component observables along the coordinate
/// axes. They commute, sum to 2*I, and have eigenvalues {0, 1}.
inline std::array<CMatrix, 3> j_squared(double tol = CMatrix::kDefaultTol) {
  CMatrix j1(3, tol), j2(3, tol), j3(3, tol);
  j1.at(0, 0) = 0.5; j1.at(0, 2) = 0.5;
  j1.at(1, 1) = 1.0;
  j1.at(2, 0) = 0.5; j1.at(2, 2) = 0.5;
  j2.at(0, 0) = 0.5; j2.at(0, 2) = -0.5;
  j2.at(1, 1) = 1.0;
  j2.at(2, 0) = -0.5; j2.at(2, 2) = 0.5;
  j3.at(0, 0) = 1.0;
  j3.at(2, 2) = 1.0;
  return {j1, j2, j3};
}

/// Squares of the spin components along the frame rotated 45 degrees about
/// the z axis; the third matrix coincides with the unrotated one.
inline std::array<CMatrix, 3> rotated_j_squared(double tol = CMatrix::kDefaultTol) {
  CMatrix j1(3, tol), j2(3, tol), j3(3, tol);
  j1.at(0, 0) = 0.5; j1.at(0, 2) = Complex(0, -0.5);
  j1.at(1, 1) = 1.0;
  j1.at(2, 0) = Complex(0, 0.5); j1.at(2, 2) = 0.5;
  j2.at(0, 0) = 0.5; j2.at(0, 2) = Complex(0, 0.5);
  j2.at(1, 1) = 1.0;
  j2.at(2, 0) = Complex(0, -0.5); j2.at(2, 2) = 0.5;
  j3.at(0, 0) = 1.0;
  j3.at(2, 2) = 1.0;
  return {j1, j2, j3};
}

inline void require_distinct(double a, double b, double c) {
  if (a == b || b == c || a == c)
    throw DomainError("coefficients a, b, c must be pairwise distinct");
}

/// The single maximal observable U = a*J1^2 + b*J2^2 + c*J3^2 encoding a
/// whole measurement context; eigenvalues {a+b, b+c, a+c}.
inline CMatrix ur_operator(double a, double b, double c,
                           double tol = CMatrix::kDefaultTol) {
  require_distinct(a, b, c);
  CMatrix u(3, tol);
  u.at(0, 0) = 0.5 * (a + b + 2 * c);
  u.at(0, 2) = 0.5 * (a - b);
  u.at(1, 1) = a + b;
  u.at(2, 0) = 0.5 * (a - b);
  u.at(2, 2) = 0.5 * (a + b + 2 * c);
  return u;
}

/// Same construction on the rotated frame.
inline CMatrix rotated_ur(double a, double b, double c,
                          double tol = CMatrix::kDefaultTol) {
  require_distinct(a, b, c);
  CMatrix u(3, tol);
  u.at(0, 0) = 0.5 * (a + b + 2 * c);
  u.at(0, 2) = Complex(0, 0.5 * (b - a));
  u.at(1, 1) = a + b;
  u.at(2, 0) = Complex(0, 0.5 * (a - b));
  u.at(2, 2) = 0.5 * (a + b + 2 * c);
  return u;
}

/// Recover the three component squares from U alone, as the quadratic
/// polynomials   J1^2 = [(a-b)(c-a)]^-1 (U - (b+c))(U - 2a)   etc.
/// Each result is a projector onto the span of two U-eigenspaces.
inline std::array<CMatrix, 3> reconstruct_j_squared(const CMatrix& u, double a, double b,
                                                    double c) {
  require_distinct(a, b, c);
  if (u.dim() != 3) throw DomainError("expected a 3x3 operator");
  CMatrix id = CMatrix::identity(3, u.tolerance());
  auto quad = [&](double s1, double s2, double denom) {
    return Complex(1.0 / denom, 0) * ((u - (Complex(s1, 0) * id)) * (u - (Complex(s2, 0) * id)));
  };
  CMatrix j1 = quad(b + c, 2 * a, (a - b) * (c - a));
  CMatrix j2 = quad(a + c, 2 * b, (a - b) * (b - c));
  CMatrix j3 = quad(a + b, 2 * c, (c - a) * (b - c));
  return {j1, j2, j3};
}

/// For every eigenvector of U, the eigenvalues of the three reconstructed
/// squares: each row must be a permutation of (1, 1, 0).
inline std::vector<std::array<double, 3>> exclusivity_table(const CMatrix& u, double a,
                                                            double b, double c) {
  auto js = reconstruct_j_squared(u, a, b, c);
  auto [vals, vecs] = u.eigensystem();
  std::vector<std::array<double, 3>> rows;
  for (int i = 0; i < u.dim(); ++i) {
    std::array<double, 3> row{};
    for (int k = 0; k < 3; ++k) {
      Complex v = 0;
      for (int r = 0; r < u.dim(); ++r)
        for (int c2 = 0; c2 < u.dim(); ++c2)
          v += std::conj(vecs.at(r, i)) * js[k].at(r, c2) * vecs.at(c2, i);
      row[k] = v.real();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace omlkit
