#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "omlkit/born.hpp"

using omlkit::CMatrix;
using omlkit::Complex;

namespace {

CMatrix pure_state(const std::vector<Complex>& v) {
  double norm2 = 0;
  for (const Complex& x : v) norm2 += std::norm(x);
  CMatrix rho(static_cast<int>(v.size()));
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c)
      rho.at(static_cast<int>(r), static_cast<int>(c)) = v[r] * std::conj(v[c]) / norm2;
  return rho;
}

CMatrix random_density(std::mt19937& rng, int dim) {
  std::uniform_real_distribution<double> u(-1, 1);
  CMatrix g(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g.at(r, c) = Complex(u(rng), u(rng));
  CMatrix rho = g * g.adjoint();
  Complex tr = rho.trace();
  return Complex(1.0 / tr.real(), 0) * rho;
}

CMatrix random_hermitian(std::mt19937& rng, int dim) {
  std::uniform_real_distribution<double> u(-2, 2);
  CMatrix g(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g.at(r, c) = Complex(u(rng), u(rng));
  CMatrix h = g + g.adjoint();
  return Complex(0.5, 0) * h;
}

}  // namespace

TEST_CASE("born probability of a pure state against a ray projector") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Complex> x(3), y(3);
    double nx = 0, ny = 0;
    for (int i = 0; i < 3; ++i) {
      x[i] = Complex(u(rng), u(rng));
      y[i] = Complex(u(rng), u(rng));
      nx += std::norm(x[i]);
      ny += std::norm(y[i]);
    }
    nx = std::sqrt(nx);
    ny = std::sqrt(ny);
    for (int i = 0; i < 3; ++i) {
      x[i] /= nx;
      y[i] /= ny;
    }
    Complex inner = 0;
    for (int i = 0; i < 3; ++i) inner += std::conj(x[i]) * y[i];
    double p = omlkit::born_probability(pure_state(y), pure_state(x));
    REQUIRE(std::abs(p - std::norm(inner)) < 1e-9);
  }
}

TEST_CASE("identity projector has probability one") {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    CMatrix rho = random_density(rng, 3);
    REQUIRE(std::abs(omlkit::born_probability(rho, CMatrix::identity(3)) - 1.0) < 1e-9);
  }
}

TEST_CASE("probability is additive over orthogonal projectors") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    CMatrix rho = random_density(rng, 3);
    CMatrix h = random_hermitian(rng, 3);
    auto [vals, vecs] = h.eigensystem();
    // one projector per eigenvector; mutually orthogonal by construction
    std::vector<CMatrix> projectors;
    for (int i = 0; i < 3; ++i) {
      CMatrix p(3);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) p.at(r, c) = vecs.at(r, i) * std::conj(vecs.at(c, i));
      projectors.push_back(p);
    }
    double sum12 = omlkit::born_probability(rho, projectors[0]) +
                   omlkit::born_probability(rho, projectors[1]);
    double joint = omlkit::born_probability(rho, projectors[0] + projectors[1]);
    REQUIRE(std::abs(sum12 - joint) < 1e-8);
    double total = sum12 + omlkit::born_probability(rho, projectors[2]);
    REQUIRE(std::abs(total - 1.0) < 1e-8);
  }
}

TEST_CASE("born probability rejects bad inputs") {
  CMatrix not_proj(2);
  not_proj.at(0, 0) = 2.0;
  CMatrix rho = CMatrix::identity(2);
  rho = Complex(0.5, 0) * rho;
  REQUIRE_THROWS_AS(omlkit::born_probability(rho, not_proj), omlkit::DomainError);
  CMatrix not_density = CMatrix::identity(2);  // trace 2
  CMatrix proj(2);
  proj.at(0, 0) = 1.0;
  REQUIRE_THROWS_AS(omlkit::born_probability(not_density, proj), omlkit::DomainError);
  REQUIRE_THROWS_AS(omlkit::born_probability(rho, CMatrix::identity(3)),
                    omlkit::DomainError);
}

TEST_CASE("expectation agrees with the spectral resolution") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    CMatrix rho = random_density(rng, 3);
    CMatrix a = random_hermitian(rng, 3);
    double direct = omlkit::expectation(rho, a);  // internally cross-checked
    auto [vals, vecs] = a.eigensystem();
    double resum = 0;
    for (int i = 0; i < 3; ++i) {
      CMatrix p(3);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) p.at(r, c) = vecs.at(r, i) * std::conj(vecs.at(c, i));
      resum += vals[i] * omlkit::born_probability(rho, p);
    }
    REQUIRE(std::abs(direct - resum) < 1e-8);
  }
  REQUIRE(std::abs(omlkit::expectation(random_density(rng, 3), CMatrix::identity(3)) - 1.0) <
          1e-9);
}

TEST_CASE("the maximal operator takes its stated matrix form") {
  CMatrix u = omlkit::ur_operator(1, 2, 3);
  REQUIRE(std::abs(u.at(0, 0) - Complex(4.5, 0)) < 1e-12);
  REQUIRE(std::abs(u.at(0, 2) - Complex(-0.5, 0)) < 1e-12);
  REQUIRE(std::abs(u.at(1, 1) - Complex(3.0, 0)) < 1e-12);
  REQUIRE(std::abs(u.at(2, 0) - Complex(-0.5, 0)) < 1e-12);
  REQUIRE(std::abs(u.at(2, 2) - Complex(4.5, 0)) < 1e-12);
  REQUIRE(std::abs(u.at(0, 1)) < 1e-12);

  auto js = omlkit::j_squared();
  CMatrix combo = Complex(1, 0) * js[0] + Complex(2, 0) * js[1] + Complex(3, 0) * js[2];
  REQUIRE(combo.max_abs_diff(u) < 1e-12);

  auto ev = u.eigenvalues();
  REQUIRE(std::abs(ev[0] - 3) < 1e-9);
  REQUIRE(std::abs(ev[1] - 4) < 1e-9);
  REQUIRE(std::abs(ev[2] - 5) < 1e-9);

  REQUIRE_THROWS_AS(omlkit::ur_operator(1, 1, 3), omlkit::DomainError);
}

TEST_CASE("component squares sum to twice the identity") {
  auto js = omlkit::j_squared();
  CMatrix sum = js[0] + js[1] + js[2];
  REQUIRE(sum.max_abs_diff(Complex(2, 0) * CMatrix::identity(3)) < 1e-12);
  auto rjs = omlkit::rotated_j_squared();
  CMatrix rsum = rjs[0] + rjs[1] + rjs[2];
  REQUIRE(rsum.max_abs_diff(Complex(2, 0) * CMatrix::identity(3)) < 1e-12);
  // the z-axis square is shared between the two frames
  REQUIRE(rjs[2].max_abs_diff(js[2]) < 1e-12);
}

TEST_CASE("polynomial reconstruction recovers the component squares") {
  CMatrix u = omlkit::ur_operator(1, 2, 3);
  auto rec = omlkit::reconstruct_j_squared(u, 1, 2, 3);
  auto axis = omlkit::j_squared();
  for (int k = 0; k < 3; ++k) {
    REQUIRE(rec[k].max_abs_diff(axis[k]) < 1e-9);
    REQUIRE(rec[k].is_projector());
    REQUIRE((rec[k] * rec[k]).max_abs_diff(rec[k]) < 1e-9);
  }
  REQUIRE(rec[2].max_abs_diff(axis[2]) < 1e-9);  // diag(1,0,1)
  REQUIRE(std::abs(rec[2].at(0, 0) - Complex(1, 0)) < 1e-9);
  REQUIRE(std::abs(rec[2].at(1, 1)) < 1e-9);
  REQUIRE_THROWS_AS(omlkit::reconstruct_j_squared(u, 1, 1, 3), omlkit::DomainError);
}

TEST_CASE("expectation of U on its middle eigenprojector") {
  CMatrix rho(3);
  rho.at(1, 1) = 1.0;  // eigenprojector of U(1,2,3) for eigenvalue a+b
  CMatrix u = omlkit::ur_operator(1, 2, 3);
  REQUIRE(std::abs(omlkit::expectation(rho, u) - 3.0) < 1e-9);
}

TEST_CASE("rotated frame has the same spectrum") {
  CMatrix ubar = omlkit::rotated_ur(1, 2, 3);
  auto ev = ubar.eigenvalues();
  REQUIRE(std::abs(ev[0] - 3) < 1e-9);
  REQUIRE(std::abs(ev[1] - 4) < 1e-9);
  REQUIRE(std::abs(ev[2] - 5) < 1e-9);
  auto rjs = omlkit::rotated_j_squared();
  CMatrix combo = Complex(1, 0) * rjs[0] + Complex(2, 0) * rjs[1] + Complex(3, 0) * rjs[2];
  REQUIRE(combo.max_abs_diff(ubar) < 1e-12);
}

TEST_CASE("eigenvalue triples for random coefficient sets") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-10, 10);
  int done = 0;
  while (done < 100) {
    double a = u(rng), b = u(rng), c = u(rng);
    if (a == b || b == c || a == c) continue;
    ++done;
    std::vector<double> expect{a + b, b + c, a + c};
    std::sort(expect.begin(), expect.end());
    for (CMatrix m : {omlkit::ur_operator(a, b, c), omlkit::rotated_ur(a, b, c)}) {
      auto ev = m.eigenvalues();
      for (int i = 0; i < 3; ++i) REQUIRE(std::abs(ev[i] - expect[i]) < 1e-8);
    }
  }
}

TEST_CASE("two-of-three exclusivity on every eigenprojector") {
  std::mt19937 rng(10);
  std::uniform_real_distribution<double> u(-5, 5);
  int done = 0;
  while (done < 25) {
    double a = u(rng), b = u(rng), c = u(rng);
    if (std::abs(a - b) < 0.1 || std::abs(b - c) < 0.1 || std::abs(a - c) < 0.1) continue;
    ++done;
    CMatrix ur = omlkit::ur_operator(a, b, c);
    auto table = omlkit::exclusivity_table(ur, a, b, c);
    REQUIRE(table.size() == 3);
    for (const auto& row : table) {
      int ones = 0, zeros = 0;
      for (double v : row) {
        if (std::abs(v - 1) < 1e-7) ++ones;
        if (std::abs(v) < 1e-7) ++zeros;
      }
      REQUIRE(ones == 2);
      REQUIRE(zeros == 1);
    }
  }
}

TEST_CASE("matrix JSON round-trips") {
  CMatrix u = omlkit::rotated_ur(1, 2, 3);
  CMatrix back = CMatrix::from_json(u.to_json());
  REQUIRE(back.max_abs_diff(u) == 0.0);
  REQUIRE_THROWS_AS(CMatrix::from_json(nlohmann::json{{"dim", 2}}), omlkit::ParseError);
}
