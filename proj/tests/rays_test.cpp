#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "omlkit/peres.hpp"
#include "omlkit/states.hpp"
#include "oracles.hpp"

using omlkit::Ray;
using omlkit::Scalar;

TEST_CASE("the 33-ray configuration") {
  auto rays = omlkit::peres_rays();
  REQUIRE(rays.size() == 33);
  std::set<Ray> s(rays.begin(), rays.end());
  REQUIRE(s.count(Ray(Scalar(1), Scalar(-1), Scalar::sqrt2())) == 1);
  // closed under coordinate permutation and axis reversal
  for (const Ray& r : rays) {
    REQUIRE(s.count(Ray(r[1], r[0], r[2])) == 1);
    REQUIRE(s.count(Ray(r[2], r[1], r[0])) == 1);
    REQUIRE(s.count(Ray(-r[0], r[1], r[2])) == 1);
    REQUIRE(s.count(Ray(r[0], -r[1], r[2])) == 1);
    REQUIRE(s.count(Ray(r[0], r[1], -r[2])) == 1);
  }
}

TEST_CASE("the generation script reproduces the configuration") {
  REQUIRE(omlkit::eval_nor_expression("(a+b)") == Ray(Scalar(0), Scalar(0), Scalar(1)));
  REQUIRE(omlkit::eval_nor_expression("(a+(a+b))") == Ray(Scalar(0), Scalar(1), Scalar(0)));
  REQUIRE(omlkit::eval_nor_expression("(a+c)") == Ray(Scalar(0), Scalar(1), Scalar(-1)));
  auto replayed = omlkit::replay_derivation();
  auto direct = omlkit::peres_rays();
  REQUIRE(replayed == direct);
  REQUIRE_THROWS_AS(omlkit::eval_nor_expression("(a+a)"), omlkit::DomainError);
}

TEST_CASE("orthogeneration closure reaches 57 rays") {
  auto closed = omlkit::ortho_closure(omlkit::peres_rays());
  REQUIRE(closed.size() == 57);

  // idempotent
  REQUIRE(omlkit::ortho_closure(closed) == closed);

  // the added rays all belong to the (1, sqrt2, 3) permutation family
  auto base_rays = omlkit::peres_rays();
  std::set<Ray> base(base_rays.begin(), base_rays.end());
  std::vector<Ray> added;
  for (const Ray& r : closed)
    if (!base.count(r)) added.push_back(r);
  REQUIRE(added.size() == 24);
  for (const Ray& r : added) REQUIRE(r.family() == "1,r2,3");

  auto fam = omlkit::family_histogram(added);
  REQUIRE(fam.size() == 1);
  REQUIRE(fam.at("1,r2,3") == 24);
}

TEST_CASE("the 17-ray generating set closes to the same configuration") {
  auto gens = omlkit::seventeen_generators();
  REQUIRE(gens.size() == 17);
  auto closed = omlkit::ortho_closure(gens);
  REQUIRE(closed == omlkit::ortho_closure(omlkit::peres_rays()));
}

TEST_CASE("small closures") {
  std::vector<Ray> basis{Ray(Scalar(1), Scalar(0), Scalar(0)),
                         Ray(Scalar(0), Scalar(1), Scalar(0))};
  auto closed = omlkit::ortho_closure(basis);
  REQUIRE(closed.size() == 3);
  REQUIRE(std::set<Ray>(closed.begin(), closed.end())
              .count(Ray(Scalar(0), Scalar(0), Scalar(1))) == 1);
}

TEST_CASE("closure cap rejects runaway generation") {
  auto rays = omlkit::peres_rays();
  REQUIRE_THROWS_AS(omlkit::ortho_closure(rays, 5), omlkit::DomainError);
}

TEST_CASE("context extraction on the closed configuration") {
  auto closed = omlkit::ortho_closure(omlkit::peres_rays());
  omlkit::GreechieDiagram d = omlkit::ray_contexts(closed);
  REQUIRE(d.atom_count() == 57);
  auto hist = omlkit::context_size_histogram(d);
  REQUIRE(hist.size() == 1);
  REQUIRE(hist.at(3) == 40);

  // independent maximal-clique oracle agrees
  auto want = oracle::clique_contexts(closed);
  REQUIRE(want.size() == d.context_count());
  std::set<std::vector<std::string>> got;
  for (const auto& ctx : d.contexts()) {
    std::vector<std::string> names;
    for (int a : ctx) names.push_back(d.atom_name(a));
    std::sort(names.begin(), names.end());
    got.insert(names);
  }
  REQUIRE(got == want);

  // and the whole configuration admits no two-valued state
  REQUIRE(omlkit::enumerate_states(d).empty());
}

TEST_CASE("context extraction on the standard basis") {
  std::vector<Ray> basis{Ray(Scalar(1), Scalar(0), Scalar(0)),
                         Ray(Scalar(0), Scalar(1), Scalar(0)),
                         Ray(Scalar(0), Scalar(0), Scalar(1))};
  omlkit::GreechieDiagram d = omlkit::ray_contexts(basis);
  REQUIRE(d.atom_count() == 3);
  REQUIRE(d.context_count() == 1);
  REQUIRE(d.contexts()[0].size() == 3);
}

TEST_CASE("an orthogonal pair without its completion forms a 2-context") {
  std::vector<Ray> pair{Ray(Scalar(1), Scalar(0), Scalar(0)),
                        Ray(Scalar(0), Scalar(1), Scalar(0))};
  omlkit::GreechieDiagram d = omlkit::ray_contexts(pair);
  REQUIRE(d.context_count() == 1);
  REQUIRE(d.contexts()[0].size() == 2);
}

TEST_CASE("context extraction reports isolated rays") {
  std::vector<Ray> bad{Ray(Scalar(1), Scalar(0), Scalar(0)),
                       Ray(Scalar(1), Scalar(1), Scalar(1))};
  REQUIRE_THROWS_AS(omlkit::ray_contexts(bad), omlkit::DomainError);
}

TEST_CASE("orthoposet element counts") {
  std::vector<Ray> basis{Ray(Scalar(1), Scalar(0), Scalar(0)),
                         Ray(Scalar(0), Scalar(1), Scalar(0)),
                         Ray(Scalar(0), Scalar(0), Scalar(1))};
  REQUIRE(omlkit::orthoposet_element_count(basis) == 8);
  auto closed = omlkit::ortho_closure(omlkit::peres_rays());
  REQUIRE(omlkit::orthoposet_element_count(closed) == 116);
  REQUIRE_THROWS_AS(omlkit::orthoposet_element_count(omlkit::peres_rays()),
                    omlkit::DomainError);  // 33 rays are not closed
}

TEST_CASE("seeding the first axis still leaves no state") {
  auto closed = omlkit::ortho_closure(omlkit::peres_rays());
  omlkit::GreechieDiagram d = omlkit::ray_contexts(closed);
  std::string axis = Ray(Scalar(1), Scalar(0), Scalar(0)).name();
  REQUIRE(omlkit::symmetric_seed(d, axis).empty());
  omlkit::StateClassification c = omlkit::classify(d);
  REQUIRE(c.count == 0);
  REQUIRE(!c.unital);
  REQUIRE(!c.separating);
  REQUIRE(!c.full);
}

TEST_CASE("product frame checks in R^4 and R^6") {
  auto r4 = omlkit::r4_product_check();
  REQUIRE(r4.ok());
  REQUIRE(r4.frames_orthogonal);
  REQUIRE(omlkit::is_orthogonal(r4.vectors.at("a"), r4.vectors.at("a'")));
  REQUIRE(omlkit::is_orthogonal(r4.vectors.at("b"), r4.vectors.at("b'")));
  REQUIRE(!omlkit::is_orthogonal(r4.vectors.at("a"), r4.vectors.at("b")));
  REQUIRE(dot(r4.vectors.at("a"), r4.vectors.at("b")) == Scalar(1));
  auto r6 = omlkit::r6_product_check();
  REQUIRE(r6.ok());
  REQUIRE(r6.factors.size() == 3);
}

TEST_CASE("dimension-counting embeddability rule") {
  REQUIRE(!omlkit::embeddable(0, {2, 2}, 5));  // odd dimension needs a Boolean factor
  REQUIRE(omlkit::embeddable(0, {2, 2}, 4));
  REQUIRE(omlkit::embeddable(1, {7}, 3));
  REQUIRE(!omlkit::embeddable(2, {2}, 3));     // 2 + 2*1 > 3
  REQUIRE(omlkit::embeddable(1, {}, 1));
  REQUIRE(omlkit::embeddable(0, {2}, 2));
  REQUIRE_THROWS_AS(omlkit::embeddable(0, {1}, 4), omlkit::DomainError);
}
