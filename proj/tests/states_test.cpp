#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "omlkit/states.hpp"
#include "oracles.hpp"

using omlkit::GreechieDiagram;
using omlkit::StateClassification;
using omlkit::TwoValuedState;

namespace {

void check_states_valid(const GreechieDiagram& d, const std::vector<TwoValuedState>& states) {
  for (const auto& s : states) {
    REQUIRE(s.bits.size() == d.atom_count());
    for (const auto& ctx : d.contexts()) {
      int ones = 0;
      for (int a : ctx) ones += s.bits[a];
      REQUIRE(ones == 1);
    }
  }
}

}  // namespace

TEST_CASE("single triad has three states") {
  GreechieDiagram d = GreechieDiagram::from_names({{"x", "y", "z"}});
  auto states = omlkit::enumerate_states(d);
  REQUIRE(states.size() == 3);
  check_states_valid(d, states);
  REQUIRE(omlkit::symmetric_seed(d, "x").size() == 1);
}

TEST_CASE("MO_2 diagram has four states, separating and unital") {
  GreechieDiagram d = GreechieDiagram::from_names({{"p-", "p+"}, {"q-", "q+"}});
  auto states = omlkit::enumerate_states(d);
  REQUIRE(states.size() == 4);
  check_states_valid(d, states);
  StateClassification c = omlkit::classify(d);
  REQUIRE(c.count == 4);
  REQUIRE(c.unital);
  REQUIRE(c.separating);
  REQUIRE(c.full);
  REQUIRE(omlkit::symmetric_seed(d, "p-").size() == 2);
  REQUIRE_THROWS_AS(omlkit::symmetric_seed(d, "nope"), omlkit::DomainError);
}

TEST_CASE("classification counts match enumeration") {
  std::vector<std::vector<std::vector<std::string>>> cases{
      {{"x", "y", "z"}},
      {{"p-", "p+"}, {"q-", "q+"}},
      {{"a1", "a2", "s"}, {"b1", "b2", "s"}},
      {{"a", "b", "c"}, {"c", "d", "e"}, {"e", "f", "g"}}};
  for (const auto& ctxs : cases) {
    GreechieDiagram d = GreechieDiagram::from_names(ctxs);
    REQUIRE(omlkit::classify(d).count == omlkit::enumerate_states(d).size());
  }
}

TEST_CASE("enumeration equals brute force on small diagrams") {
  std::vector<std::vector<std::vector<std::string>>> cases{
      {{"x", "y", "z"}},
      {{"p-", "p+"}, {"q-", "q+"}},
      {{"a1", "a2", "s"}, {"b1", "b2", "s"}},
      {{"a", "b", "c"}, {"c", "d", "e"}, {"e", "f", "a"}},   // loop of three triads
      {{"a", "b", "c"}, {"c", "d", "e"}, {"e", "f", "g"}, {"g", "h", "a"}},
      {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}}};     // 4-cycle of pairs
  for (const auto& ctxs : cases) {
    GreechieDiagram d = GreechieDiagram::from_names(ctxs);
    auto got = oracle::as_set(omlkit::enumerate_states(d));
    auto want = oracle::brute_force_states(d);
    REQUIRE(got.size() == want.size());
    for (const auto& bits : want) REQUIRE(got.count(bits) == 1);
  }
}

TEST_CASE("seeded enumeration is the filtered full enumeration") {
  GreechieDiagram d =
      GreechieDiagram::from_names({{"a", "b", "c"}, {"c", "d", "e"}, {"e", "f", "g"}});
  auto all = omlkit::enumerate_states(d);
  for (const auto& name : d.atoms()) {
    int idx = d.atom_index(name);
    std::size_t expect = 0;
    for (const auto& s : all) expect += s.bits[idx];
    auto seeded = omlkit::symmetric_seed(d, name);
    REQUIRE(seeded.size() == expect);
    for (const auto& s : seeded) REQUIRE(s.bits[idx] == 1);
  }
}

TEST_CASE("relabeling permutes states bijectively") {
  std::vector<std::vector<std::string>> base{{"a", "b", "c"}, {"c", "d", "e"}};
  GreechieDiagram d1 = GreechieDiagram::from_names(base);
  // swap labels a<->e, b<->d
  std::map<std::string, std::string> perm{
      {"a", "e"}, {"b", "d"}, {"c", "c"}, {"d", "b"}, {"e", "a"}};
  std::vector<std::vector<std::string>> renamed;
  for (const auto& ctx : base) {
    std::vector<std::string> c;
    for (const auto& n : ctx) c.push_back(perm.at(n));
    renamed.push_back(c);
  }
  GreechieDiagram d2 = GreechieDiagram::from_names(renamed);
  auto s1 = omlkit::enumerate_states(d1);
  auto s2 = omlkit::enumerate_states(d2);
  REQUIRE(s1.size() == s2.size());
  std::set<std::map<std::string, int>> m1, m2;
  for (const auto& s : s1) {
    std::map<std::string, int> m;
    for (std::size_t a = 0; a < d1.atom_count(); ++a)
      m[perm.at(d1.atom_name(static_cast<int>(a)))] = s.bits[a];
    m1.insert(m);
  }
  for (const auto& s : s2) {
    std::map<std::string, int> m;
    for (std::size_t a = 0; a < d2.atom_count(); ++a)
      m[d2.atom_name(static_cast<int>(a))] = s.bits[a];
    m2.insert(m);
  }
  REQUIRE(m1 == m2);
}

TEST_CASE("Boolean-times-lantern diagrams have separating state sets") {
  // two triads sharing one atom: the hypergraph of 2 x MO_2
  GreechieDiagram d = GreechieDiagram::from_names({{"a1", "a2", "s"}, {"b1", "b2", "s"}});
  StateClassification c = omlkit::classify(d);
  REQUIRE(c.separating);
  REQUIRE(c.unital);
  // three lantern blocks: the hypergraph of MO_3
  GreechieDiagram mo3 =
      GreechieDiagram::from_names({{"p-", "p+"}, {"q-", "q+"}, {"r-", "r+"}});
  REQUIRE(omlkit::classify(mo3).separating);
}

TEST_CASE("a diagram can admit no states at all") {
  // triangle of 2-atom contexts: a+b=1, b+c=1, c+a=1 has no 0/1 solution
  GreechieDiagram d = GreechieDiagram::from_names({{"a", "b"}, {"b", "c"}, {"c", "a"}});
  REQUIRE(omlkit::enumerate_states(d).empty());
  StateClassification c = omlkit::classify(d);
  REQUIRE(c.count == 0);
  REQUIRE(!c.unital);
  REQUIRE(!c.separating);
  REQUIRE(!c.full);
}
