#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "cylkit/duality.hpp"
#include "cylkit/parse.hpp"
#include "doctest.h"

using namespace cylkit;
using namespace cylkit::duality;

namespace {

AtomStructure random_structure(std::mt19937_64& rng, int max_atoms,
                               bool with_s) {
  const Dimension d3(3);
  const int n = 1 + static_cast<int>(rng() % max_atoms);
  AtomStructure s(n, d3);
  auto random_pairs = [&] {
    std::vector<AtomPair> pairs;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (rng() & 1) pairs.emplace_back(x, y);
    return pairs;
  };
  for (int i = 0; i < 3; ++i) s.set_T(i, random_pairs());
  if (with_s)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s.set_R(i, j, random_pairs());
  return s;
}

}  // namespace

TEST_CASE("complex algebra operators") {
  const Dimension d3(3);
  AtomStructure s(3, d3);
  SUBCASE("identity relation gives the identity operator") {
    s.set_T(0, {{0, 0}, {1, 1}, {2, 2}});
    const auto alg = FiniteAlgebra::cm(s);
    for (uint64_t x = 0; x < 8; ++x) CHECK(alg.cyl(0, x) == x);
  }
  SUBCASE("total relation maps nonempty to everything") {
    std::vector<AtomPair> total;
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) total.emplace_back(x, y);
    s.set_T(0, total);
    const auto alg = FiniteAlgebra::cm(s);
    CHECK(alg.cyl(0, 0) == 0);
    for (uint64_t x = 1; x < 8; ++x) CHECK(alg.cyl(0, x) == alg.one());
  }
  SUBCASE("missing operators raise") {
    const auto alg = FiniteAlgebra::cm(s);  // no relations at all
    CHECK_THROWS_AS(alg.cyl(0, 1), UnsupportedOperation);
    CHECK_THROWS_AS(alg.subst(0, 1, 1), UnsupportedOperation);
    CHECK_THROWS_AS(alg.diag(0, 1), UnsupportedOperation);
    Transformation sigma = Transformation::identity(d3);
    CHECK_THROWS_AS(alg.subst_sigma(sigma, 1), UnsupportedOperation);
  }
}

TEST_CASE("complete additivity of realized operators, exhaustive to 4 atoms") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const auto s = random_structure(rng, 4, true);
    const auto alg = FiniteAlgebra::cm(s);
    const uint64_t carrier = uint64_t(1) << alg.atoms();
    for (uint64_t a = 0; a < carrier; ++a)
      for (uint64_t b = 0; b < carrier; ++b) {
        CHECK(alg.cyl(0, a | b) == (alg.cyl(0, a) | alg.cyl(0, b)));
        CHECK(alg.subst(0, 1, a | b) ==
              (alg.subst(0, 1, a) | alg.subst(0, 1, b)));
      }
    CHECK(alg.cyl(0, 0) == 0);
  }
}

TEST_CASE("ultrafilter frame of a finite BAO") {
  const Dimension d3(3);
  SUBCASE("uf(cm(S)) = S on a 2-atom structure with identity T_0") {
    AtomStructure s(2, d3);
    s.set_T(0, {{0, 0}, {1, 1}});
    s.set_T(1, {{0, 1}});
    CHECK(uf(FiniteAlgebra::cm(s)) == s);
  }
  SUBCASE("the 4-element Boolean algebra has 2 ultrafilter points") {
    AtomStructure s(2, d3);
    const auto frame = uf(FiniteAlgebra::cm(s));
    CHECK(frame.atoms == 2);
  }
  SUBCASE("identity operator dualizes to the identity relation") {
    AtomStructure s(3, d3);
    s.set_T(2, {{0, 0}, {1, 1}, {2, 2}});
    const auto frame = uf(FiniteAlgebra::cm(s));
    REQUIRE(frame.T[2].has_value());
    CHECK(*frame.T[2] ==
          std::vector<AtomPair>{{0, 0}, {1, 1}, {2, 2}});
  }
  SUBCASE("uf inverts cm on random structures") {
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 40; ++trial) {
      const auto s = random_structure(rng, 4, trial % 2 == 0);
      CHECK(uf(FiniteAlgebra::cm(s)) == s);
    }
  }
}

TEST_CASE("em roundtrip") {
  std::mt19937_64 rng(91);
  SUBCASE("50 random structures with <= 4 atoms") {
    for (int trial = 0; trial < 50; ++trial) {
      const auto s = random_structure(rng, 4, trial % 3 == 0);
      const auto rep = em_roundtrip(FiniteAlgebra::cm(s));
      CHECK_MESSAGE(rep.isomorphic, rep.detail);
    }
  }
  SUBCASE("2-element algebra") {
    AtomStructure s(1, Dimension(3));
    s.set_T(0, {{0, 0}});
    CHECK(em_roundtrip(FiniteAlgebra::cm(s)).isomorphic);
  }
}

TEST_CASE("hand-built tables must be completely additive") {
  const Dimension d3(3);
  SUBCASE("an additive table is accepted and reproduces its relation") {
    // c_0 = closure under the relation {(0,1)}: atom a0 maps to {a1}.
    std::vector<std::vector<uint64_t>> tables(3);
    for (auto& t : tables) t.assign(4, 0);
    // f({a0}) = {a1}, f({a1}) = 0, additive extension
    tables[0] = {0, 2, 0, 2};
    tables[1] = {0, 0, 0, 0};
    tables[2] = {0, 0, 0, 0};
    const auto alg = FiniteAlgebra::from_tables(2, d3, tables);
    CHECK(alg.cyl(0, 1) == 2);
    CHECK(em_roundtrip(alg).isomorphic);
  }
  SUBCASE("a non-additive table is rejected before any roundtrip") {
    std::vector<std::vector<uint64_t>> tables(3);
    for (auto& t : tables) t.assign(4, 0);
    tables[0] = {0, 0, 0, 3};  // f(a0 | a1) != f(a0) | f(a1)
    CHECK_THROWS_AS(FiniteAlgebra::from_tables(2, d3, tables), InputError);
  }
  SUBCASE("f(0) != 0 is rejected") {
    std::vector<std::vector<uint64_t>> tables(3);
    for (auto& t : tables) t.assign(4, 1);
    CHECK_THROWS_AS(FiniteAlgebra::from_tables(2, d3, tables), InputError);
  }
}

TEST_CASE("sequence structures reproduce the set operators") {
  const Dimension d3(3);
  for (uint32_t usize : {1u, 2u}) {
    const Base base(usize);
    const SetAlgebra set_alg(d3, base);
    const auto alg = FiniteAlgebra::cm(seq_structure(d3, base, SigTag::Cspd));
    REQUIRE(alg.atoms() == static_cast<int>(set_alg.npoints()));
    const uint64_t carrier = uint64_t(1) << alg.atoms();
    // Atom k of the structure is point k of the space, so atom-sets and
    // relations share their bit layout.
    for (uint64_t m = 0; m < carrier; ++m) {
      const Relation r = set_alg.element_from_bits(m);
      for (int i = 0; i < 3; ++i) {
        CHECK(alg.cyl(i, m) == cyl(i, r).words()[0]);
        for (int j = 0; j < 3; ++j) {
          CHECK(alg.subst(i, j, m) == subst(i, j, r).words()[0]);
          CHECK(alg.perm(i, j, m) == perm(i, j, r).words()[0]);
        }
      }
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(alg.diag(i, j) == set_alg.diag(i, j).words()[0]);
  }
}

TEST_CASE("sequence structure shape") {
  const Dimension d3(3);
  const auto s = seq_structure(d3, Base(2), SigTag::C);
  CHECK(s.atoms == 8);  // |U|^alpha
  for (int i = 0; i < 3; ++i) {
    REQUIRE(s.T[i].has_value());
    for (int x = 0; x < 8; ++x)  // z = s(i/s(i)) = s: reflexive
      CHECK(std::binary_search(s.T[i]->begin(), s.T[i]->end(),
                               AtomPair{x, x}));
  }
  CHECK(!s.R[0].has_value());
}

TEST_CASE("structure JSON round trip") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_structure(rng, 4, trial % 2 == 0);
    CHECK(AtomStructure::from_json(s.to_json()) == s);
  }
  CHECK_THROWS_AS(AtomStructure::from_json("{ not json"), InputError);
  CHECK_THROWS_AS(AtomStructure::from_json("{\"atoms\":1}"), InputError);
}

TEST_CASE("positive equations survive the canonical embedding") {
  const Signature sig(SigTag::Any, Dimension(3));
  std::mt19937_64 rng(73);
  // x + c_0 x = c_0 x rendered positively
  const Equation pos = parse_equation("x0+c(0,x0)=c(0,x0)", sig, "F1");
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_structure(rng, 3, false);
    const auto rep = preserves_positive(pos, FiniteAlgebra::cm(s));
    CHECK(rep.consistent);
    CHECK(rep.holds_in_a == rep.holds_in_em);  // finite: isomorphic
  }
  const Equation zero = parse_equation("0=0", sig, "triv");
  AtomStructure s(2, Dimension(3));
  s.set_T(0, {{0, 1}});
  const auto rep = preserves_positive(zero, FiniteAlgebra::cm(s));
  CHECK(rep.holds_in_a);
  CHECK(rep.holds_in_em);

  const Equation neg = parse_equation("s(0,1,-x0)=-s(0,1,x0)", sig, "neg");
  CHECK_THROWS_AS(preserves_positive(neg, FiniteAlgebra::cm(s)), InputError);
}
