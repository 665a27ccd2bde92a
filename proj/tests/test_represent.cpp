#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "cylkit/duality.hpp"
#include "cylkit/represent.hpp"
#include "doctest.h"

using namespace cylkit;
using namespace cylkit::represent;

TEST_CASE("diagonal recovery on full set algebras returns the set diagonals") {
  for (uint32_t usize : {1u, 2u}) {
    const SetAlgebra alg(Dimension(3), Base(usize));
    const auto rec = recover_diagonals(alg);
    CHECK(rec.s_of_d_is_one);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j)
          CHECK(rec.at(i, j, 3).is_full());
        else
          CHECK(rec.at(i, j, 3) == alg.diag(i, j));
      }
  }
}

TEST_CASE("identity substitutions recover a degenerate diagonal and fail the "
          "cylindric check") {
  // 2 atoms, c_i the total-closure operator, s_ij the identity.
  const Dimension d3(3);
  duality::AtomStructure s(2, d3);
  std::vector<duality::AtomPair> total{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  std::vector<duality::AtomPair> ident{{0, 0}, {1, 1}};
  for (int i = 0; i < 3; ++i) s.set_T(i, total);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s.set_R(i, j, ident);
  const auto alg = duality::FiniteAlgebra::cm(s);

  const auto rec = recover_diagonals(alg);
  CHECK(rec.s_of_d_is_one);  // meet over {y : y = 1} is 1, and s(1) = 1
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(rec.at(i, j, 3) == alg.one());

  const auto rep = verify_rdsc(alg, rec);
  CHECK(!rep.all_passed());  // (C7) or s = c(d*x) must break
}

TEST_CASE("verify_rdsc passes on the trivial-base full algebra") {
  const SetAlgebra alg(Dimension(3), Base(1));
  const auto rep = verify_rdsc(alg, recover_diagonals(alg));
  CHECK(rep.all_passed());
}

TEST_CASE("every small SCA model found by search passes verify_rdsc") {
  const Dimension d3(3);
  CheckStrategy strat;
  const auto sca = suites::instantiate(suites::SuiteId::SCA, d3);
  size_t passing = 0;

  auto consider = [&](const duality::FiniteAlgebra& alg) {
    const auto report = check_suite(alg, sca, strat);
    if (!report.all_passed()) return;
    ++passing;
    const auto rec = recover_diagonals(alg);
    REQUIRE(rec.s_of_d_is_one);
    const auto rdsc = verify_rdsc(alg, rec);
    const std::string why =
        rdsc.failures.empty() ? std::string("?") : rdsc.failures.front();
    REQUIRE_MESSAGE(rdsc.all_passed(), why);
  };

  SUBCASE("exhaustive uniform slice at 1..2 atoms") {
    for (int n = 1; n <= 2; ++n) {
      const uint64_t rels = uint64_t(1) << (n * n);
      for (uint64_t t_mask = 0; t_mask < rels; ++t_mask) {
        std::vector<duality::AtomPair> t_pairs;
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            if ((t_mask >> (x * n + y)) & 1) t_pairs.emplace_back(x, y);
        // substitutions as preimage maps of h: X -> X keeps them
        // endomorphisms; h ranges over all n^n functions
        uint64_t h_count = 1;
        for (int k = 0; k < n; ++k) h_count *= static_cast<uint64_t>(n);
        for (uint64_t h_code = 0; h_code < h_count; ++h_code) {
          std::vector<int> h(static_cast<size_t>(n));
          uint64_t rest = h_code;
          for (int k = 0; k < n; ++k) {
            h[static_cast<size_t>(k)] = static_cast<int>(rest % n);
            rest /= static_cast<uint64_t>(n);
          }
          duality::AtomStructure s(n, d3);
          for (int i = 0; i < 3; ++i) s.set_T(i, t_pairs);
          std::vector<duality::AtomPair> conv, ident;
          for (int y = 0; y < n; ++y) {
            conv.emplace_back(h[static_cast<size_t>(y)], y);
            ident.emplace_back(y, y);
          }
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s.set_R(i, j, i == j ? ident : conv);
          consider(duality::FiniteAlgebra::cm(s));
        }
      }
    }
    CHECK(passing >= 1);  // at least the discrete one (c = s = identity)
  }

  SUBCASE("seeded random structures at 3 atoms") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 3;
      duality::AtomStructure s(n, d3);
      std::vector<duality::AtomPair> t_pairs;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (rng() & 1) t_pairs.emplace_back(x, y);
      for (int i = 0; i < 3; ++i) s.set_T(i, t_pairs);
      std::vector<duality::AtomPair> conv, ident;
      for (int y = 0; y < n; ++y) {
        conv.emplace_back(static_cast<int>(rng() % n), y);
        ident.emplace_back(y, y);
      }
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s.set_R(i, j, i == j ? ident : conv);
      consider(duality::FiniteAlgebra::cm(s));
    }
  }
}

TEST_CASE("blow-up embedding") {
  const Dimension d3(3);
  const Base u2(2);
  const BlowupMap blow(d3, u2, 2);
  const SetAlgebra algU(d3, u2);

  SUBCASE("a lifted point has |W|^alpha copies") {
    CHECK(blow.lift_point({0, 1, 1}).count() == 8);
    CHECK(blow.lift(algU.zero()).is_empty());
    CHECK(blow.lift(algU.one()).is_full());
  }
  SUBCASE("homomorphism for Boolean and polyadic operators, 200 elements") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 200; ++trial) {
      const Relation x = algU.random_element(rng);
      const Relation y = algU.random_element(rng);
      CHECK(blow.lift(x | y) == (blow.lift(x) | blow.lift(y)));
      CHECK(blow.lift(x.complement()) == blow.lift(x).complement());
      for (int i = 0; i < 3; ++i)
        CHECK(blow.lift(cyl(i, x)) == cyl(i, blow.lift(x)));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          CHECK(blow.lift(subst(i, j, x)) == subst(i, j, blow.lift(x)));
          CHECK(blow.lift(perm(i, j, x)) == perm(i, j, blow.lift(x)));
        }
    }
  }
}

TEST_CASE("dom partition analysis") {
  const Dimension d3(3);
  const Base u2(2);
  const SetAlgebra alg(d3, u2);
  const Relation d01 = alg.diag(0, 1);

  SUBCASE("singleton atoms below the diagonal") {
    std::vector<Relation> atoms;
    for (uint64_t k = 0; k < alg.npoints(); ++k)
      if (d01.test(k))
        atoms.push_back(
            Relation::singleton(decode_point(k, d3, u2), d3, u2));
    const auto rep = analyze_dom_partition(atoms, d01, 0, 1);
    CHECK(rep.dichotomy_ok);
    CHECK(rep.dom_i_covers);
    CHECK(rep.dom_j_covers);
    CHECK(rep.classes.size() == 2);  // one class per base value
  }
  SUBCASE("single atom is trivially classified") {
    const Relation a = Relation::singleton({0, 0, 0}, d3, u2);
    const auto rep = analyze_dom_partition({a}, d01, 0, 1);
    CHECK(rep.dichotomy_ok);
    CHECK(rep.classes.size() == 1);
  }
  SUBCASE("atoms must sit below the diagonal element") {
    const Relation stray = Relation::singleton({0, 1, 0}, d3, u2);
    CHECK_THROWS_AS(analyze_dom_partition({stray}, d01, 0, 1), InputError);
  }
}

TEST_CASE("build_f0i") {
  const Dimension d3(3);
  const Base u2(2);
  const SetAlgebra alg(d3, u2);
  const Relation d01 = alg.diag(0, 1);

  SUBCASE("diagonal atoms admit the identity pairing") {
    std::vector<Relation> atoms;
    for (uint64_t k = 0; k < alg.npoints(); ++k)
      if (d01.test(k))
        atoms.push_back(Relation::singleton(decode_point(k, d3, u2), d3, u2));
    const auto part = analyze_dom_partition(atoms, d01, 0, 1);
    const auto f = build_f0i(atoms, 1, part, u2.size);
    for (uint32_t v = 0; v < u2.size; ++v) CHECK(f.fwd[v] == v);
  }
  SUBCASE("empty atom list is a precondition error") {
    const auto part = DomPartitionReport{};
    CHECK_THROWS_AS(build_f0i({}, 1, part, u2.size), InputError);
  }
  SUBCASE("a Hall violation fails with the retry hint") {
    // pairs (s0,s1) = {(0,0),(1,0),(2,0),(0,1),(0,2)}: doms cover {0,1,2}
    // but {1,2} on the left only reach 0.
    const Base u3(3);
    const Relation a = Relation::of_points(
        {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {0, 2, 0}}, d3, u3);
    const Relation d = Relation::full(d3, u3);
    const auto part = analyze_dom_partition({a}, d, 0, 1);
    try {
      build_f0i({a}, 1, part, u3.size);
      FAIL("expected MatchingError");
    } catch (const MatchingError& e) {
      CHECK(std::string(e.what()).find("increase W") != std::string::npos);
    }
  }
}

TEST_CASE("rearrangement") {
  const Dimension d3(3);
  const Base v4(4);
  SUBCASE("identity family gives the identity map") {
    std::vector<Bijection> f(3, Bijection::identity(v4.size));
    const Rearrangement g(d3, v4, f);
    const SetAlgebra alg(d3, v4);
    std::mt19937_64 rng(8);
    const Relation x = alg.random_element(rng);
    CHECK(g.apply(x) == x);
  }
  SUBCASE("G commutes with every cylindrification") {
    std::vector<Bijection> f(3, Bijection::identity(v4.size));
    // a nontrivial bijection on coordinates 1 and 2
    std::swap(f[1].fwd[0], f[1].fwd[3]);
    std::swap(f[1].inv[0], f[1].inv[3]);
    f[2].fwd = {1, 2, 3, 0};
    f[2].inv = {3, 0, 1, 2};
    const Rearrangement g(d3, v4, f);
    const SetAlgebra alg(d3, v4);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
      const Relation x = alg.random_element(rng);
      for (int i = 0; i < 3; ++i)
        CHECK(g.apply(cyl(i, x)) == cyl(i, g.apply(x)));
      CHECK(g.apply(x.complement()) == g.apply(x).complement());
    }
  }
  SUBCASE("f_00 must be the identity") {
    std::vector<Bijection> f(3, Bijection::identity(v4.size));
    f[0].fwd = {1, 0, 2, 3};
    f[0].inv = {1, 0, 2, 3};
    CHECK_THROWS_AS(Rearrangement(d3, v4, f), InputError);
  }
}

TEST_CASE("splitting s-hat over W = PT_3") {
  const Dimension d3(3);
  const Base u2(2);
  for (const std::vector<uint32_t>& s :
       std::vector<std::vector<uint32_t>>{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}}) {
    const auto fam = split_shat(s, d3, u2);
    CHECK(fam.shat.count() == 216);  // |W|^alpha = 6^3
    REQUIRE(fam.parts.size() == 6);
    Relation un(d3, fam.shat.base());
    for (const auto& part : fam.parts) {
      CHECK(part.count() == 36);  // |W|^(alpha-1)
      CHECK((un & part).is_empty());
      un = un | part;
      for (int i = 0; i < 3; ++i) CHECK(cyl(i, part) == cyl(i, fam.shat));
    }
    CHECK(un == fam.shat);
  }
  // the transported group is commutative
  const auto fam = split_shat({0, 0, 0}, d3, u2);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      CHECK(fam.group_table[a][b] == fam.group_table[b][a]);
}

TEST_CASE("section-5 pipeline demo") {
  const auto res = run_sec5(Dimension(3), Base(2), 3, 7);
  for (const auto& f : res.failures) MESSAGE(f);
  CHECK(res.all_passed());
  CHECK(res.manifest_json.find("\"s_is_S\": true") != std::string::npos);
  // byte-identical manifests under a fixed seed
  CHECK(run_sec5(Dimension(3), Base(2), 3, 7).manifest_json ==
        res.manifest_json);
}

TEST_CASE("section-6 pipeline demo at |U|=2") {
  const auto res = run_sec6(Dimension(3), Base(2), 11);
  for (const auto& f : res.failures) MESSAGE(f);
  CHECK(res.all_passed());
  // every length-3 sequence over two values repeats a coordinate
  CHECK(res.rfat_count == 0);
  CHECK(res.manifest_json.find("no repetition-free atoms") !=
        std::string::npos);
}

TEST_CASE("split/rep stages at |U|=3") {
  const Dimension d3(3);
  const Base u3(3);
  const SplitRepPipeline pipe(d3, u3);

  SUBCASE("classification and blocks") {
    // exactly the six injective sequences are repetition-free, forming
    // one block with the lexicographically least representative
    CHECK(pipe.repetition_free_atoms().size() == 6);
    REQUIRE(pipe.block_representatives().size() == 1);
    CHECK(pipe.block_representatives()[0] ==
          std::vector<uint32_t>{0, 1, 2});
    CHECK(!pipe.is_repetition_free(
        encode_point({0, 0, 1}, u3)));
  }
  SUBCASE("rep of a diagonal-bound atom is a classification error") {
    CHECK_THROWS_AS(pipe.rep_atom(encode_point({0, 0, 1}, u3)), InputError);
  }
  SUBCASE("with the real permutation operator, rep rebuilds the lift") {
    // the union over delta of the rearranged parts reassembles F(a)
    for (uint64_t k : pipe.repetition_free_atoms())
      CHECK(pipe.rep_atom(k) ==
            pipe.blowup().lift_point(decode_point(k, d3, u3)));
  }
  SUBCASE("equivariance for every permutation") {
    std::string why;
    for (const auto& tau : pipe.permutations())
      CHECK_MESSAGE(pipe.verify_rep_equivariance(tau, &why), why);
  }
  SUBCASE("cylinder lemma") {
    std::string why;
    CHECK_MESSAGE(pipe.verify_cylinder_lemma(&why), why);
  }
  SUBCASE("final G picks F below diagonals and rep elsewhere") {
    const uint64_t bound = encode_point({1, 1, 0}, u3);
    CHECK(pipe.final_g_atom(bound) ==
          pipe.blowup().lift_point({1, 1, 0}));
    const uint64_t free_atom = pipe.repetition_free_atoms().front();
    CHECK(pipe.final_g_atom(free_atom) == pipe.rep_atom(free_atom));
  }
}
