#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <set>
#include <vector>

#include "cylkit/core.hpp"
#include "cylkit/packed.hpp"
#include "doctest.h"

using namespace cylkit;

namespace {

// Naive set-comprehension oracles, independent of the bitset kernels.
using NaivePoint = std::vector<uint32_t>;
using NaiveRel = std::set<NaivePoint>;

std::vector<NaivePoint> all_points(int alpha, uint32_t u) {
  std::vector<NaivePoint> out;
  NaivePoint s(static_cast<size_t>(alpha), 0);
  while (true) {
    out.push_back(s);
    int pos = 0;
    while (pos < alpha) {
      if (++s[static_cast<size_t>(pos)] < u) break;
      s[static_cast<size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == alpha) break;
  }
  return out;
}

NaiveRel naive_cyl(int i, const NaiveRel& r, int alpha, uint32_t u) {
  NaiveRel out;
  for (const auto& s : all_points(alpha, u))
    for (uint32_t v = 0; v < u; ++v) {
      NaivePoint t = s;
      t[static_cast<size_t>(i)] = v;
      if (r.count(t)) out.insert(s);
    }
  return out;
}

NaiveRel naive_sub(const std::vector<uint8_t>& sigma, const NaiveRel& r,
                   int alpha, uint32_t u) {
  NaiveRel out;
  for (const auto& s : all_points(alpha, u)) {
    NaivePoint t(static_cast<size_t>(alpha));
    for (int m = 0; m < alpha; ++m) t[static_cast<size_t>(m)] = s[sigma[static_cast<size_t>(m)]];
    if (r.count(t)) out.insert(s);
  }
  return out;
}

NaiveRel naive_diag(int i, int j, int alpha, uint32_t u) {
  NaiveRel out;
  for (const auto& s : all_points(alpha, u))
    if (s[static_cast<size_t>(i)] == s[static_cast<size_t>(j)]) out.insert(s);
  return out;
}

NaiveRel to_naive(const Relation& r) {
  NaiveRel out;
  for (const auto& p : r.points()) out.insert(p);
  return out;
}

}  // namespace

TEST_CASE("dimension guard") {
  CHECK_THROWS_AS(Dimension(0), DimensionError);
  CHECK_THROWS_AS(Dimension(9), DimensionError);
  CHECK(Dimension(1).below_paper_scope());
  CHECK(Dimension(2).below_paper_scope());
  CHECK(!Dimension(3).below_paper_scope());
}

TEST_CASE("replacement and transposition tables") {
  const Dimension d3(3);
  CHECK(Transformation::replacement(0, 1, d3).map() ==
        std::vector<uint8_t>{1, 1, 2});
  CHECK(Transformation::transposition(0, 2, d3).map() ==
        std::vector<uint8_t>{2, 1, 0});
  CHECK(Transformation::replacement(1, 1, d3) == Transformation::identity(d3));
  CHECK(Transformation::transposition(1, 1, d3) == Transformation::identity(d3));
  CHECK_THROWS_AS(Transformation::replacement(3, 0, d3), DimensionError);
  CHECK_THROWS_AS(Transformation::transposition(0, 3, d3), DimensionError);
}

TEST_CASE("compose and inverse") {
  const Dimension d3(3);
  const auto r01 = Transformation::replacement(0, 1, d3);
  CHECK(compose(r01, r01) == r01);
  const auto t02 = Transformation::transposition(0, 2, d3);
  CHECK(t02.inverse() == t02);

  // compose(sigma, tau)(k) = sigma(tau(k))
  const auto t01 = Transformation::transposition(0, 1, d3);
  CHECK(compose(t01, t02).map() == std::vector<uint8_t>{2, 0, 1});
  for (int k = 0; k < 3; ++k) CHECK(compose(t01, t02)(k) == t01(t02(k)));

  CHECK_THROWS_AS(r01.inverse(), NotInvertibleError);

  // s o (sigma o tau) = (s o sigma) o tau across all of T_3: with s read as
  // a transformation this is associativity of compose.
  const auto all = all_transformations(d3);
  for (const auto& s : all)
    for (const auto& sigma : all)
      for (const auto& tau : all)
        CHECK(compose(s, compose(sigma, tau)) == compose(compose(s, sigma), tau));
}

TEST_CASE("decompose recomposes every transformation of T_3 and T_4") {
  for (int alpha : {3, 4}) {
    const Dimension dim(alpha);
    for (const auto& sigma : all_transformations(dim)) {
      const auto gens = decompose(sigma);
      if (sigma.is_identity()) {
        CHECK(gens.empty());
        continue;
      }
      Transformation acc = gens.front();
      for (size_t k = 1; k < gens.size(); ++k) acc = compose(acc, gens[k]);
      CHECK(acc == sigma);
      for (const auto& g : gens) {
        if (sigma.is_permutation())
          CHECK(g.is_transposition());
        else
          CHECK(g.is_replacement());
      }
    }
  }
}

TEST_CASE("decompose examples") {
  const Dimension d3(3);
  CHECK(decompose(Transformation::identity(d3)).empty());

  const Transformation cyc(d3, {1, 2, 0});
  const auto gens = decompose(cyc);
  REQUIRE(gens.size() == 2);
  Transformation acc = compose(gens[0], gens[1]);
  CHECK(acc == cyc);

  const Transformation constant(d3, {0, 0, 0});
  const auto reps = decompose(constant);
  Transformation acc2 = reps.front();
  for (size_t k = 1; k < reps.size(); ++k) acc2 = compose(acc2, reps[k]);
  CHECK(acc2 == constant);
}

TEST_CASE("decompose is deterministic") {
  const Dimension d4(4);
  for (const auto& sigma : all_transformations(d4)) {
    const auto a = decompose(sigma);
    const auto b = decompose(sigma);
    CHECK(a == b);
  }
}

TEST_CASE("point encoding bijection") {
  for (auto [alpha, u] : std::vector<std::pair<int, uint32_t>>{
           {3, 2}, {3, 3}, {2, 4}, {1, 5}}) {
    const Dimension dim(alpha);
    const Base base(u);
    const uint64_t n = point_count(dim, base);
    for (uint64_t k = 0; k < n; ++k)
      CHECK(encode_point(decode_point(k, dim, base), base) == k);
  }
}

TEST_CASE("point limit guard") {
  CHECK_THROWS_AS(point_count(Dimension(8), Base(256)), BudgetError);
}

TEST_CASE("cyl") {
  const Dimension d3(3);
  const Base b2(2);
  const Relation r = Relation::singleton({0, 0, 0}, d3, b2);

  SUBCASE("frozen example and oracle") {
    const Relation expect =
        Relation::of_points({{0, 0, 0}, {1, 0, 0}}, d3, b2);
    CHECK(cyl(0, r) == expect);
    CHECK(to_naive(cyl(0, r)) == naive_cyl(0, to_naive(r), 3, 2));
  }
  SUBCASE("empty and full") {
    for (int i = 0; i < 3; ++i) {
      CHECK(cyl(i, Relation::empty(d3, b2)).is_empty());
      CHECK(cyl(i, Relation::full(d3, b2)).is_full());
    }
  }
  SUBCASE("oracle agreement on random relations") {
    std::mt19937_64 rng(7);
    SetAlgebra alg(d3, b2);
    for (int trial = 0; trial < 50; ++trial) {
      const Relation x = alg.random_element(rng);
      for (int i = 0; i < 3; ++i)
        CHECK(to_naive(cyl(i, x)) == naive_cyl(i, to_naive(x), 3, 2));
    }
  }
}

TEST_CASE("cyl_set") {
  const Dimension d3(3);
  const Base b2(2);
  std::mt19937_64 rng(11);
  SetAlgebra alg(d3, b2);
  for (int trial = 0; trial < 20; ++trial) {
    const Relation x = alg.random_element(rng);
    CHECK(cyl_set({1, 2}, x) == cyl(1, cyl(2, x)));
    CHECK(cyl_set({}, x) == x);
    if (!x.is_empty()) CHECK(cyl_set({0, 1, 2}, x).is_full());
  }
  CHECK_THROWS_AS(cyl_set({3}, alg.zero()), DimensionError);
}

TEST_CASE("sub_sigma") {
  const Dimension d3(3);
  const Base b2(2);
  SUBCASE("frozen substitution example") {
    const Relation r = Relation::singleton({1, 1, 0}, d3, b2);
    const Relation expect = Relation::of_points({{0, 1, 0}, {1, 1, 0}}, d3, b2);
    CHECK(subst(0, 1, r) == expect);
    CHECK(to_naive(subst(0, 1, r)) == naive_sub({1, 1, 2}, to_naive(r), 3, 2));
  }
  SUBCASE("identity") {
    std::mt19937_64 rng(3);
    SetAlgebra alg(d3, b2);
    const Relation x = alg.random_element(rng);
    CHECK(sub_sigma(Transformation::identity(d3), x) == x);
  }
  SUBCASE("frozen transposition example") {
    const Relation r = Relation::singleton({0, 1, 1}, d3, b2);
    CHECK(perm(0, 1, r) == Relation::singleton({1, 0, 1}, d3, b2));
  }
}

TEST_CASE("sub_sigma functoriality, exhaustive at alpha=3 |U|=2") {
  const Dimension d3(3);
  const Base b2(2);
  SetAlgebra alg(d3, b2);
  const auto all = all_transformations(d3);
  for (uint64_t m = 0; m < 256; ++m) {
    const Relation x = alg.element_from_bits(m);
    for (const auto& sigma : all)
      for (const auto& tau : all)
        CHECK(sub_sigma(compose(sigma, tau), x) ==
              sub_sigma(sigma, sub_sigma(tau, x)));
  }
}

TEST_CASE("perm_sigma equals sub_sigma on permutations") {
  const Dimension d3(3);
  const Base b2(2);
  SetAlgebra alg(d3, b2);
  for (uint64_t m = 0; m < 256; ++m) {
    const Relation x = alg.element_from_bits(m);
    for (const auto& sigma : all_permutations(d3))
      CHECK(perm_sigma(sigma, x) == sub_sigma(sigma, x));
  }
  CHECK_THROWS_AS(
      perm_sigma(Transformation::replacement(0, 1, d3), alg.zero()),
      NotInvertibleError);
}

TEST_CASE("perm_sigma round trip and diagonal fixpoint") {
  const Dimension d3(3);
  const Base b2(2);
  SetAlgebra alg(d3, b2);
  std::mt19937_64 rng(19);
  const auto t01 = Transformation::transposition(0, 1, d3);
  CHECK(perm_sigma(t01, alg.diag(0, 1)) == alg.diag(0, 1));
  for (int trial = 0; trial < 20; ++trial) {
    const Relation x = alg.random_element(rng);
    for (const auto& sigma : all_permutations(d3))
      CHECK(perm_sigma(sigma, perm_sigma(sigma.inverse(), x)) == x);
  }
}

TEST_CASE("diag") {
  const Dimension d3(3);
  const Base b2(2);
  const Relation expect = Relation::of_points(
      {{0, 0, 0}, {0, 0, 1}, {1, 1, 0}, {1, 1, 1}}, d3, b2);
  CHECK(diag(0, 1, d3, b2) == expect);
  CHECK(to_naive(diag(0, 1, d3, b2)) == naive_diag(0, 1, 3, 2));
  for (int i = 0; i < 3; ++i) CHECK(diag(i, i, d3, b2).is_full());
  CHECK(diag(0, 1, d3, b2) == diag(1, 0, d3, b2));
  CHECK_THROWS_AS(diag(0, 3, d3, b2), DimensionError);
}

TEST_CASE("dom_i") {
  const Dimension d3(3);
  const Base b2(2);
  CHECK(dom_i(0, Relation::singleton({0, 1, 1}, d3, b2)) ==
        std::vector<uint32_t>{0});
  CHECK(dom_i(1, Relation::empty(d3, b2)).empty());
  CHECK(dom_i(0, diag(0, 1, d3, b2)) == std::vector<uint32_t>{0, 1});
}

TEST_CASE("substitution via cylindrification and diagonal") {
  // S_ij(x) = C_i(x * D_ij) for i != j, the set-level s = c(d*x) identity.
  const Dimension d3(3);
  const Base b2(2);
  SetAlgebra alg(d3, b2);
  for (uint64_t m = 0; m < 256; ++m) {
    const Relation x = alg.element_from_bits(m);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        CHECK(subst(i, j, x) == cyl(i, x & diag(i, j, d3, b2)));
      }
  }
  CHECK(subst(0, 1, diag(0, 1, d3, b2)).is_full());
}

TEST_CASE("cyl laws") {
  const Dimension d3(3);
  const Base b2(2);
  SetAlgebra alg(d3, b2);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Relation x = alg.random_element(rng);
    const Relation y = alg.random_element(rng);
    for (int i = 0; i < 3; ++i) {
      CHECK(cyl(i, x | y) == (cyl(i, x) | cyl(i, y)));
      CHECK(x.subset_of(cyl(i, x)));
      CHECK(cyl(i, cyl(i, x)) == cyl(i, x));
      for (int j = 0; j < 3; ++j)
        CHECK(cyl(i, cyl(j, x)) == cyl(j, cyl(i, x)));
    }
  }
}

TEST_CASE("one-element base: diagonals full, cyl identity") {
  const Dimension d3(3);
  const Base b1(1);
  SetAlgebra alg(d3, b1);
  CHECK(alg.npoints() == 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(diag(i, j, d3, b1).is_full());
  for (uint64_t m = 0; m < 2; ++m) {
    const Relation x = alg.element_from_bits(m);
    for (int i = 0; i < 3; ++i) CHECK(cyl(i, x) == x);
  }
}

TEST_CASE("relation space mismatch is an error") {
  const Relation a = Relation::empty(Dimension(3), Base(2));
  const Relation b = Relation::empty(Dimension(3), Base(3));
  CHECK_THROWS_AS((void)(a | b), DimensionError);
}

TEST_CASE("packed kernel agrees with the relation kernel") {
  const Dimension d3(3);

  SUBCASE("exhaustive at |U|=2") {
    const SetAlgebra alg(d3, Base(2));
    const PackedSetAlgebra packed(alg);
    for (uint64_t m = 0; m < 256; ++m) {
      const Relation x = alg.element_from_bits(m);
      CHECK(packed.pack(x) == m);
      CHECK(packed.unpack(m) == x);
      for (int i = 0; i < 3; ++i) {
        CHECK(packed.unpack(packed.cyl(i, m)) == cyl(i, x));
        for (int j = 0; j < 3; ++j) {
          CHECK(packed.unpack(packed.subst(i, j, m)) == subst(i, j, x));
          CHECK(packed.unpack(packed.perm(i, j, m)) == perm(i, j, x));
        }
      }
      CHECK(packed.unpack(packed.complement(m)) == x.complement());
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(packed.unpack(packed.diag(i, j)) == alg.diag(i, j));
    CHECK(packed.unpack(packed.cyl_set({0, 2}, 5)) ==
          cyl_set({0, 2}, packed.unpack(5)));
  }
  SUBCASE("random elements and general sigma at |U|=3") {
    const SetAlgebra alg(d3, Base(3));
    const PackedSetAlgebra packed(alg);
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 40; ++trial) {
      const uint64_t m = packed.random_element(rng);
      const Relation x = packed.unpack(m);
      for (const auto& sigma : all_transformations(d3))
        CHECK(packed.unpack(packed.subst_sigma(sigma, m)) ==
              sub_sigma(sigma, x));
      for (int i = 0; i < 3; ++i)
        CHECK(packed.unpack(packed.cyl(i, m)) == cyl(i, x));
    }
  }
  SUBCASE("oversized spaces are rejected") {
    const SetAlgebra big(d3, Base(4));  // 64 points > 63
    CHECK_THROWS_AS(PackedSetAlgebra{big}, BudgetError);
  }
}

TEST_CASE("random elements stay inside the space") {
  SetAlgebra alg(Dimension(3), Base(3));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Relation x = alg.random_element(rng);
    CHECK(x.count() <= alg.npoints());
    CHECK((x | x.complement()).is_full());
    CHECK((x & x.complement()).is_empty());
  }
}
