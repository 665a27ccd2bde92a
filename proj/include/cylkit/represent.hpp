#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cylkit/check.hpp"
#include "cylkit/core.hpp"

// Executable representation constructions at finite scale: recovery of
// diagonal elements from substitutions, the base blow-up embedding F, the
// dom-partition analysis, bijection rearrangement, and the splitting /
// rep machinery for permutation operators. Each stage verifies its own
// lemma-level claims and reports failures rather than repairing upstream.

namespace cylkit::represent {

template <class Alg>
struct DiagonalRecovery {
  std::vector<typename Alg::Element> d;  // row-major alpha^2, d_ii = 1
  bool s_of_d_is_one = true;  // s_ij(d*_ij) = 1 held for all i != j
  std::string diagnosis;      // set when not: input is outside SCA

  const typename Alg::Element& at(int i, int j, int alpha) const {
    return d[static_cast<size_t>(i) * static_cast<size_t>(alpha) +
             static_cast<size_t>(j)];
  }
};

// d*_ij = meet of { y : s_ij(y) = 1 } for i != j (finiteness supplies the
// meet), d*_ii = 1. Walks the whole carrier; guarded by carrier size.
template <class Alg>
DiagonalRecovery<Alg> recover_diagonals(const Alg& alg,
                                        uint64_t max_carrier_bits = 24) {
  const int alpha = alg.dim().alpha();
  const uint64_t bits = alg.carrier_bits();
  if (bits > max_carrier_bits)
    throw BudgetError("diagonal recovery enumerates the carrier; 2^" +
                      std::to_string(bits) + " elements is too many");
  const uint64_t carrier = uint64_t(1) << bits;
  DiagonalRecovery<Alg> out;
  out.d.assign(static_cast<size_t>(alpha) * static_cast<size_t>(alpha),
               alg.one());
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) {
      if (i == j) continue;
      auto meet = alg.one();
      for (uint64_t m = 0; m < carrier; ++m) {
        const auto y = alg.element_from_bits(m);
        if (alg.subst(i, j, y) == alg.one()) meet = alg.product(meet, y);
      }
      if (!(alg.subst(i, j, meet) == alg.one())) {
        out.s_of_d_is_one = false;
        out.diagnosis = "s_" + std::to_string(i) + std::to_string(j) +
                        "(d*) != 1: not an SCA model (run the SCA suite)";
      }
      out.d[static_cast<size_t>(i) * static_cast<size_t>(alpha) +
            static_cast<size_t>(j)] = meet;
    }
  return out;
}

// View of an algebra with the diagonal constants replaced by a supplied
// family; everything else forwards.
template <class Alg>
class WithDiagonals {
 public:
  using Element = typename Alg::Element;

  WithDiagonals(const Alg& base, std::vector<Element> d)
      : base_(base), d_(std::move(d)) {}

  Dimension dim() const { return base_.dim(); }
  Element zero() const { return base_.zero(); }
  Element one() const { return base_.one(); }
  Element sum(const Element& a, const Element& b) const { return base_.sum(a, b); }
  Element product(const Element& a, const Element& b) const {
    return base_.product(a, b);
  }
  Element complement(const Element& a) const { return base_.complement(a); }
  Element cyl(int i, const Element& a) const { return base_.cyl(i, a); }
  Element cyl_set(const std::vector<int>& g, const Element& a) const {
    return base_.cyl_set(g, a);
  }
  Element subst(int i, int j, const Element& a) const {
    return base_.subst(i, j, a);
  }
  Element perm(int i, int j, const Element& a) const {
    return base_.perm(i, j, a);
  }
  Element subst_sigma(const Transformation& s, const Element& a) const {
    return base_.subst_sigma(s, a);
  }
  Element diag(int i, int j) const {
    return d_[static_cast<size_t>(i) * static_cast<size_t>(dim().alpha()) +
              static_cast<size_t>(j)];
  }
  uint64_t carrier_bits() const { return base_.carrier_bits(); }
  Element element_from_bits(uint64_t bits) const {
    return base_.element_from_bits(bits);
  }
  template <class Rng>
  Element random_element(Rng& rng) const {
    return base_.random_element(rng);
  }
  std::string element_to_string(const Element& e) const {
    return base_.element_to_string(e);
  }
  std::string describe() const { return base_.describe() + "+d*"; }

 private:
  const Alg& base_;
  std::vector<Element> d_;
};

struct RdscReport {
  SuiteReport ca_report;              // CA suite over <A, c_i, d*_ij>
  bool s_equals_cd = true;            // s_ij(x) = c_i(d*_ij * x) for all x
  std::vector<std::string> failures;  // per failing instance

  bool all_passed() const { return ca_report.all_passed() && s_equals_cd; }
};

// Checks (i) the CA axioms over the recovered diagonals and (ii)
// s_ij(x) = c_i(d*_ij * x) across the carrier.
template <class Alg>
RdscReport verify_rdsc(const Alg& alg, const DiagonalRecovery<Alg>& rec) {
  const int alpha = alg.dim().alpha();
  WithDiagonals<Alg> view(alg, rec.d);
  CheckStrategy strat;
  strat.mode = CheckStrategy::Exhaustive;
  RdscReport rep{check_suite(view, suites::instantiate(suites::SuiteId::CA,
                                                       alg.dim()),
                             strat),
                 true,
                 {}};
  for (const auto& r : rep.ca_report.results)
    if (!r.verdict.passed())
      rep.failures.push_back("CA " + r.label + " " + r.verdict.detail);
  const uint64_t carrier = uint64_t(1) << alg.carrier_bits();
  for (int i = 0; i < alpha && rep.s_equals_cd; ++i)
    for (int j = 0; j < alpha && rep.s_equals_cd; ++j) {
      if (i == j) continue;
      for (uint64_t m = 0; m < carrier; ++m) {
        const auto x = alg.element_from_bits(m);
        const auto lhs = alg.subst(i, j, x);
        const auto rhs =
            alg.cyl(i, alg.product(rec.at(i, j, alpha), x));
        if (!(lhs == rhs)) {
          rep.s_equals_cd = false;
          rep.failures.push_back(
              "s_" + std::to_string(i) + std::to_string(j) +
              "(x) != c_i(d*x) at x=" + alg.element_to_string(x));
          break;
        }
      }
    }
  return rep;
}

// Small set algebras run the cylindric check on the packed kernel.
inline RdscReport verify_rdsc(const SetAlgebra& alg,
                              const DiagonalRecovery<SetAlgebra>& rec) {
  if (alg.npoints() <= PackedSetAlgebra::kMaxPoints) {
    const PackedSetAlgebra packed(alg);
    DiagonalRecovery<PackedSetAlgebra> prec;
    prec.s_of_d_is_one = rec.s_of_d_is_one;
    prec.diagnosis = rec.diagnosis;
    for (const auto& d : rec.d) prec.d.push_back(packed.pack(d));
    return verify_rdsc<PackedSetAlgebra>(packed, prec);
  }
  return verify_rdsc<SetAlgebra>(alg, rec);
}

// Base blow-up V = U x W; F(X) is the preimage of X under coordinatewise
// projection, so F({s}) = s-hat has |W|^alpha points and F preserves the
// Boolean and polyadic set operations.
class BlowupMap {
 public:
  BlowupMap(Dimension dim, Base u, uint32_t w_size);

  Dimension dim() const { return dim_; }
  const Base& base_u() const { return u_; }
  const Base& base_v() const { return v_; }
  uint32_t w_size() const { return w_; }

  uint32_t pack(uint32_t u, uint32_t w) const { return u * w_ + w; }
  uint32_t proj_u(uint32_t v) const { return v / w_; }
  uint32_t proj_w(uint32_t v) const { return v % w_; }

  Relation lift(const Relation& x) const;           // F
  Relation lift_point(const std::vector<uint32_t>& s) const;  // s-hat

 private:
  Dimension dim_;
  Base u_;
  uint32_t w_;
  Base v_;
  std::vector<uint64_t> proj_table_;  // V-point index -> U-point index
};

struct DomPartitionReport {
  // Indices into the supplied atom list, grouped by equal (dom_i, dom_j).
  std::vector<std::vector<size_t>> classes;
  bool dichotomy_ok = true;   // every pair equal-doms or disjoint-doms
  std::string witness;        // first violating pair when not
  bool dom_i_covers = false;  // dom_i(d) = V
  bool dom_j_covers = false;
};

DomPartitionReport analyze_dom_partition(const std::vector<Relation>& atoms,
                                         const Relation& d, int i, int j);

struct Bijection {
  std::vector<uint32_t> fwd;  // value -> image
  std::vector<uint32_t> inv;

  static Bijection identity(uint32_t n);
};

// One perfect matching per equal-dom class, inside the pairs realized by
// every member of the class; the union must be a bijection of V. Throws
// MatchingError("matching failed; increase W") when no matching exists.
Bijection build_f0i(const std::vector<Relation>& atoms_below_d, int i,
                    const DomPartitionReport& partition, uint32_t v_size);

// Coordinatewise rearrangement: f(s) = <f_0i^-1(s(i))>_i and
// G(X) = { x : f(x) in X }.
class Rearrangement {
 public:
  Rearrangement(Dimension dim, Base v, std::vector<Bijection> f);

  Relation apply(const Relation& x) const;  // G
  uint64_t map_point(uint64_t index) const;  // f as an index map

 private:
  Dimension dim_;
  Base v_;
  std::vector<Bijection> f_;  // f_[0] = identity
};

struct SIsSReport {
  bool ok = true;
  std::string witness;  // first mismatch
};

// Checks that the transported substitutions of the rearranged algebra are
// the set-theoretic ones: G(F(S_ij^U(x))) = S_ij^V(G(F(x))) for every
// element x of the carrier over U and all i, j.
SIsSReport verify_s_is_S(const SetAlgebra& alg_u, const BlowupMap& blow,
                         const Rearrangement& g);

// Partition of s-hat into alpha! parts indexed by PT_alpha (lexicographic),
// via the level sets of the coordinatewise group product; each part has
// the same cylindrifications as s-hat.
struct SplitFamily {
  Relation shat;
  std::vector<Relation> parts;               // by permutation index
  std::vector<std::vector<int>> group_table; // star, transported Z_(alpha!)
};

SplitFamily split_shat(const std::vector<uint32_t>& s, Dimension dim,
                       const Base& u);

// ---- Section-5 style pipeline -------------------------------------------

struct Sec5Result {
  bool diagonals_recovered = false;  // d* equals the set diagonals
  bool dom_covers = false;           // dom_0(d_0i') = dom_i(d_0i') = V
  bool dichotomy = false;
  bool matchings_found = false;
  bool g_commutes_with_cyl = false;  // sampled
  bool diag_below_dpp = false;       // D_ij^V subset of d_ij'' for all i,j
  bool s_is_S = false;               // s_ij'' = S_ij^V on the whole carrier
  std::vector<std::string> failures;
  std::string manifest_json;

  bool all_passed() const {
    return diagonals_recovered && dom_covers && dichotomy &&
           matchings_found && g_commutes_with_cyl && diag_below_dpp && s_is_S;
  }
};

Sec5Result run_sec5(Dimension dim, const Base& u, uint32_t w_size,
                    uint64_t seed);

// ---- Section-6 style pipeline -------------------------------------------

// Abstract permutation operator hook; the demo uses the set-theoretic one.
using PermOp = std::function<Relation(const Transformation&, const Relation&)>;

// Splitting/rep machinery over the full set algebra with singleton atoms:
// classifies atoms as repetition-free or not, picks lexicographically
// least block representatives, splits their lifted blocks, and rebuilds
// the representation of repetition-free atoms from the split parts.
// Stages are individually invocable; none repairs an upstream failure.
class SplitRepPipeline {
 public:
  SplitRepPipeline(Dimension dim, const Base& u, PermOp abstract_perm = {});

  Dimension dim() const { return dim_; }
  const SetAlgebra& algebra_u() const { return algU_; }
  const BlowupMap& blowup() const { return blow_; }
  const std::vector<Transformation>& permutations() const { return perms_; }

  bool is_repetition_free(uint64_t point) const;
  const std::vector<uint64_t>& repetition_free_atoms() const { return rfat_; }
  const std::vector<std::vector<uint32_t>>& block_representatives() const {
    return reps_;
  }
  const SplitFamily& split(size_t rep_index) const {
    return splits_.at(rep_index);
  }

  // rep(a) per the union-of-rearranged-parts formula; the atom must be
  // repetition-free.
  Relation rep_atom(uint64_t point) const;

  // F(a) if the atom lies below a diagonal, rep(a) otherwise.
  Relation final_g_atom(uint64_t point) const;

  // rep(p_tau a) = P_tau^V(rep a) across the repetition-free atoms.
  bool verify_rep_equivariance(const Transformation& tau,
                               std::string* why = nullptr) const;
  // C_i(rep a) = C_i(F a) for all i and repetition-free a.
  bool verify_cylinder_lemma(std::string* why = nullptr) const;

 private:
  Dimension dim_;
  SetAlgebra algU_;
  std::vector<Transformation> perms_;
  BlowupMap blow_;
  PermOp perm_op_;
  std::vector<bool> rep_free_;
  std::vector<uint64_t> rfat_;
  std::vector<std::vector<uint32_t>> reps_;
  std::map<uint64_t, std::pair<size_t, size_t>> block_of_;
  std::vector<SplitFamily> splits_;
};

struct Sec6Result {
  size_t rfat_count = 0;
  bool split_sizes_ok = false;       // alpha! parts of |W|^(alpha-1) points
  bool split_cyl_ok = false;         // C_i(s_sigma) = C_i(s-hat)
  bool rep_equivariant = false;      // rep(p_tau a) = P_tau(rep a), all tau
  bool rep_cyl_ok = false;           // C_i(rep a) = C_i(F a)
  bool g_disjoint = false;           // atom images pairwise disjoint
  bool g_homomorphic = false;        // for C_i, S_ij, P_ij on atoms
  bool fpa_on_image = false;         // FPA suite under image assignments
  std::vector<std::string> failures;
  std::string manifest_json;

  bool all_passed() const {
    return split_sizes_ok && split_cyl_ok && rep_equivariant && rep_cyl_ok &&
           g_disjoint && g_homomorphic && fpa_on_image;
  }
};

Sec6Result run_sec6(Dimension dim, const Base& u, uint64_t seed,
                    const PermOp& abstract_perm = {});

}  // namespace cylkit::represent
