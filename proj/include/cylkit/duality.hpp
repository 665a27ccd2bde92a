#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cylkit/core.hpp"
#include "cylkit/term.hpp"

// Finite atom structures, their full complex algebras, ultrafilter frames
// of finite BAOs (whose ultrafilters are exactly the principal filters of
// atoms), and the finite round trip Em(A) = Cm(Uf(A)).

namespace cylkit::duality {

using AtomPair = std::pair<int, int>;

// Frame <X, T_i, R_ij, P_ij, D_ij>. T indexed by i, R/P/D by (i,j)
// row-major. A missing entry means the corresponding operator is absent
// from the structure's similarity type.
struct AtomStructure {
  int atoms = 0;
  Dimension dim{1};
  std::vector<std::string> names;  // optional

  std::vector<std::optional<std::vector<AtomPair>>> T;
  std::vector<std::optional<std::vector<AtomPair>>> R;  // size alpha^2
  std::vector<std::optional<std::vector<AtomPair>>> P;  // size alpha^2
  std::vector<std::optional<std::vector<int>>> D;       // size alpha^2

  AtomStructure(int n, Dimension d);

  size_t rp_index(int i, int j) const {
    return static_cast<size_t>(i) * static_cast<size_t>(dim.alpha()) +
           static_cast<size_t>(j);
  }
  void set_T(int i, std::vector<AtomPair> pairs);
  void set_R(int i, int j, std::vector<AtomPair> pairs);
  void set_P(int i, int j, std::vector<AtomPair> pairs);
  void set_D(int i, int j, std::vector<int> atom_set);

  bool operator==(const AtomStructure& o) const;

  std::string to_json() const;
  static AtomStructure from_json(const std::string& text);
};

constexpr int kMaxAtoms = 63;

// Full complex algebra Cm(S): carrier = all atom-sets (bits over n),
// each relation realized as the completely additive operator
// T*(A) = { y : <x,y> in T for some x in A }.
class FiniteAlgebra {
 public:
  using Element = uint64_t;  // atom-set

  static FiniteAlgebra cm(const AtomStructure& s);

  // Build from explicit full operator tables (index = element bits).
  // Rejects tables that are not completely additive.
  static FiniteAlgebra from_tables(
      int atoms, Dimension dim,
      const std::vector<std::vector<Element>>& cyl_tables,
      const std::vector<std::optional<std::vector<Element>>>& subst_tables = {},
      const std::vector<std::optional<std::vector<Element>>>& perm_tables = {},
      const std::vector<std::optional<Element>>& diag_elems = {});

  int atoms() const { return structure_.atoms; }
  Dimension dim() const { return structure_.dim; }
  const AtomStructure& structure() const { return structure_; }

  Element zero() const { return 0; }
  Element one() const { return mask_; }
  Element sum(Element a, Element b) const { return a | b; }
  Element product(Element a, Element b) const { return a & b; }
  Element complement(Element a) const { return mask_ & ~a; }

  Element cyl(int i, Element a) const;
  Element cyl_set(const std::vector<int>& g, Element a) const;
  Element subst(int i, int j, Element a) const;
  Element perm(int i, int j, Element a) const;
  Element diag(int i, int j) const;
  Element subst_sigma(const Transformation&, Element) const {
    throw UnsupportedOperation(
        "finite algebras carry s_ij/p_ij tables, not general s_sigma");
  }

  bool has_subst(int i, int j) const;
  bool has_perm(int i, int j) const;
  bool has_diag(int i, int j) const;
  bool has_cyl(int i) const;

  uint64_t carrier_bits() const { return static_cast<uint64_t>(atoms()); }
  Element element_from_bits(uint64_t bits) const { return bits & mask_; }
  template <class Rng>
  Element random_element(Rng& rng) const {
    return rng() & mask_;
  }
  std::string element_to_string(Element e) const;
  std::string describe() const;

 private:
  FiniteAlgebra(AtomStructure s);
  Element apply_succ(const std::vector<Element>& succ, Element a) const;

  AtomStructure structure_;
  Element mask_;
  // succ[x] = image of atom x; one vector per present relation.
  std::vector<std::optional<std::vector<Element>>> t_succ_;
  std::vector<std::optional<std::vector<Element>>> r_succ_;
  std::vector<std::optional<std::vector<Element>>> p_succ_;
  std::vector<std::optional<Element>> d_elem_;
};

// Ultrafilter frame of a finite BAO: points are the atoms, and
// <a,b> in T_i iff b <= c_i(a) (finite form of { c_i x : x in p } <= q).
AtomStructure uf(const FiniteAlgebra& a);

struct RoundtripReport {
  bool isomorphic = false;
  std::string detail;  // failure witness when not isomorphic
};

// Builds Cm(Uf(A)) and checks the map x -> {atoms below x} is a bijective
// homomorphism for every operator A carries.
RoundtripReport em_roundtrip(const FiniteAlgebra& a);

// Sequence structure over X = ^alpha(U): s T_i z iff z = s(i/u) for some u;
// with cs/csp/cspd flavors also <s,z> in R_ij iff s = z o [i/j], <s,z> in
// P_ij iff s = z o [i,j], D_ij = { s : s(i) = s(j) }.
AtomStructure seq_structure(Dimension dim, const Base& base, SigTag flavor);

struct PositiveReport {
  bool holds_in_a = false;
  bool holds_in_em = false;
  bool consistent = false;  // holds_in_a implies holds_in_em
  std::string detail;
};

// Checks a positive equation in A and in Cm(Uf(A)); rejects non-positive
// input. In the finite case the two verdicts must coincide.
PositiveReport preserves_positive(const Equation& e, const FiniteAlgebra& a);

}  // namespace cylkit::duality
