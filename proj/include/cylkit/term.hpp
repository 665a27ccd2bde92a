#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cylkit/core.hpp"

// Term and equation ASTs over the similarity types c / cs / csp / cspd / pa,
// plus the purely syntactic operations: printing, positivity, reduct checks
// and expansion of s_sigma / c_(Gamma) into the finitary operations.

namespace cylkit {

// Any admits every node kind; it is CLI plumbing, not one of the paper's
// similarity types.
enum class SigTag { C, Cs, Csp, Cspd, Pa, Any };

std::string to_string(SigTag tag);
std::optional<SigTag> sig_tag_from_string(const std::string& s);

enum class TermKind {
  Var,
  Zero,
  One,
  Sum,
  Product,
  Complement,
  Cyl,         // c(i, t)
  CylSet,      // cg({...}, t)
  Subst,       // s(i, j, t)
  Perm,        // p(i, j, t)
  Diag,        // d(i, j)
  SubstSigma,  // ssub([...], t)
};

struct Signature {
  SigTag tag;
  Dimension dim;

  Signature(SigTag t, Dimension d) : tag(t), dim(d) {}
  bool admits(TermKind kind) const;
  std::string to_string() const;
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
 public:
  TermKind kind;
  int var = -1;            // Var
  int i = -1, j = -1;      // Cyl/Subst/Perm/Diag
  std::vector<int> gamma;  // CylSet, sorted ascending
  std::vector<uint8_t> sigma_map;  // SubstSigma
  std::vector<TermPtr> children;

  static TermPtr make_var(int n);
  static TermPtr zero();
  static TermPtr one();
  static TermPtr sum(TermPtr a, TermPtr b);
  static TermPtr product(TermPtr a, TermPtr b);
  static TermPtr complement(TermPtr a);
  static TermPtr cyl(int i, TermPtr a);
  static TermPtr cyl_set(std::vector<int> gamma, TermPtr a);
  static TermPtr subst(int i, int j, TermPtr a);
  static TermPtr perm(int i, int j, TermPtr a);
  static TermPtr diag(int i, int j);
  static TermPtr subst_sigma(std::vector<uint8_t> map, TermPtr a);
  static TermPtr subst_sigma(const Transformation& sigma, TermPtr a);
};

bool structurally_equal(const Term& a, const Term& b);
bool structurally_equal(const TermPtr& a, const TermPtr& b);

struct Equation {
  TermPtr lhs;
  TermPtr rhs;
  std::string label;
};

// Canonical text form; parse(print(t)) == t. Binary nodes are always
// parenthesized.
std::string print(const TermPtr& t);
std::string print(const Equation& e);  // "lhs=rhs"

// Largest variable index occurring, or -1. free_vars lists indices ascending.
int max_var(const TermPtr& t);
std::vector<int> free_vars(const Equation& e);

// True iff no Complement node occurs on either side.
bool is_positive(const Equation& e);

// True iff every node kind is admitted by the signature and all indices
// fit its dimension.
bool reduct_check(const TermPtr& t, const Signature& sig);
bool reduct_check(const Equation& e, const Signature& sig);

// Rewrites SubstSigma nodes into nested Subst/Perm via decompose, and
// CylSet into nested Cyl (ascending outermost-first). Other nodes copied.
TermPtr expand_sigma(const TermPtr& t);

}  // namespace cylkit
