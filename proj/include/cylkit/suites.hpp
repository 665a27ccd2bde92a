#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cylkit/term.hpp"

// Machine-readable instantiation of the equational axiom systems and
// derived-identity families, one equation per admissible index tuple.

namespace cylkit::suites {

enum class SuiteId {
  CA,         // cylindric algebras (C0)-(C7)
  SCA,        // substitution-cylindric: (F0)-(F6) without p, plus (FS)
  FPA,        // finitary polyadic: (F0)-(F9)
  PA_SUBST,   // s_sigma / c_(Gamma) equations (1)-(4)
  THM2,       // equations (5)-(8), distinct indices
  THM3,       // equations (9)-(12), distinct indices
  DERIVED_P,  // (P1)-(P6) and (FS)
  DERIVED_A,  // (A1), (A2)
  FPEA_DIAG,  // s_ij d_ij = 1, x*d_ij <= s_ij x, p_ij d_kl = d_tau(k)tau(l)
};

std::string to_string(SuiteId id);
std::optional<SuiteId> suite_from_string(const std::string& s);
std::vector<SuiteId> all_suites();

SigTag suite_signature_tag(SuiteId id);

struct SchemaInfo {
  std::string label;
  std::string template_text;
  std::string side_condition;
  bool optional = false;
};

std::vector<SchemaInfo> list_schemas(SuiteId id);

// Side-condition predicate of equation (3): when do sigma and tau differ
// only inside Gamma. Swappable because the intended reading is interpretive.
using DifferPredicate = bool (*)(const Transformation&, const Transformation&,
                                 const std::vector<int>&);

struct InstantiateOptions {
  bool include_optional = false;  // e.g. the printed single-c variant of (C7)
  bool distinct_only = true;      // THM2/THM3: emit per the theorem statements
  DifferPredicate differ_in = nullptr;  // eq (3); default differ_only_in
};

struct SuiteInstance {
  SuiteId id;
  Signature sig;
  std::vector<Equation> equations;
  std::vector<std::string> warnings;  // schemas omitted at small alpha
};

SuiteInstance instantiate(SuiteId id, Dimension dim,
                          const InstantiateOptions& opts = {});

// Side-condition predicates of equations (3) and (4), exposed so the
// intended reading is testable (and swappable).
bool differ_only_in(const Transformation& sigma, const Transformation& tau,
                    const std::vector<int>& gamma);
bool one_one_on_preimage(const Transformation& sigma,
                         const std::vector<int>& gamma);

// Equation-per-line text with "# label" comment lines.
void write_suite(std::ostream& os, const SuiteInstance& suite);
std::vector<Equation> read_equation_file(std::istream& is,
                                         const Signature& sig);

}  // namespace cylkit::suites
