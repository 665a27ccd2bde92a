#include "cylkit/suites.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "cylkit/parse.hpp"

namespace cylkit::suites {

std::string to_string(SuiteId id) {
  switch (id) {
    case SuiteId::CA: return "CA";
    case SuiteId::SCA: return "SCA";
    case SuiteId::FPA: return "FPA";
    case SuiteId::PA_SUBST: return "PA_SUBST";
    case SuiteId::THM2: return "THM2";
    case SuiteId::THM3: return "THM3";
    case SuiteId::DERIVED_P: return "DERIVED_P";
    case SuiteId::DERIVED_A: return "DERIVED_A";
    case SuiteId::FPEA_DIAG: return "FPEA_DIAG";
  }
  return "?";
}

std::optional<SuiteId> suite_from_string(const std::string& s) {
  for (SuiteId id : all_suites())
    if (to_string(id) == s) return id;
  return std::nullopt;
}

std::vector<SuiteId> all_suites() {
  return {SuiteId::CA,   SuiteId::SCA,       SuiteId::FPA,
          SuiteId::PA_SUBST, SuiteId::THM2,  SuiteId::THM3,
          SuiteId::DERIVED_P, SuiteId::DERIVED_A, SuiteId::FPEA_DIAG};
}

SigTag suite_signature_tag(SuiteId id) {
  switch (id) {
    case SuiteId::CA: return SigTag::Cspd;
    case SuiteId::SCA: return SigTag::Cs;
    case SuiteId::FPA: return SigTag::Csp;
    case SuiteId::PA_SUBST: return SigTag::Pa;
    case SuiteId::THM2: return SigTag::Cs;
    case SuiteId::THM3: return SigTag::Csp;
    case SuiteId::DERIVED_P: return SigTag::Csp;
    case SuiteId::DERIVED_A: return SigTag::Cs;
    case SuiteId::FPEA_DIAG: return SigTag::Cspd;
  }
  return SigTag::Cspd;
}

namespace {

TermPtr X0() { return Term::make_var(0); }
TermPtr X1() { return Term::make_var(1); }
TermPtr X2() { return Term::make_var(2); }

// The eight Boolean-algebra equations standing in for (F0)/(C0):
// commutativity, distributivity both ways, identities, complements.
std::vector<Equation> boolean_basis(const std::string& prefix) {
  using T = Term;
  std::vector<Equation> eqs;
  auto add = [&](int n, TermPtr l, TermPtr r) {
    eqs.push_back({std::move(l), std::move(r),
                   prefix + ".BA" + std::to_string(n)});
  };
  add(1, T::sum(X0(), X1()), T::sum(X1(), X0()));
  add(2, T::product(X0(), X1()), T::product(X1(), X0()));
  add(3, T::sum(X0(), T::product(X1(), X2())),
      T::product(T::sum(X0(), X1()), T::sum(X0(), X2())));
  add(4, T::product(X0(), T::sum(X1(), X2())),
      T::sum(T::product(X0(), X1()), T::product(X0(), X2())));
  add(5, T::sum(X0(), T::zero()), X0());
  add(6, T::product(X0(), T::one()), X0());
  add(7, T::sum(X0(), T::complement(X0())), T::one());
  add(8, T::product(X0(), T::complement(X0())), T::zero());
  return eqs;
}

std::string idx2(const char* a, int i, const char* b, int j) {
  return std::string("[") + a + "=" + std::to_string(i) + "," + b + "=" +
         std::to_string(j) + "]";
}
std::string idx1(const char* a, int i) {
  return std::string("[") + a + "=" + std::to_string(i) + "]";
}
std::string idx3(int i, int j, int k) {
  return "[i=" + std::to_string(i) + ",j=" + std::to_string(j) +
         ",k=" + std::to_string(k) + "]";
}

std::string gamma_text(const std::vector<int>& gamma) {
  std::string s = "{";
  for (size_t k = 0; k < gamma.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(gamma[k]);
  }
  return s + "}";
}

// op is Term::subst or Term::perm; emits the five endomorphism equations:
// the complemented form (add, neg) plus the complement-free variant
// (add, mul, zero, one), the sum equation shared.
void emit_endomorphism(std::vector<Equation>& out, const std::string& label,
                       const std::string& suffix,
                       const std::function<TermPtr(TermPtr)>& op) {
  using T = Term;
  out.push_back({op(T::sum(X0(), X1())), T::sum(op(X0()), op(X1())),
                 label + ".add" + suffix});
  out.push_back({op(T::complement(X0())), T::complement(op(X0())),
                 label + ".neg" + suffix});
  out.push_back({op(T::product(X0(), X1())), T::product(op(X0()), op(X1())),
                 label + ".mul" + suffix});
  out.push_back({op(T::zero()), T::zero(), label + ".zero" + suffix});
  out.push_back({op(T::one()), T::one(), label + ".one" + suffix});
}

void emit_fpa_family(std::vector<Equation>& out, int alpha, bool with_p,
                     const std::string& f0) {
  using T = Term;
  for (auto& e : boolean_basis(f0)) out.push_back(std::move(e));
  for (int i = 0; i < alpha; ++i)
    out.push_back({T::subst(i, i, X0()), X0(), f0 + ".sii" + idx1("i", i)});
  if (with_p) {
    for (int i = 0; i < alpha; ++i)
      out.push_back({T::perm(i, i, X0()), X0(), f0 + ".pii" + idx1("i", i)});
    for (int i = 0; i < alpha; ++i)
      for (int j = 0; j < alpha; ++j)
        out.push_back({T::perm(i, j, X0()), T::perm(j, i, X0()),
                       f0 + ".psym" + idx2("i", i, "j", j)});
  }
  // F1: x <= c_i x, rendered as x + c_i x = c_i x
  for (int i = 0; i < alpha; ++i)
    out.push_back({T::sum(X0(), T::cyl(i, X0())), T::cyl(i, X0()),
                   "F1" + idx1("i", i)});
  for (int i = 0; i < alpha; ++i)
    out.push_back({T::cyl(i, T::sum(X0(), X1())),
                   T::sum(T::cyl(i, X0()), T::cyl(i, X1())),
                   "F2" + idx1("i", i)});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      out.push_back({T::subst(i, j, T::cyl(i, X0())), T::cyl(i, X0()),
                     "F3" + idx2("i", i, "j", j)});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      if (i != j)
        out.push_back({T::cyl(i, T::subst(i, j, X0())), T::subst(i, j, X0()),
                       "F4" + idx2("i", i, "j", j)});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      for (int k = 0; k < alpha; ++k)
        if (k != i && k != j)
          out.push_back({T::subst(i, j, T::cyl(k, X0())),
                         T::cyl(k, T::subst(i, j, X0())), "F5" + idx3(i, j, k)});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) {
      emit_endomorphism(out, "F6.s", idx2("i", i, "j", j),
                        [&](TermPtr t) { return T::subst(i, j, std::move(t)); });
      if (with_p)
        emit_endomorphism(out, "F6.p", idx2("i", i, "j", j),
                          [&](TermPtr t) { return T::perm(i, j, std::move(t)); });
    }
  if (with_p) {
    for (int i = 0; i < alpha; ++i)
      for (int j = 0; j < alpha; ++j)
        out.push_back({T::perm(i, j, T::perm(i, j, X0())), X0(),
                       "F7" + idx2("i", i, "j", j)});
    for (int i = 0; i < alpha; ++i)
      for (int j = 0; j < alpha; ++j)
        for (int k = 0; k < alpha; ++k)
          if (i != j && j != k && i != k)
            out.push_back({T::perm(i, j, T::perm(i, k, X0())),
                           T::perm(j, k, T::perm(i, j, X0())),
                           "F8" + idx3(i, j, k)});
    for (int i = 0; i < alpha; ++i)
      for (int j = 0; j < alpha; ++j)
        out.push_back({T::perm(i, j, T::subst(j, i, X0())), T::subst(i, j, X0()),
                       "F9" + idx2("i", i, "j", j)});
  }
}

void emit_fs(std::vector<Equation>& out, int alpha, const std::string& name) {
  using T = Term;
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      for (int k = 0; k < alpha; ++k)
        if (i != j && j != k && i != k)
          out.push_back({T::subst(i, j, T::subst(k, j, X0())),
                         T::subst(i, j, T::subst(k, i, X0())),
                         name + idx3(i, j, k)});
}

// p_tau as nested transpositions via the cycle decomposition of tau.
TermPtr perm_tau(const Transformation& tau, TermPtr inner) {
  auto gens = decompose(tau);
  for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
    int gi = -1, gj = -1;
    for (int k = 0; k < it->alpha(); ++k)
      if ((*it)(k) != k) {
        gi = k;
        gj = (*it)(k);
        break;
      }
    inner = Term::perm(gi, gj, std::move(inner));
  }
  return inner;
}

void emit_ca(std::vector<Equation>& out, int alpha, bool include_optional) {
  using T = Term;
  for (auto& e : boolean_basis("C0")) out.push_back(std::move(e));
  for (int i = 0; i < alpha; ++i)
    out.push_back({T::cyl(i, T::zero()), T::zero(), "C1" + idx1("i", i)});
  for (int i = 0; i < alpha; ++i)
    out.push_back({T::sum(X0(), T::cyl(i, X0())), T::cyl(i, X0()),
                   "C2" + idx1("i", i)});
  for (int i = 0; i < alpha; ++i)
    out.push_back({T::cyl(i, T::product(X0(), T::cyl(i, X1()))),
                   T::product(T::cyl(i, X0()), T::cyl(i, X1())),
                   "C3" + idx1("i", i)});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      out.push_back({T::cyl(i, T::cyl(j, X0())), T::cyl(j, T::cyl(i, X0())),
                     "C4" + idx2("i", i, "j", j)});
  for (int i = 0; i < alpha; ++i)
    out.push_back({T::diag(i, i), T::one(), "C5" + idx1("i", i)});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      for (int k = 0; k < alpha; ++k)
        if (k != i && k != j)
          out.push_back({T::diag(i, j),
                         T::cyl(k, T::product(T::diag(i, k), T::diag(k, j))),
                         "C6" + idx3(i, j, k)});
  // Standard two-cylindrification form: c_j(d_ij * x) * c_j(d_ij * -x) = 0.
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      if (i != j)
        out.push_back(
            {T::product(T::cyl(j, T::product(T::diag(i, j), X0())),
                        T::cyl(j, T::product(T::diag(i, j), T::complement(X0())))),
             T::zero(), "C7" + idx2("i", i, "j", j)});
  if (include_optional) {
    // Variant with a single cylindrification on the left conjunct.
    for (int i = 0; i < alpha; ++i)
      for (int j = 0; j < alpha; ++j)
        if (i != j)
          out.push_back(
              {T::product(T::cyl(i, T::product(T::diag(i, j), X0())),
                          T::product(T::diag(i, j), T::complement(X0()))),
               T::zero(), "C7P" + idx2("i", i, "j", j)});
  }
}

void emit_pa_subst(std::vector<Equation>& out, Dimension dim,
                   DifferPredicate differ_in) {
  using T = Term;
  const auto all = all_transformations(dim);
  const int alpha = dim.alpha();
  auto ss = [&](const Transformation& s, TermPtr t) {
    return T::subst_sigma(s, std::move(t));
  };
  for (const auto& s : all) {
    out.push_back({ss(s, T::sum(X0(), X1())), T::sum(ss(s, X0()), ss(s, X1())),
                   "(1a)[sigma=" + s.to_string() + "]"});
    out.push_back({ss(s, T::complement(X0())), T::complement(ss(s, X0())),
                   "(1b)[sigma=" + s.to_string() + "]"});
  }
  for (const auto& s : all)
    for (const auto& t : all)
      out.push_back({ss(compose(s, t), X0()), ss(s, ss(t, X0())),
                     "(2a)[sigma=" + s.to_string() + ",tau=" + t.to_string() +
                         "]"});
  out.push_back({ss(Transformation::identity(dim), X0()), X0(), "(2b)"});

  // All Gamma as sorted index lists, by bitmask.
  std::vector<std::vector<int>> gammas;
  for (uint32_t mask = 0; mask < (uint32_t(1) << alpha); ++mask) {
    std::vector<int> g;
    for (int k = 0; k < alpha; ++k)
      if ((mask >> k) & 1) g.push_back(k);
    gammas.push_back(std::move(g));
  }
  for (const auto& g : gammas)
    for (const auto& s : all)
      for (const auto& t : all)
        if (differ_in(s, t, g))
          out.push_back({ss(s, T::cyl_set(g, X0())), ss(t, T::cyl_set(g, X0())),
                         "(3)[sigma=" + s.to_string() +
                             ",tau=" + t.to_string() + ",Gamma=" +
                             gamma_text(g) + "]"});
  for (const auto& g : gammas)
    for (const auto& s : all)
      if (one_one_on_preimage(s, g)) {
        std::vector<int> pre;
        for (int k = 0; k < alpha; ++k)
          if (std::find(g.begin(), g.end(), static_cast<int>(s(k))) != g.end())
            pre.push_back(k);
        out.push_back({T::cyl_set(g, ss(s, X0())),
                       ss(s, T::cyl_set(pre, X0())),
                       "(4)[sigma=" + s.to_string() + ",Gamma=" +
                           gamma_text(g) + "]"});
      }
}

void emit_thm2(std::vector<Equation>& out, int alpha, bool distinct_only) {
  using T = Term;
  auto pairs_ok = [&](int i, int j) { return distinct_only ? i != j : true; };
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) {
      if (!pairs_ok(i, j)) continue;
      out.push_back({T::subst(i, j, T::sum(X0(), X1())),
                     T::sum(T::subst(i, j, X0()), T::subst(i, j, X1())),
                     "(5a)" + idx2("i", i, "j", j)});
      out.push_back({T::subst(i, j, T::complement(X0())),
                     T::complement(T::subst(i, j, X0())),
                     "(5b)" + idx2("i", i, "j", j)});
      out.push_back({T::subst(i, j, T::cyl(i, X0())), T::cyl(i, X0()),
                     "(6a)" + idx2("i", i, "j", j)});
      if (i != j)
        out.push_back({T::subst(i, j, X0()), T::cyl(i, T::subst(i, j, X0())),
                       "(6b)" + idx2("i", i, "j", j)});
    }
  for (int i = 0; i < alpha; ++i)
    out.push_back({T::subst(i, i, X0()), X0(), "(6c)" + idx1("i", i)});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      for (int k = 0; k < alpha; ++k) {
        const bool ok =
            distinct_only ? (i != j && j != k && i != k) : (k != i && k != j);
        if (!ok) continue;
        out.push_back({T::subst(i, j, T::cyl(k, X0())),
                       T::cyl(k, T::subst(i, j, X0())), "(7)" + idx3(i, j, k)});
      }
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      for (int k = 0; k < alpha; ++k)
        if (i != j && j != k && i != k)
          out.push_back({T::subst(i, j, T::subst(k, j, X0())),
                         T::subst(i, j, T::subst(k, i, X0())),
                         "(8)" + idx3(i, j, k)});
}

void emit_thm3(std::vector<Equation>& out, int alpha, bool distinct_only) {
  using T = Term;
  auto pairs_ok = [&](int i, int j) { return distinct_only ? i != j : true; };
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) {
      if (!pairs_ok(i, j)) continue;
      out.push_back({T::perm(i, j, T::sum(X0(), X1())),
                     T::sum(T::perm(i, j, X0()), T::perm(i, j, X1())),
                     "(9a)" + idx2("i", i, "j", j)});
      out.push_back({T::perm(i, j, T::complement(X0())),
                     T::complement(T::perm(i, j, X0())),
                     "(9b)" + idx2("i", i, "j", j)});
      out.push_back({T::perm(i, j, T::perm(i, j, X0())), X0(),
                     "(10a)" + idx2("i", i, "j", j)});
      out.push_back({T::perm(i, j, X0()), T::perm(j, i, X0()),
                     "(10b)" + idx2("i", i, "j", j)});
      out.push_back({T::perm(i, j, T::subst(i, j, X0())),
                     T::subst(j, i, T::perm(i, j, X0())),
                     "(11)" + idx2("i", i, "j", j)});
    }
  for (int i = 0; i < alpha; ++i)
    out.push_back({T::perm(i, i, X0()), X0(), "(10c)" + idx1("i", i)});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      for (int k = 0; k < alpha; ++k)
        if (i != j && j != k && i != k)
          out.push_back({T::perm(i, j, T::perm(i, k, X0())),
                         T::perm(j, k, T::perm(i, j, X0())),
                         "(12)" + idx3(i, j, k)});
}

void emit_derived_p(std::vector<Equation>& out, Dimension dim) {
  using T = Term;
  const int alpha = dim.alpha();
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) {
      out.push_back({T::perm(i, j, T::cyl(i, X0())),
                     T::subst(j, i, T::cyl(i, X0())),
                     "P1" + idx2("i", i, "j", j)});
      out.push_back({T::perm(i, j, T::cyl(j, X0())),
                     T::subst(i, j, T::cyl(j, X0())),
                     "P2" + idx2("i", i, "j", j)});
      out.push_back({T::perm(i, j, T::cyl(i, X0())),
                     T::cyl(j, T::perm(i, j, X0())),
                     "P4" + idx2("i", i, "j", j)});
    }
  // P3 in the derivation form p_ij c_k = s_kj s_ji s_ik c_k.
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      for (int k = 0; k < alpha; ++k)
        if (k != i && k != j)
          out.push_back(
              {T::perm(i, j, T::cyl(k, X0())),
               T::subst(k, j,
                        T::subst(j, i, T::subst(i, k, T::cyl(k, X0())))),
               "P3" + idx3(i, j, k)});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      for (int m = 0; m < alpha; ++m)
        if (i != j && j != m && i != m)
          out.push_back({T::perm(i, j, T::cyl(m, X0())),
                         T::cyl(m, T::perm(i, j, X0())),
                         "P5[i=" + std::to_string(i) + ",j=" +
                             std::to_string(j) + ",m=" + std::to_string(m) +
                             "]"});
  for (const auto& tau : all_permutations(dim))
    for (int i = 0; i < alpha; ++i)
      out.push_back({perm_tau(tau, T::cyl(i, X0())),
                     T::cyl(tau(i), perm_tau(tau, X0())),
                     "P6[tau=" + tau.to_string() + ",i=" + std::to_string(i) +
                         "]"});
  emit_fs(out, alpha, "FS");
}

void emit_derived_a(std::vector<Equation>& out, int alpha) {
  using T = Term;
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      for (int k = 0; k < alpha; ++k)
        if (i != k)
          out.push_back({T::subst(i, j, T::subst(i, k, X0())),
                         T::subst(i, k, X0()), "A1" + idx3(i, j, k)});
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j)
      for (int k = 0; k < alpha; ++k)
        for (int l = 0; l < alpha; ++l)
          if (i != k && i != l && k != j)
            out.push_back({T::subst(i, j, T::subst(k, l, X0())),
                           T::subst(k, l, T::subst(i, j, X0())),
                           "A2[i=" + std::to_string(i) + ",j=" +
                               std::to_string(j) + ",k=" + std::to_string(k) +
                               ",l=" + std::to_string(l) + "]"});
}

void emit_fpea_diag(std::vector<Equation>& out, Dimension dim) {
  using T = Term;
  const int alpha = dim.alpha();
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) {
      out.push_back({T::subst(i, j, T::diag(i, j)), T::one(),
                     "SD1" + idx2("i", i, "j", j)});
      out.push_back({T::product(X0(), T::diag(i, j)),
                     T::product(T::product(X0(), T::diag(i, j)),
                                T::subst(i, j, X0())),
                     "SD2" + idx2("i", i, "j", j)});
    }
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) {
      const Transformation tau = Transformation::transposition(i, j, dim);
      for (int k = 0; k < alpha; ++k)
        for (int l = 0; l < alpha; ++l)
          out.push_back({T::perm(i, j, T::diag(k, l)), T::diag(tau(k), tau(l)),
                         "SD3[i=" + std::to_string(i) + ",j=" +
                             std::to_string(j) + ",k=" + std::to_string(k) +
                             ",l=" + std::to_string(l) + "]"});
    }
}

}  // namespace

bool differ_only_in(const Transformation& sigma, const Transformation& tau,
                    const std::vector<int>& gamma) {
  for (int k = 0; k < sigma.alpha(); ++k) {
    if (std::find(gamma.begin(), gamma.end(), k) != gamma.end()) continue;
    if (sigma(k) != tau(k)) return false;
  }
  return true;
}

bool one_one_on_preimage(const Transformation& sigma,
                         const std::vector<int>& gamma) {
  std::vector<int> pre;
  for (int k = 0; k < sigma.alpha(); ++k)
    if (std::find(gamma.begin(), gamma.end(), static_cast<int>(sigma(k))) !=
        gamma.end())
      pre.push_back(k);
  for (size_t a = 0; a < pre.size(); ++a)
    for (size_t b = a + 1; b < pre.size(); ++b)
      if (sigma(pre[a]) == sigma(pre[b])) return false;
  return true;
}

SuiteInstance instantiate(SuiteId id, Dimension dim,
                          const InstantiateOptions& opts) {
  if (dim.alpha() < 2)
    throw InputError("suites need alpha >= 2");
  SuiteInstance inst{id, Signature(suite_signature_tag(id), dim), {}, {}};
  const int alpha = dim.alpha();
  switch (id) {
    case SuiteId::FPA:
      emit_fpa_family(inst.equations, alpha, true, "F0");
      break;
    case SuiteId::SCA:
      emit_fpa_family(inst.equations, alpha, false, "F0");
      emit_fs(inst.equations, alpha, "FS");
      break;
    case SuiteId::CA:
      emit_ca(inst.equations, alpha, opts.include_optional);
      break;
    case SuiteId::PA_SUBST:
      emit_pa_subst(inst.equations, dim,
                    opts.differ_in ? opts.differ_in : &differ_only_in);
      break;
    case SuiteId::THM2:
      emit_thm2(inst.equations, alpha, opts.distinct_only);
      break;
    case SuiteId::THM3:
      emit_thm3(inst.equations, alpha, opts.distinct_only);
      break;
    case SuiteId::DERIVED_P:
      emit_derived_p(inst.equations, dim);
      break;
    case SuiteId::DERIVED_A:
      emit_derived_a(inst.equations, alpha);
      break;
    case SuiteId::FPEA_DIAG:
      emit_fpea_diag(inst.equations, dim);
      break;
  }
  // Schemas with no admissible tuple at this dimension get a warning so
  // their absence is visible in reports.
  std::vector<std::string> prefixes;
  for (const auto& s : list_schemas(id))
    if (!s.optional) prefixes.push_back(s.label);
  for (const auto& p : prefixes) {
    const bool present =
        std::any_of(inst.equations.begin(), inst.equations.end(),
                    [&](const Equation& e) {
                      return e.label.rfind(p, 0) == 0 &&
                             (e.label.size() == p.size() ||
                              e.label[p.size()] == '[' ||
                              e.label[p.size()] == '.');
                    });
    if (!present)
      inst.warnings.push_back("schema " + p + " has no instance at alpha=" +
                              std::to_string(alpha));
  }
  for (const auto& e : inst.equations)
    if (!reduct_check(e, inst.sig))
      throw Error("suite equation outside its signature: " + e.label);
  return inst;
}

std::vector<SchemaInfo> list_schemas(SuiteId id) {
  switch (id) {
    case SuiteId::FPA:
      return {
          {"F0", "Boolean algebra basis; s(i,i,x0)=x0; p(i,i,x0)=x0; "
                 "p(i,j,x0)=p(j,i,x0)", ""},
          {"F1", "x0+c(i,x0) = c(i,x0)", ""},
          {"F2", "c(i,x0+x1) = c(i,x0)+c(i,x1)", ""},
          {"F3", "s(i,j,c(i,x0)) = c(i,x0)", ""},
          {"F4", "c(i,s(i,j,x0)) = s(i,j,x0)", "i != j"},
          {"F5", "s(i,j,c(k,x0)) = c(k,s(i,j,x0))", "k not in {i,j}"},
          {"F6", "s(i,j,.) and p(i,j,.) are Boolean endomorphisms "
                 "(both the -x form and the +,*,0,1 form)", ""},
          {"F7", "p(i,j,p(i,j,x0)) = x0", ""},
          {"F8", "p(i,j,p(i,k,x0)) = p(j,k,p(i,j,x0))", "i,j,k all distinct"},
          {"F9", "p(i,j,s(j,i,x0)) = s(i,j,x0)", ""},
      };
    case SuiteId::SCA:
      return {
          {"F0", "Boolean algebra basis; s(i,i,x0)=x0", ""},
          {"F1", "x0+c(i,x0) = c(i,x0)", ""},
          {"F2", "c(i,x0+x1) = c(i,x0)+c(i,x1)", ""},
          {"F3", "s(i,j,c(i,x0)) = c(i,x0)", ""},
          {"F4", "c(i,s(i,j,x0)) = s(i,j,x0)", "i != j"},
          {"F5", "s(i,j,c(k,x0)) = c(k,s(i,j,x0))", "k not in {i,j}"},
          {"F6", "s(i,j,.) is a Boolean endomorphism", ""},
          {"FS", "s(i,j,s(k,j,x0)) = s(i,j,s(k,i,x0))", "i,j,k all distinct"},
      };
    case SuiteId::CA:
      return {
          {"C0", "Boolean algebra basis", ""},
          {"C1", "c(i,0) = 0", ""},
          {"C2", "x0+c(i,x0) = c(i,x0)", ""},
          {"C3", "c(i,x0*c(i,x1)) = c(i,x0)*c(i,x1)", ""},
          {"C4", "c(i,c(j,x0)) = c(j,c(i,x0))", ""},
          {"C5", "d(i,i) = 1", ""},
          {"C6", "d(i,j) = c(k,d(i,k)*d(k,j))", "k not in {i,j}"},
          {"C7", "c(j,d(i,j)*x0)*c(j,d(i,j)*-x0) = 0", "i != j"},
          {"C7P", "c(i,d(i,j)*x0)*(d(i,j)*-x0) = 0", "i != j", true},
      };
    case SuiteId::PA_SUBST:
      return {
          {"(1a)", "ssub(sigma,x0+x1) = ssub(sigma,x0)+ssub(sigma,x1)", ""},
          {"(1b)", "ssub(sigma,-x0) = -ssub(sigma,x0)", ""},
          {"(2a)", "ssub(sigma o tau,x0) = ssub(sigma,ssub(tau,x0))", ""},
          {"(2b)", "ssub(id,x0) = x0", ""},
          {"(3)", "ssub(sigma,cg(Gamma,x0)) = ssub(tau,cg(Gamma,x0))",
           "sigma, tau differ only in Gamma"},
          {"(4)", "cg(Gamma,ssub(sigma,x0)) = ssub(sigma,cg(sigma^-1 Gamma,x0))",
           "sigma one-one on sigma^-1 Gamma"},
      };
    case SuiteId::THM2:
      return {
          {"(5a)", "s(i,j,x0+x1) = s(i,j,x0)+s(i,j,x1)", "i,j distinct"},
          {"(5b)", "s(i,j,-x0) = -s(i,j,x0)", "i,j distinct"},
          {"(6a)", "s(i,j,c(i,x0)) = c(i,x0)", "i,j distinct"},
          {"(6b)", "s(i,j,x0) = c(i,s(i,j,x0))", "i,j distinct"},
          {"(6c)", "s(i,i,x0) = x0", ""},
          {"(7)", "s(i,j,c(k,x0)) = c(k,s(i,j,x0))", "i,j,k all distinct"},
          {"(8)", "s(i,j,s(k,j,x0)) = s(i,j,s(k,i,x0))", "i,j,k all distinct"},
      };
    case SuiteId::THM3:
      return {
          {"(9a)", "p(i,j,x0+x1) = p(i,j,x0)+p(i,j,x1)", "i,j distinct"},
          {"(9b)", "p(i,j,-x0) = -p(i,j,x0)", "i,j distinct"},
          {"(10a)", "p(i,j,p(i,j,x0)) = x0", "i,j distinct"},
          {"(10b)", "p(i,j,x0) = p(j,i,x0)", "i,j distinct"},
          {"(10c)", "p(i,i,x0) = x0", ""},
          {"(11)", "p(i,j,s(i,j,x0)) = s(j,i,p(i,j,x0))", "i,j distinct"},
          {"(12)", "p(i,j,p(i,k,x0)) = p(j,k,p(i,j,x0))", "i,j,k all distinct"},
      };
    case SuiteId::DERIVED_P:
      return {
          {"P1", "p(i,j,c(i,x0)) = s(j,i,c(i,x0))", ""},
          {"P2", "p(i,j,c(j,x0)) = s(i,j,c(j,x0))", ""},
          {"P3", "p(i,j,c(k,x0)) = s(k,j,s(j,i,s(i,k,c(k,x0))))",
           "k not in {i,j}"},
          {"P4", "p(i,j,c(i,x0)) = c(j,p(i,j,x0))", ""},
          {"P5", "p(i,j,c(m,x0)) = c(m,p(i,j,x0))", "i,j,m all distinct"},
          {"P6", "p_tau c(i,x0) = c(tau(i), p_tau x0)",
           "tau a permutation; p_tau expanded into transpositions"},
          {"FS", "s(i,j,s(k,j,x0)) = s(i,j,s(k,i,x0))", "i,j,k all distinct"},
      };
    case SuiteId::DERIVED_A:
      return {
          {"A1", "s(i,j,s(i,k,x0)) = s(i,k,x0)", "i != k"},
          {"A2", "s(i,j,s(k,l,x0)) = s(k,l,s(i,j,x0))",
           "i not in {k,l}, k != j"},
      };
    case SuiteId::FPEA_DIAG:
      return {
          {"SD1", "s(i,j,d(i,j)) = 1", ""},
          {"SD2", "x0*d(i,j) = x0*d(i,j)*s(i,j,x0)", ""},
          {"SD3", "p(i,j,d(k,l)) = d(tau(k),tau(l)) with tau = [i,j]", ""},
      };
  }
  return {};
}

void write_suite(std::ostream& os, const SuiteInstance& suite) {
  for (const auto& w : suite.warnings) os << "# warning: " << w << "\n";
  for (const auto& e : suite.equations) {
    os << "# " << e.label << "\n";
    os << print(e) << "\n";
  }
}

std::vector<Equation> read_equation_file(std::istream& is,
                                         const Signature& sig) {
  std::vector<Equation> out;
  std::string line, label;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      label = line.substr(first + 1);
      const auto start = label.find_first_not_of(" \t");
      label = (start == std::string::npos) ? "" : label.substr(start);
      if (label.rfind("warning:", 0) == 0) label.clear();
      continue;
    }
    try {
      out.push_back(parse_equation(line, sig,
                                   label.empty() ? "line" + std::to_string(lineno)
                                                 : label));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " (file line " +
                           std::to_string(lineno) + ")",
                       lineno, 1);
    }
    label.clear();
  }
  return out;
}

}  // namespace cylkit::suites
