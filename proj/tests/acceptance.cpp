// Acceptance runner: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <vector>

#include "cylkit/check.hpp"
#include "cylkit/duality.hpp"
#include "cylkit/parse.hpp"
#include "cylkit/represent.hpp"
#include "cylkit/search.hpp"

using namespace cylkit;
using suites::SuiteId;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      if (!note.empty()) note += "; ";
      note += why;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

SuiteReport run_exhaustive(SuiteId id, uint32_t base) {
  const SetAlgebra alg(Dimension(3), Base(base));
  CheckStrategy strat;
  strat.mode = CheckStrategy::Exhaustive;
  return check_suite(alg, suites::instantiate(id, Dimension(3)), strat);
}

SuiteReport run_random(SuiteId id, uint32_t base, uint64_t samples,
                       uint64_t seed) {
  const SetAlgebra alg(Dimension(3), Base(base));
  CheckStrategy strat;
  strat.mode = CheckStrategy::Random;
  strat.samples = samples;
  strat.seed = seed;
  return check_suite(alg, suites::instantiate(id, Dimension(3)), strat);
}

Outcome criterion1() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  for (uint32_t base : {1u, 2u}) {
    const auto rep = run_exhaustive(SuiteId::FPA, base);
    out.require(rep.all_passed() &&
                    rep.count(Verdict::Valid) == rep.results.size(),
                "FPA exhaustive failed at |U|=" + std::to_string(base));
  }
  const double elapsed = seconds_since(t0);
  out.require(elapsed < 60.0, "exhaustive part took " +
                                  std::to_string(elapsed) + "s (limit 60)");
  const auto rnd = run_random(SuiteId::FPA, 3, 10000, 20240901);
  out.require(rnd.all_passed(), "FPA random failed at |U|=3");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1fs exhaustive", elapsed);
  out.note = out.pass ? buf : out.note;
  return out;
}

Outcome criterion2() {
  Outcome out;
  for (SuiteId id : {SuiteId::DERIVED_P, SuiteId::DERIVED_A}) {
    for (uint32_t base : {1u, 2u}) {
      const auto rep = run_exhaustive(id, base);
      out.require(rep.all_passed(), suites::to_string(id) +
                                        " exhaustive failed at |U|=" +
                                        std::to_string(base));
    }
    const auto rnd = run_random(id, 3, 10000, 20240902);
    out.require(rnd.all_passed(),
                suites::to_string(id) + " random failed at |U|=3");
  }
  return out;
}

Outcome criterion3() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = run_exhaustive(SuiteId::PA_SUBST, 2);
  out.require(rep.all_passed(), "PA_SUBST exhaustive failed at |U|=2");
  out.require(rep.results.size() == 2644,
              "unexpected instance count " +
                  std::to_string(rep.results.size()));
  const double elapsed = seconds_since(t0);
  out.require(elapsed < 120.0, "took " + std::to_string(elapsed) +
                                   "s (limit 120)");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%zu instances, %.1fs",
                rep.results.size(), elapsed);
  if (out.pass) out.note = buf;
  return out;
}

Outcome criterion4() {
  Outcome out;
  const SetAlgebra alg(Dimension(3), Base(2));
  const auto rec = represent::recover_diagonals(alg);
  out.require(rec.s_of_d_is_one, "s_ij(d*_ij) != 1");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j)
        out.require(rec.at(i, j, 3) == alg.diag(i, j),
                    "d* != D at (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
  const auto rdsc = represent::verify_rdsc(alg, rec);
  out.require(rdsc.ca_report.all_passed(), "CA suite failed over d*");
  out.require(rdsc.s_equals_cd, "s_ij(x) != c_i(d*_ij * x)");
  return out;
}

Outcome criterion5() {
  Outcome out;
  const Dimension d3(3);
  for (uint32_t usize : {1u, 2u}) {
    const Base base(usize);
    const SetAlgebra set_alg(d3, base);
    const auto alg =
        duality::FiniteAlgebra::cm(duality::seq_structure(d3, base, SigTag::C));
    const uint64_t carrier = uint64_t(1) << alg.atoms();
    bool match = static_cast<uint64_t>(alg.atoms()) == set_alg.npoints();
    for (uint64_t m = 0; m < carrier && match; ++m)
      for (int i = 0; i < 3; ++i)
        if (alg.cyl(i, m) != cyl(i, set_alg.element_from_bits(m)).words()[0]) {
          match = false;
          break;
        }
    out.require(match, "cm(seq_structure) cylindrification mismatch at |U|=" +
                           std::to_string(usize));
  }
  std::mt19937_64 rng(20240905);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    duality::AtomStructure s(n, d3);
    for (int i = 0; i < 3; ++i) {
      std::vector<duality::AtomPair> pairs;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (rng() & 1) pairs.emplace_back(x, y);
      s.set_T(i, pairs);
    }
    const auto rep = duality::em_roundtrip(duality::FiniteAlgebra::cm(s));
    out.require(rep.isomorphic, "em_roundtrip failed: " + rep.detail);
    if (!rep.isomorphic) break;
  }
  return out;
}

Outcome criterion6() {
  Outcome out;
  const Dimension d3(3);
  const Base u2(2);
  for (uint64_t k = 0; k < 8; ++k) {
    const auto s = decode_point(k, d3, u2);
    const auto fam = represent::split_shat(s, d3, u2);
    out.require(fam.parts.size() == 6, "expected 6 parts");
    Relation un(d3, fam.shat.base());
    for (size_t g = 0; g < fam.parts.size(); ++g) {
      out.require(fam.parts[g].count() == 36, "part size != 36");
      out.require((un & fam.parts[g]).is_empty(), "parts overlap");
      un = un | fam.parts[g];
      for (int i = 0; i < 3; ++i)
        out.require(cyl(i, fam.parts[g]) == cyl(i, fam.shat),
                    "C_i(s_sigma) != C_i(s-hat)");
    }
    out.require(un == fam.shat, "parts do not cover s-hat");
    if (!out.pass) break;
  }
  return out;
}

Outcome criterion7() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = represent::run_sec5(Dimension(3), Base(2), 3, 20240907);
  out.require(res.diag_below_dpp, "D_ij^V not below d_ij''");
  out.require(res.s_is_S, "s_ij'' != S_ij^V");
  out.require(res.all_passed(),
              res.failures.empty() ? "pipeline failed" : res.failures.front());
  const double elapsed = seconds_since(t0);
  out.require(elapsed < 120.0, "took " + std::to_string(elapsed) + "s");
  return out;
}

Outcome criterion8() {
  Outcome out;
  // |U|=2: no repetition-free atoms exist (three coordinates over two
  // values always repeat); the pipeline must still verify end to end.
  const auto base2 = represent::run_sec6(Dimension(3), Base(2), 20240908);
  out.require(base2.all_passed(),
              base2.failures.empty() ? "sec6 |U|=2 failed"
                                     : base2.failures.front());
  out.require(base2.rfat_count == 0, "unexpected repetition-free atoms");
  // |U|=3: the six injective sequences are repetition-free, so the
  // equivariance and cylinder lemmas are exercised for real.
  const auto base3 = represent::run_sec6(Dimension(3), Base(3), 20240908);
  out.require(base3.rfat_count == 6, "expected 6 repetition-free atoms");
  out.require(base3.rep_equivariant, "rep equivariance failed");
  out.require(base3.rep_cyl_ok, "C_i(rep a) != C_i(F a)");
  out.require(base3.fpa_on_image, "FPA failed on the image algebra");
  out.require(base3.all_passed(),
              base3.failures.empty() ? "sec6 |U|=3 failed"
                                     : base3.failures.front());
  if (out.pass) out.note = "|U|=2 (vacuous rep) and |U|=3 (6 atoms)";
  return out;
}

Outcome criterion9() {
  Outcome out;
  const Dimension d3(3);
  const Signature sig(SigTag::Any, d3);
  const SetAlgebra alg(d3, Base(2));
  CheckStrategy strat;
  const Verdict v1 =
      check_equation(alg, parse_equation("c(0,x0)=x0", sig, "neg1"), strat);
  out.require(v1.status == Verdict::CounterexampleFound,
              "no counterexample to c(0,x0)=x0");
  const Verdict v2 = check_equation(
      alg, parse_equation("p(0,1,x0)=s(0,1,x0)", sig, "neg2"), strat);
  out.require(v2.status == Verdict::CounterexampleFound,
              "no counterexample to p(0,1,x0)=s(0,1,x0)");
  const auto found = search_counterexample(
      parse_equation("p(0,1,p(0,1,x0))=x0", sig, "F7"), d3, {3, 1 << 18});
  out.require(found.found, "no non-involutive P counter-model found");
  if (found.found)
    out.note = "F7 counter-model at " +
               std::to_string(found.structure->atoms) + " atom(s)";
  return out;
}

Outcome criterion10() {
  Outcome out;
  const auto a = run_random(SuiteId::FPA, 3, 2000, 424242);
  const auto b = run_random(SuiteId::FPA, 3, 2000, 424242);
  out.require(a.to_text() == b.to_text(), "suite text reports differ");
  out.require(a.summary_json() == b.summary_json(), "JSON summaries differ");
  const auto m1 = represent::run_sec5(Dimension(3), Base(2), 3, 5).manifest_json;
  const auto m2 = represent::run_sec5(Dimension(3), Base(2), 3, 5).manifest_json;
  out.require(m1 == m2, "sec5 manifests differ");
  const auto c = run_random(SuiteId::FPA, 3, 2000, 424243);
  out.require(a.seed != c.seed, "seed not recorded");
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria =
      {
          {"FPA suite valid (|U|=1,2 exhaustive; |U|=3 random)", criterion1},
          {"derived identities (P1)-(P6),(FS),(A1),(A2) valid", criterion2},
          {"PA substitution suite (1)-(4) exhaustive at |U|=2", criterion3},
          {"diagonal recovery d* = D and CA/s=c(d*x) checks", criterion4},
          {"duality: cm(seq) = set cyls; em roundtrip on 50 structures",
           criterion5},
          {"splitting lemma: 6 parts of 36, C_i equalities", criterion6},
          {"section-5 pipeline: D <= d'' and s'' = S^V", criterion7},
          {"section-6 pipeline: rep equivariance, cylinder lemma, FPA image",
           criterion8},
          {"negative controls find counterexamples", criterion9},
          {"fixed seeds give byte-identical reports", criterion10},
      };

  int failures = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    Outcome out;
    try {
      out = criteria[k].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.note = std::string("exception: ") + e.what();
    }
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << (k + 1)
              << ": " << criteria[k].first;
    if (!out.note.empty()) std::cout << " [" << out.note << "]";
    std::cout << std::endl;
    if (!out.pass) ++failures;
  }
  if (failures) std::cout << failures << " criterion(s) failed" << std::endl;
  return failures == 0 ? 0 : 1;
}
