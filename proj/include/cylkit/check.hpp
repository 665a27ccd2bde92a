#pragma once

#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cylkit/eval.hpp"
#include "cylkit/packed.hpp"
#include "cylkit/suites.hpp"

// Validity checking by assignment enumeration: exhaustive over the whole
// carrier when it fits the budget, seeded random sampling otherwise.

namespace cylkit {

struct CheckStrategy {
  enum Mode { Exhaustive, Random };
  Mode mode = Exhaustive;
  uint64_t samples = 10000;  // per equation instance, random mode
  uint64_t seed = 0;
  int var_cap = 3;
  uint64_t budget = uint64_t(1) << 26;  // max assignments for exhaustion

  std::string mode_name() const {
    return mode == Exhaustive ? "exhaustive" : "random";
  }
};

struct Verdict {
  enum Status { Valid, CounterexampleFound, RandomPass };
  Status status = Valid;
  uint64_t assignments_checked = 0;
  std::string detail;  // assignment and both values for counterexamples

  bool passed() const { return status != CounterexampleFound; }
  std::string status_name() const {
    switch (status) {
      case Valid: return "valid";
      case CounterexampleFound: return "counterexample";
      case RandomPass: return "random-pass";
    }
    return "?";
  }
};

// splitmix64; used to derive independent per-instance streams from one seed.
inline uint64_t mix_seed(uint64_t seed, uint64_t index) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

template <class Alg>
std::string describe_assignment(const Alg& alg, const std::vector<int>& vars,
                                const std::vector<typename Alg::Element>& vals) {
  std::string s = "[";
  for (size_t k = 0; k < vars.size(); ++k) {
    if (k) s += ' ';
    s += "x" + std::to_string(vars[k]) + "=" + alg.element_to_string(vals[k]);
  }
  return s + "]";
}

template <class Alg>
Verdict check_equation(const Alg& alg, const Equation& eq,
                       const CheckStrategy& strat) {
  const std::vector<int> vars = free_vars(eq);
  const size_t nvars = vars.size();
  if (static_cast<int>(nvars) > strat.var_cap)
    throw BudgetError("equation " + eq.label + " has " +
                      std::to_string(nvars) + " variables, cap is " +
                      std::to_string(strat.var_cap));

  auto run_one = [&](const std::vector<typename Alg::Element>& vals)
      -> std::optional<Verdict> {
    Assignment<Alg> env;
    for (size_t k = 0; k < nvars; ++k) env.bind(vars[k], vals[k]);
    const auto lhs = eval(eq.lhs, alg, env);
    const auto rhs = eval(eq.rhs, alg, env);
    if (lhs == rhs) return std::nullopt;
    // Counterexamples re-evaluate before being reported.
    if (eval(eq.lhs, alg, env) == eval(eq.rhs, alg, env))
      throw Error("counterexample failed its own re-check (internal)");
    Verdict v;
    v.status = Verdict::CounterexampleFound;
    v.detail = describe_assignment(alg, vars, vals) +
               " lhs=" + alg.element_to_string(lhs) +
               " rhs=" + alg.element_to_string(rhs);
    return v;
  };

  if (strat.mode == CheckStrategy::Exhaustive) {
    const uint64_t bits = alg.carrier_bits();
    // carrier = 2^bits elements; all nvars-tuples must fit the budget
    uint64_t budget_bits = 0;
    while ((uint64_t(1) << budget_bits) < strat.budget) ++budget_bits;
    if (nvars > 0 && bits * nvars > budget_bits)
      throw BudgetError("exhaustive check of " + eq.label +
                        " needs 2^" + std::to_string(bits * nvars) +
                        " assignments, budget is 2^" +
                        std::to_string(budget_bits));
    const uint64_t total =
        nvars == 0 ? 1 : uint64_t(1) << (bits * nvars);
    const uint64_t carrier = uint64_t(1) << bits;
    std::vector<typename Alg::Element> vals;
    Verdict ok;
    for (uint64_t m = 0; m < total; ++m) {
      vals.clear();
      // lexicographic: x with the lowest index varies slowest
      for (size_t k = 0; k < nvars; ++k) {
        const uint64_t shift = bits * (nvars - 1 - k);
        vals.push_back(alg.element_from_bits((m >> shift) & (carrier - 1)));
      }
      if (auto v = run_one(vals)) {
        v->assignments_checked = m + 1;
        return *v;
      }
    }
    ok.status = Verdict::Valid;
    ok.assignments_checked = total;
    return ok;
  }

  std::mt19937_64 rng(strat.seed);
  std::vector<typename Alg::Element> vals;
  for (uint64_t n = 0; n < strat.samples; ++n) {
    vals.clear();
    for (size_t k = 0; k < nvars; ++k) vals.push_back(alg.random_element(rng));
    if (auto v = run_one(vals)) {
      v->assignments_checked = n + 1;
      return *v;
    }
  }
  Verdict v;
  v.status = nvars == 0 ? Verdict::Valid : Verdict::RandomPass;
  v.assignments_checked = strat.samples;
  return v;
}

// Full set algebras with a one-word point space run on the packed kernel;
// verdicts and report text are identical to the Relation path.
inline Verdict check_equation(const SetAlgebra& alg, const Equation& eq,
                              const CheckStrategy& strat) {
  if (alg.npoints() <= PackedSetAlgebra::kMaxPoints)
    return check_equation(PackedSetAlgebra(alg), eq, strat);
  return check_equation<SetAlgebra>(alg, eq, strat);
}

struct InstanceResult {
  std::string label;
  Verdict verdict;
};

struct SuiteReport {
  std::string suite_name;
  std::string algebra;
  std::string mode;
  uint64_t seed = 0;
  bool below_paper_scope = false;
  std::vector<std::string> warnings;
  std::vector<InstanceResult> results;

  size_t count(Verdict::Status s) const {
    size_t n = 0;
    for (const auto& r : results)
      if (r.verdict.status == s) ++n;
    return n;
  }
  bool all_passed() const {
    return count(Verdict::CounterexampleFound) == 0;
  }
  const InstanceResult* first_failure() const {
    for (const auto& r : results)
      if (!r.verdict.passed()) return &r;
    return nullptr;
  }

  // "LABEL  STATUS  [assignment...]" lines.
  std::string to_text() const;
  std::string summary_json() const;
};

template <class Alg>
SuiteReport check_suite(const Alg& alg, const suites::SuiteInstance& suite,
                        const CheckStrategy& strat, int threads = 1,
                        bool fail_fast = false) {
  SuiteReport rep;
  rep.suite_name = suites::to_string(suite.id);
  rep.algebra = alg.describe();
  rep.mode = strat.mode_name();
  rep.seed = strat.seed;
  rep.below_paper_scope = suite.sig.dim.below_paper_scope();
  rep.warnings = suite.warnings;
  rep.results.resize(suite.equations.size());

  auto run_index = [&](size_t k) {
    CheckStrategy per = strat;
    per.seed = mix_seed(strat.seed, k);  // thread-count independent streams
    rep.results[k] = {suite.equations[k].label,
                      check_equation(alg, suite.equations[k], per)};
  };

  if (threads <= 1 || fail_fast) {
    for (size_t k = 0; k < suite.equations.size(); ++k) {
      run_index(k);
      if (fail_fast && !rep.results[k].verdict.passed()) {
        rep.results.resize(k + 1);
        break;
      }
    }
    return rep;
  }

  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mu;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (size_t k = static_cast<size_t>(t); k < suite.equations.size();
             k += static_cast<size_t>(threads))
          run_index(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return rep;
}

}  // namespace cylkit
