#pragma once

#include <optional>
#include <vector>

#include "cylkit/term.hpp"

// Structural-recursion evaluator, generic over any algebra providing the
// operator vocabulary (SetAlgebra, duality::FiniteAlgebra, or a view).
// Operators the algebra does not carry raise UnsupportedOperation.

namespace cylkit {

template <class Alg>
struct Assignment {
  std::vector<std::optional<typename Alg::Element>> vars;

  void bind(int var, typename Alg::Element e) {
    if (var < 0 || var > 9) throw InputError("variables are x0..x9");
    if (vars.size() <= static_cast<size_t>(var)) vars.resize(static_cast<size_t>(var) + 1);
    vars[static_cast<size_t>(var)] = std::move(e);
  }
  const typename Alg::Element& get(int var) const {
    if (var < 0 || static_cast<size_t>(var) >= vars.size() ||
        !vars[static_cast<size_t>(var)])
      throw InputError("unbound variable x" + std::to_string(var));
    return *vars[static_cast<size_t>(var)];
  }
};

template <class Alg>
typename Alg::Element eval(const Term& t, const Alg& alg,
                           const Assignment<Alg>& env) {
  switch (t.kind) {
    case TermKind::Var:
      return env.get(t.var);
    case TermKind::Zero:
      return alg.zero();
    case TermKind::One:
      return alg.one();
    case TermKind::Sum:
      return alg.sum(eval(*t.children[0], alg, env),
                     eval(*t.children[1], alg, env));
    case TermKind::Product:
      return alg.product(eval(*t.children[0], alg, env),
                         eval(*t.children[1], alg, env));
    case TermKind::Complement:
      return alg.complement(eval(*t.children[0], alg, env));
    case TermKind::Cyl:
      return alg.cyl(t.i, eval(*t.children[0], alg, env));
    case TermKind::CylSet:
      return alg.cyl_set(t.gamma, eval(*t.children[0], alg, env));
    case TermKind::Subst:
      return alg.subst(t.i, t.j, eval(*t.children[0], alg, env));
    case TermKind::Perm:
      return alg.perm(t.i, t.j, eval(*t.children[0], alg, env));
    case TermKind::Diag:
      return alg.diag(t.i, t.j);
    case TermKind::SubstSigma: {
      Transformation sigma(Dimension(static_cast<int>(t.sigma_map.size())),
                           t.sigma_map);
      return alg.subst_sigma(sigma, eval(*t.children[0], alg, env));
    }
  }
  throw Error("eval: unknown node kind");
}

template <class Alg>
typename Alg::Element eval(const TermPtr& t, const Alg& alg,
                           const Assignment<Alg>& env) {
  return eval(*t, alg, env);
}

}  // namespace cylkit
