#include "cylkit/term.hpp"

#include <algorithm>

namespace cylkit {

std::string to_string(SigTag tag) {
  switch (tag) {
    case SigTag::C: return "c";
    case SigTag::Cs: return "cs";
    case SigTag::Csp: return "csp";
    case SigTag::Cspd: return "cspd";
    case SigTag::Pa: return "pa";
    case SigTag::Any: return "any";
  }
  return "?";
}

std::optional<SigTag> sig_tag_from_string(const std::string& s) {
  if (s == "c") return SigTag::C;
  if (s == "cs") return SigTag::Cs;
  if (s == "csp") return SigTag::Csp;
  if (s == "cspd") return SigTag::Cspd;
  if (s == "pa") return SigTag::Pa;
  if (s == "any") return SigTag::Any;
  return std::nullopt;
}

bool Signature::admits(TermKind kind) const {
  if (tag == SigTag::Any) return true;
  switch (kind) {
    case TermKind::Var:
    case TermKind::Zero:
    case TermKind::One:
    case TermKind::Sum:
    case TermKind::Product:
    case TermKind::Complement:
      return true;
    case TermKind::Cyl:
      return tag != SigTag::Pa;
    case TermKind::Subst:
      return tag == SigTag::Cs || tag == SigTag::Csp || tag == SigTag::Cspd;
    case TermKind::Perm:
      return tag == SigTag::Csp || tag == SigTag::Cspd;
    case TermKind::Diag:
      return tag == SigTag::Cspd;
    case TermKind::CylSet:
    case TermKind::SubstSigma:
      return tag == SigTag::Pa;
  }
  return false;
}

std::string Signature::to_string() const {
  return cylkit::to_string(tag) + "/alpha=" + std::to_string(dim.alpha());
}

namespace {

TermPtr leaf(TermKind k) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  return t;
}

}  // namespace

TermPtr Term::make_var(int n) {
  if (n < 0 || n > 9) throw InputError("variables are x0..x9");
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->var = n;
  return t;
}

TermPtr Term::zero() { return leaf(TermKind::Zero); }
TermPtr Term::one() { return leaf(TermKind::One); }

TermPtr Term::sum(TermPtr a, TermPtr b) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Sum;
  t->children = {std::move(a), std::move(b)};
  return t;
}

TermPtr Term::product(TermPtr a, TermPtr b) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Product;
  t->children = {std::move(a), std::move(b)};
  return t;
}

TermPtr Term::complement(TermPtr a) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Complement;
  t->children = {std::move(a)};
  return t;
}

TermPtr Term::cyl(int i, TermPtr a) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Cyl;
  t->i = i;
  t->children = {std::move(a)};
  return t;
}

TermPtr Term::cyl_set(std::vector<int> gamma, TermPtr a) {
  std::sort(gamma.begin(), gamma.end());
  gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
  auto t = std::make_shared<Term>();
  t->kind = TermKind::CylSet;
  t->gamma = std::move(gamma);
  t->children = {std::move(a)};
  return t;
}

TermPtr Term::subst(int i, int j, TermPtr a) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Subst;
  t->i = i;
  t->j = j;
  t->children = {std::move(a)};
  return t;
}

TermPtr Term::perm(int i, int j, TermPtr a) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Perm;
  t->i = i;
  t->j = j;
  t->children = {std::move(a)};
  return t;
}

TermPtr Term::diag(int i, int j) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Diag;
  t->i = i;
  t->j = j;
  return t;
}

TermPtr Term::subst_sigma(std::vector<uint8_t> map, TermPtr a) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::SubstSigma;
  t->sigma_map = std::move(map);
  t->children = {std::move(a)};
  return t;
}

TermPtr Term::subst_sigma(const Transformation& sigma, TermPtr a) {
  return subst_sigma(sigma.map(), std::move(a));
}

bool structurally_equal(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.var != b.var || a.i != b.i || a.j != b.j ||
      a.gamma != b.gamma || a.sigma_map != b.sigma_map ||
      a.children.size() != b.children.size())
    return false;
  for (size_t k = 0; k < a.children.size(); ++k)
    if (!structurally_equal(*a.children[k], *b.children[k])) return false;
  return true;
}

bool structurally_equal(const TermPtr& a, const TermPtr& b) {
  return structurally_equal(*a, *b);
}

namespace {

void print_into(const Term& t, std::string& out) {
  switch (t.kind) {
    case TermKind::Var:
      out += 'x';
      out += std::to_string(t.var);
      return;
    case TermKind::Zero:
      out += '0';
      return;
    case TermKind::One:
      out += '1';
      return;
    case TermKind::Sum:
    case TermKind::Product:
      out += '(';
      print_into(*t.children[0], out);
      out += (t.kind == TermKind::Sum) ? '+' : '*';
      print_into(*t.children[1], out);
      out += ')';
      return;
    case TermKind::Complement:
      out += '-';
      print_into(*t.children[0], out);
      return;
    case TermKind::Cyl:
      out += "c(";
      out += std::to_string(t.i);
      out += ',';
      print_into(*t.children[0], out);
      out += ')';
      return;
    case TermKind::CylSet: {
      out += "cg({";
      for (size_t k = 0; k < t.gamma.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(t.gamma[k]);
      }
      out += "},";
      print_into(*t.children[0], out);
      out += ')';
      return;
    }
    case TermKind::Subst:
    case TermKind::Perm:
      out += (t.kind == TermKind::Subst) ? "s(" : "p(";
      out += std::to_string(t.i);
      out += ',';
      out += std::to_string(t.j);
      out += ',';
      print_into(*t.children[0], out);
      out += ')';
      return;
    case TermKind::Diag:
      out += "d(";
      out += std::to_string(t.i);
      out += ',';
      out += std::to_string(t.j);
      out += ')';
      return;
    case TermKind::SubstSigma: {
      out += "ssub([";
      for (size_t k = 0; k < t.sigma_map.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(int(t.sigma_map[k]));
      }
      out += "],";
      print_into(*t.children[0], out);
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string print(const TermPtr& t) {
  std::string out;
  print_into(*t, out);
  return out;
}

std::string print(const Equation& e) { return print(e.lhs) + "=" + print(e.rhs); }

int max_var(const TermPtr& t) {
  int m = (t->kind == TermKind::Var) ? t->var : -1;
  for (const auto& c : t->children) m = std::max(m, max_var(c));
  return m;
}

namespace {

void collect_vars(const Term& t, std::vector<bool>& seen) {
  if (t.kind == TermKind::Var) seen[static_cast<size_t>(t.var)] = true;
  for (const auto& c : t.children) collect_vars(*c, seen);
}

bool has_complement(const Term& t) {
  if (t.kind == TermKind::Complement) return true;
  for (const auto& c : t.children)
    if (has_complement(*c)) return true;
  return false;
}

}  // namespace

std::vector<int> free_vars(const Equation& e) {
  std::vector<bool> seen(10, false);
  collect_vars(*e.lhs, seen);
  collect_vars(*e.rhs, seen);
  std::vector<int> out;
  for (int v = 0; v < 10; ++v)
    if (seen[static_cast<size_t>(v)]) out.push_back(v);
  return out;
}

bool is_positive(const Equation& e) {
  return !has_complement(*e.lhs) && !has_complement(*e.rhs);
}

bool reduct_check(const TermPtr& t, const Signature& sig) {
  if (!sig.admits(t->kind)) return false;
  const int alpha = sig.dim.alpha();
  if ((t->kind == TermKind::Cyl && t->i >= alpha) ||
      ((t->kind == TermKind::Subst || t->kind == TermKind::Perm ||
        t->kind == TermKind::Diag) &&
       (t->i >= alpha || t->j >= alpha)))
    return false;
  if (t->kind == TermKind::CylSet)
    for (int g : t->gamma)
      if (g >= alpha) return false;
  if (t->kind == TermKind::SubstSigma) {
    if (static_cast<int>(t->sigma_map.size()) != alpha) return false;
    for (uint8_t v : t->sigma_map)
      if (v >= alpha) return false;
  }
  for (const auto& c : t->children)
    if (!reduct_check(c, sig)) return false;
  return true;
}

bool reduct_check(const Equation& e, const Signature& sig) {
  return reduct_check(e.lhs, sig) && reduct_check(e.rhs, sig);
}

TermPtr expand_sigma(const TermPtr& t) {
  std::vector<TermPtr> kids;
  kids.reserve(t->children.size());
  for (const auto& c : t->children) kids.push_back(expand_sigma(c));

  switch (t->kind) {
    case TermKind::SubstSigma: {
      Transformation sigma(Dimension(static_cast<int>(t->sigma_map.size())),
                           t->sigma_map);
      TermPtr inner = kids[0];
      auto gens = decompose(sigma);
      // sigma = g0 o ... o gm gives s_sigma = s_{g0} ... s_{gm}: innermost
      // generator is the last of the list.
      for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
        int gi = -1, gj = -1;
        if (it->is_transposition()) {
          for (int k = 0; k < it->alpha(); ++k)
            if ((*it)(k) != k) {
              gi = k;
              gj = (*it)(k);
              break;
            }
          inner = Term::perm(gi, gj, inner);
        } else {
          for (int k = 0; k < it->alpha(); ++k)
            if ((*it)(k) != k) {
              gi = k;
              gj = (*it)(k);
              break;
            }
          inner = Term::subst(gi, gj, inner);
        }
      }
      return inner;
    }
    case TermKind::CylSet: {
      TermPtr inner = kids[0];
      for (auto it = t->gamma.rbegin(); it != t->gamma.rend(); ++it)
        inner = Term::cyl(*it, inner);
      return inner;
    }
    default: {
      auto copy = std::make_shared<Term>(*t);
      copy->children = std::move(kids);
      return copy;
    }
  }
}

}  // namespace cylkit
