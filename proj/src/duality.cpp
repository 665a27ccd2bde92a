#include "cylkit/duality.hpp"

#include <algorithm>
#include <bit>

#include "cylkit/check.hpp"
#include "json.hpp"

namespace cylkit::duality {

using nlohmann::json;

AtomStructure::AtomStructure(int n, Dimension d) : atoms(n), dim(d) {
  if (n < 1 || n > kMaxAtoms)
    throw InputError("atom count must be in [1," + std::to_string(kMaxAtoms) +
                     "]");
  const size_t a = static_cast<size_t>(d.alpha());
  T.resize(a);
  R.resize(a * a);
  P.resize(a * a);
  D.resize(a * a);
}

namespace {

void check_pairs(const std::vector<AtomPair>& pairs, int atoms) {
  for (auto [x, y] : pairs)
    if (x < 0 || x >= atoms || y < 0 || y >= atoms)
      throw InputError("relation pair out of atom range");
}

std::vector<AtomPair> sorted_unique(std::vector<AtomPair> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace

void AtomStructure::set_T(int i, std::vector<AtomPair> pairs) {
  check_pairs(pairs, atoms);
  T[static_cast<size_t>(i)] = sorted_unique(std::move(pairs));
}
void AtomStructure::set_R(int i, int j, std::vector<AtomPair> pairs) {
  check_pairs(pairs, atoms);
  R[rp_index(i, j)] = sorted_unique(std::move(pairs));
}
void AtomStructure::set_P(int i, int j, std::vector<AtomPair> pairs) {
  check_pairs(pairs, atoms);
  P[rp_index(i, j)] = sorted_unique(std::move(pairs));
}
void AtomStructure::set_D(int i, int j, std::vector<int> atom_set) {
  for (int a : atom_set)
    if (a < 0 || a >= atoms) throw InputError("diagonal atom out of range");
  std::sort(atom_set.begin(), atom_set.end());
  atom_set.erase(std::unique(atom_set.begin(), atom_set.end()),
                 atom_set.end());
  D[rp_index(i, j)] = std::move(atom_set);
}

bool AtomStructure::operator==(const AtomStructure& o) const {
  return atoms == o.atoms && dim == o.dim && T == o.T && R == o.R &&
         P == o.P && D == o.D;
}

namespace {

json pairs_to_json(const std::optional<std::vector<AtomPair>>& v) {
  if (!v) return nullptr;
  json arr = json::array();
  for (auto [x, y] : *v) arr.push_back(json::array({x, y}));
  return arr;
}

std::optional<std::vector<AtomPair>> pairs_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  std::vector<AtomPair> out;
  for (const auto& p : j) out.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  return out;
}

}  // namespace

std::string AtomStructure::to_json() const {
  json j;
  j["atoms"] = atoms;
  j["alpha"] = dim.alpha();
  if (!names.empty()) j["names"] = names;
  json t = json::array();
  for (const auto& rel : T) t.push_back(pairs_to_json(rel));
  j["T"] = t;
  auto family = [](const std::vector<std::optional<std::vector<AtomPair>>>& f) {
    json arr = json::array();
    bool any = false;
    for (const auto& rel : f) {
      arr.push_back(pairs_to_json(rel));
      any = any || rel.has_value();
    }
    return any ? arr : json(nullptr);
  };
  json r = family(R);
  if (!r.is_null()) j["R"] = r;
  json p = family(P);
  if (!p.is_null()) j["P"] = p;
  json d = json::array();
  bool any_d = false;
  for (const auto& set : D) {
    d.push_back(set ? json(*set) : json(nullptr));
    any_d = any_d || set.has_value();
  }
  if (any_d) j["D"] = d;
  return j.dump(2);
}

AtomStructure AtomStructure::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("bad structure JSON: ") + e.what());
  }
  try {
    AtomStructure s(j.at("atoms").get<int>(), Dimension(j.at("alpha").get<int>()));
    if (j.contains("names")) s.names = j["names"].get<std::vector<std::string>>();
    const auto& t = j.at("T");
    if (t.size() != static_cast<size_t>(s.dim.alpha()))
      throw InputError("T must have one entry per i < alpha");
    for (size_t i = 0; i < t.size(); ++i)
      if (auto v = pairs_from_json(t[i])) s.set_T(static_cast<int>(i), *v);
    auto read_family = [&](const char* key, auto setter) {
      if (!j.contains(key)) return;
      const auto& f = j[key];
      const size_t a2 = static_cast<size_t>(s.dim.alpha()) *
                        static_cast<size_t>(s.dim.alpha());
      if (f.size() != a2)
        throw InputError(std::string(key) + " must have alpha^2 entries");
      for (size_t k = 0; k < a2; ++k) {
        int i = static_cast<int>(k) / s.dim.alpha();
        int jj = static_cast<int>(k) % s.dim.alpha();
        setter(i, jj, f[k]);
      }
    };
    read_family("R", [&](int i, int jj, const json& v) {
      if (auto p = pairs_from_json(v)) s.set_R(i, jj, *p);
    });
    read_family("P", [&](int i, int jj, const json& v) {
      if (auto p = pairs_from_json(v)) s.set_P(i, jj, *p);
    });
    read_family("D", [&](int i, int jj, const json& v) {
      if (!v.is_null()) s.set_D(i, jj, v.get<std::vector<int>>());
    });
    return s;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad structure JSON: ") + e.what());
  }
}

FiniteAlgebra::FiniteAlgebra(AtomStructure s)
    : structure_(std::move(s)),
      mask_(structure_.atoms == kMaxAtoms + 1
                ? ~Element(0)
                : (Element(1) << structure_.atoms) - 1) {}

FiniteAlgebra FiniteAlgebra::cm(const AtomStructure& s) {
  FiniteAlgebra a(s);
  auto build = [&](const std::optional<std::vector<AtomPair>>& rel)
      -> std::optional<std::vector<Element>> {
    if (!rel) return std::nullopt;
    std::vector<Element> succ(static_cast<size_t>(a.atoms()), 0);
    for (auto [x, y] : *rel) succ[static_cast<size_t>(x)] |= Element(1) << y;
    return succ;
  };
  for (const auto& rel : a.structure_.T) a.t_succ_.push_back(build(rel));
  for (const auto& rel : a.structure_.R) a.r_succ_.push_back(build(rel));
  for (const auto& rel : a.structure_.P) a.p_succ_.push_back(build(rel));
  for (const auto& set : a.structure_.D) {
    if (!set) {
      a.d_elem_.push_back(std::nullopt);
      continue;
    }
    Element e = 0;
    for (int atom : *set) e |= Element(1) << atom;
    a.d_elem_.push_back(e);
  }
  return a;
}

FiniteAlgebra FiniteAlgebra::from_tables(
    int atoms, Dimension dim,
    const std::vector<std::vector<Element>>& cyl_tables,
    const std::vector<std::optional<std::vector<Element>>>& subst_tables,
    const std::vector<std::optional<std::vector<Element>>>& perm_tables,
    const std::vector<std::optional<Element>>& diag_elems) {
  if (atoms < 1 || atoms > 20)
    throw InputError("from_tables supports 1..20 atoms");
  const uint64_t carrier = uint64_t(1) << atoms;
  AtomStructure s(atoms, dim);

  auto check_table = [&](const std::vector<Element>& table, const char* what) {
    if (table.size() != carrier)
      throw InputError(std::string(what) +
                       " table must cover the full carrier (power set of "
                       "atoms); got " +
                       std::to_string(table.size()) + " entries");
    if (table[0] != 0)
      throw InputError(std::string(what) + " table is not additive: f(0) != 0");
    for (uint64_t x = 0; x < carrier; ++x) {
      Element expected = 0;
      for (int atom = 0; atom < atoms; ++atom)
        if ((x >> atom) & 1) expected |= table[uint64_t(1) << atom];
      if (table[x] != expected)
        throw InputError(std::string(what) +
                         " table is not completely additive at element " +
                         std::to_string(x));
    }
  };

  if (static_cast<int>(cyl_tables.size()) != dim.alpha())
    throw InputError("need one cylindrification table per i < alpha");
  for (int i = 0; i < dim.alpha(); ++i) {
    check_table(cyl_tables[static_cast<size_t>(i)], "c");
    std::vector<AtomPair> pairs;
    for (int x = 0; x < atoms; ++x) {
      Element img = cyl_tables[static_cast<size_t>(i)][uint64_t(1) << x];
      for (int y = 0; y < atoms; ++y)
        if ((img >> y) & 1) pairs.emplace_back(x, y);
    }
    s.set_T(i, std::move(pairs));
  }
  auto fill_family = [&](const std::vector<std::optional<std::vector<Element>>>&
                             tables,
                         const char* what, auto setter) {
    if (tables.empty()) return;
    const size_t a2 = static_cast<size_t>(dim.alpha()) *
                      static_cast<size_t>(dim.alpha());
    if (tables.size() != a2)
      throw InputError(std::string(what) + " tables must have alpha^2 entries");
    for (size_t k = 0; k < a2; ++k) {
      if (!tables[k]) continue;
      check_table(*tables[k], what);
      std::vector<AtomPair> pairs;
      for (int x = 0; x < atoms; ++x) {
        Element img = (*tables[k])[uint64_t(1) << x];
        for (int y = 0; y < atoms; ++y)
          if ((img >> y) & 1) pairs.emplace_back(x, y);
      }
      setter(static_cast<int>(k) / dim.alpha(),
             static_cast<int>(k) % dim.alpha(), std::move(pairs));
    }
  };
  fill_family(subst_tables, "s", [&](int i, int j, std::vector<AtomPair> p) {
    s.set_R(i, j, std::move(p));
  });
  fill_family(perm_tables, "p", [&](int i, int j, std::vector<AtomPair> p) {
    s.set_P(i, j, std::move(p));
  });
  if (!diag_elems.empty()) {
    const size_t a2 = static_cast<size_t>(dim.alpha()) *
                      static_cast<size_t>(dim.alpha());
    if (diag_elems.size() != a2)
      throw InputError("d elements must have alpha^2 entries");
    for (size_t k = 0; k < a2; ++k) {
      if (!diag_elems[k]) continue;
      std::vector<int> atoms_in;
      for (int atom = 0; atom < atoms; ++atom)
        if ((*diag_elems[k] >> atom) & 1) atoms_in.push_back(atom);
      s.set_D(static_cast<int>(k) / dim.alpha(),
              static_cast<int>(k) % dim.alpha(), std::move(atoms_in));
    }
  }
  return cm(s);
}

FiniteAlgebra::Element FiniteAlgebra::apply_succ(
    const std::vector<Element>& succ, Element a) const {
  Element out = 0;
  while (a) {
    const int x = std::countr_zero(a);
    a &= a - 1;
    out |= succ[static_cast<size_t>(x)];
  }
  return out;
}

FiniteAlgebra::Element FiniteAlgebra::cyl(int i, Element a) const {
  if (i < 0 || i >= dim().alpha() || !t_succ_[static_cast<size_t>(i)])
    throw UnsupportedOperation("algebra has no c_" + std::to_string(i));
  return apply_succ(*t_succ_[static_cast<size_t>(i)], a);
}

FiniteAlgebra::Element FiniteAlgebra::cyl_set(const std::vector<int>& g,
                                              Element a) const {
  std::vector<int> gs = g;
  std::sort(gs.begin(), gs.end());
  Element out = a;
  for (auto it = gs.rbegin(); it != gs.rend(); ++it) out = cyl(*it, out);
  return out;
}

FiniteAlgebra::Element FiniteAlgebra::subst(int i, int j, Element a) const {
  const auto& succ = r_succ_[structure_.rp_index(i, j)];
  if (!succ)
    throw UnsupportedOperation("algebra has no s_" + std::to_string(i) +
                               std::to_string(j) + " table");
  return apply_succ(*succ, a);
}

FiniteAlgebra::Element FiniteAlgebra::perm(int i, int j, Element a) const {
  const auto& succ = p_succ_[structure_.rp_index(i, j)];
  if (!succ)
    throw UnsupportedOperation("algebra has no p_" + std::to_string(i) +
                               std::to_string(j) + " table");
  return apply_succ(*succ, a);
}

FiniteAlgebra::Element FiniteAlgebra::diag(int i, int j) const {
  const auto& e = d_elem_[structure_.rp_index(i, j)];
  if (!e)
    throw UnsupportedOperation("algebra has no d_" + std::to_string(i) +
                               std::to_string(j));
  return *e;
}

bool FiniteAlgebra::has_cyl(int i) const {
  return i >= 0 && i < dim().alpha() && t_succ_[static_cast<size_t>(i)].has_value();
}
bool FiniteAlgebra::has_subst(int i, int j) const {
  return r_succ_[structure_.rp_index(i, j)].has_value();
}
bool FiniteAlgebra::has_perm(int i, int j) const {
  return p_succ_[structure_.rp_index(i, j)].has_value();
}
bool FiniteAlgebra::has_diag(int i, int j) const {
  return d_elem_[structure_.rp_index(i, j)].has_value();
}

std::string FiniteAlgebra::element_to_string(Element e) const {
  std::string s = "{";
  bool first = true;
  for (int atom = 0; atom < atoms(); ++atom) {
    if (!((e >> atom) & 1)) continue;
    if (!first) s += ',';
    first = false;
    s += (static_cast<size_t>(atom) < structure_.names.size())
             ? structure_.names[static_cast<size_t>(atom)]
             : "a" + std::to_string(atom);
  }
  return s + "}";
}

std::string FiniteAlgebra::describe() const {
  return "Cm(" + std::to_string(atoms()) + " atoms, alpha=" +
         std::to_string(dim().alpha()) + ")";
}

AtomStructure uf(const FiniteAlgebra& a) {
  AtomStructure s(a.atoms(), a.dim());
  s.names = a.structure().names;
  const int n = a.atoms();
  auto dual_pairs = [&](auto op) {
    std::vector<AtomPair> pairs;
    for (int x = 0; x < n; ++x) {
      const FiniteAlgebra::Element img = op(FiniteAlgebra::Element(1) << x);
      for (int y = 0; y < n; ++y)
        if ((img >> y) & 1) pairs.emplace_back(x, y);
    }
    return pairs;
  };
  for (int i = 0; i < a.dim().alpha(); ++i)
    if (a.has_cyl(i))
      s.set_T(i, dual_pairs([&](FiniteAlgebra::Element e) { return a.cyl(i, e); }));
  for (int i = 0; i < a.dim().alpha(); ++i)
    for (int j = 0; j < a.dim().alpha(); ++j) {
      if (a.has_subst(i, j))
        s.set_R(i, j, dual_pairs([&](FiniteAlgebra::Element e) {
                  return a.subst(i, j, e);
                }));
      if (a.has_perm(i, j))
        s.set_P(i, j, dual_pairs([&](FiniteAlgebra::Element e) {
                  return a.perm(i, j, e);
                }));
      if (a.has_diag(i, j)) {
        std::vector<int> atoms_in;
        for (int atom = 0; atom < n; ++atom)
          if ((a.diag(i, j) >> atom) & 1) atoms_in.push_back(atom);
        s.set_D(i, j, std::move(atoms_in));
      }
    }
  return s;
}

RoundtripReport em_roundtrip(const FiniteAlgebra& a) {
  const FiniteAlgebra b = FiniteAlgebra::cm(uf(a));
  RoundtripReport rep;
  if (b.atoms() != a.atoms()) {
    rep.detail = "atom counts differ";
    return rep;
  }
  const uint64_t carrier = uint64_t(1) << a.atoms();
  // The Jonsson-Tarski map sends x to its atom-set, which in this
  // presentation is x itself; it remains to check every operator agrees.
  for (uint64_t x = 0; x < carrier; ++x) {
    for (int i = 0; i < a.dim().alpha(); ++i) {
      if (!a.has_cyl(i)) continue;
      if (a.cyl(i, x) != b.cyl(i, x)) {
        rep.detail = "c_" + std::to_string(i) + " disagrees at element " +
                     a.element_to_string(x);
        return rep;
      }
    }
    for (int i = 0; i < a.dim().alpha(); ++i)
      for (int j = 0; j < a.dim().alpha(); ++j) {
        if (a.has_subst(i, j) && a.subst(i, j, x) != b.subst(i, j, x)) {
          rep.detail = "s table disagrees";
          return rep;
        }
        if (a.has_perm(i, j) && a.perm(i, j, x) != b.perm(i, j, x)) {
          rep.detail = "p table disagrees";
          return rep;
        }
      }
  }
  for (int i = 0; i < a.dim().alpha(); ++i)
    for (int j = 0; j < a.dim().alpha(); ++j)
      if (a.has_diag(i, j) && a.diag(i, j) != b.diag(i, j)) {
        rep.detail = "d element disagrees";
        return rep;
      }
  rep.isomorphic = true;
  return rep;
}

AtomStructure seq_structure(Dimension dim, const Base& base, SigTag flavor) {
  const uint64_t npoints = point_count(dim, base);
  if (npoints > kMaxAtoms)
    throw BudgetError("sequence structure needs |U|^alpha <= " +
                      std::to_string(kMaxAtoms) + " atoms");
  AtomStructure s(static_cast<int>(npoints), dim);

  for (int i = 0; i < dim.alpha(); ++i) {
    std::vector<AtomPair> pairs;
    for (uint64_t k = 0; k < npoints; ++k) {
      auto c = decode_point(k, dim, base);
      for (uint32_t u = 0; u < base.size; ++u) {
        auto z = c;
        z[static_cast<size_t>(i)] = u;
        pairs.emplace_back(static_cast<int>(k),
                           static_cast<int>(encode_point(z, base)));
      }
    }
    s.set_T(i, std::move(pairs));
  }

  const bool with_s = flavor == SigTag::Cs || flavor == SigTag::Csp ||
                      flavor == SigTag::Cspd;
  const bool with_p = flavor == SigTag::Csp || flavor == SigTag::Cspd;
  const bool with_d = flavor == SigTag::Cspd;
  for (int i = 0; i < dim.alpha() && with_s; ++i)
    for (int j = 0; j < dim.alpha(); ++j) {
      // <s,z> in R_ij iff s = z o [i/j]: then R*(A) = S_ij(A) exactly.
      auto rel_for = [&](const Transformation& t) {
        std::vector<AtomPair> pairs;
        for (uint64_t z = 0; z < npoints; ++z) {
          auto c = decode_point(z, dim, base);
          std::vector<uint32_t> src(c.size());
          for (int m = 0; m < dim.alpha(); ++m)
            src[static_cast<size_t>(m)] = c[t(m)];
          pairs.emplace_back(static_cast<int>(encode_point(src, base)),
                             static_cast<int>(z));
        }
        return pairs;
      };
      s.set_R(i, j, rel_for(Transformation::replacement(i, j, dim)));
      if (with_p) s.set_P(i, j, rel_for(Transformation::transposition(i, j, dim)));
    }
  if (with_d)
    for (int i = 0; i < dim.alpha(); ++i)
      for (int j = 0; j < dim.alpha(); ++j) {
        std::vector<int> atoms_in;
        for (uint64_t k = 0; k < npoints; ++k) {
          auto c = decode_point(k, dim, base);
          if (c[static_cast<size_t>(i)] == c[static_cast<size_t>(j)])
            atoms_in.push_back(static_cast<int>(k));
        }
        s.set_D(i, j, std::move(atoms_in));
      }
  return s;
}

PositiveReport preserves_positive(const Equation& e, const FiniteAlgebra& a) {
  if (!is_positive(e))
    throw InputError("equation is not positive: " + print(e));
  PositiveReport rep;
  CheckStrategy strat;
  strat.mode = CheckStrategy::Exhaustive;
  const Verdict va = check_equation(a, e, strat);
  const FiniteAlgebra em = FiniteAlgebra::cm(uf(a));
  const Verdict vem = check_equation(em, e, strat);
  rep.holds_in_a = va.status == Verdict::Valid;
  rep.holds_in_em = vem.status == Verdict::Valid;
  rep.consistent = !rep.holds_in_a || rep.holds_in_em;
  if (!rep.consistent)
    rep.detail = "equation holds in A but not in Em(A): " + vem.detail;
  return rep;
}

}  // namespace cylkit::duality
