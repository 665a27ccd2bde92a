#include "cylkit/represent.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "json.hpp"

namespace cylkit::represent {

using nlohmann::json;

BlowupMap::BlowupMap(Dimension dim, Base u, uint32_t w_size)
    : dim_(dim), u_(std::move(u)), w_(w_size), v_(u_.size * w_size) {
  if (w_size < 1) throw InputError("blow-up factor W must be nonempty");
  const uint64_t npoints_v = point_count(dim_, v_);
  proj_table_.reserve(npoints_v);
  const int alpha = dim_.alpha();
  std::vector<uint32_t> down(static_cast<size_t>(alpha));
  for (uint64_t t = 0; t < npoints_v; ++t) {
    const auto coords = decode_point(t, dim_, v_);
    for (int m = 0; m < alpha; ++m)
      down[static_cast<size_t>(m)] = proj_u(coords[static_cast<size_t>(m)]);
    proj_table_.push_back(encode_point(down, u_));
  }
}

Relation BlowupMap::lift(const Relation& x) const {
  if (x.dim() != dim_ || x.base() != u_)
    throw DimensionError("blowup lift: element lives over the wrong base");
  Relation out(dim_, v_);
  for (uint64_t t = 0; t < proj_table_.size(); ++t)
    if (x.test(proj_table_[t])) out.set(t);
  return out;
}

Relation BlowupMap::lift_point(const std::vector<uint32_t>& s) const {
  return lift(Relation::singleton(s, dim_, u_));
}

DomPartitionReport analyze_dom_partition(const std::vector<Relation>& atoms,
                                         const Relation& d, int i, int j) {
  DomPartitionReport rep;
  std::vector<std::vector<uint32_t>> doms_i, doms_j;
  for (const auto& a : atoms) {
    if (!a.subset_of(d))
      throw InputError("dom partition: atom not below the diagonal element");
    doms_i.push_back(dom_i(i, a));
    doms_j.push_back(dom_i(j, a));
  }
  std::vector<bool> assigned(atoms.size(), false);
  for (size_t a = 0; a < atoms.size(); ++a) {
    if (assigned[a]) continue;
    std::vector<size_t> cls{a};
    assigned[a] = true;
    for (size_t b = a + 1; b < atoms.size(); ++b) {
      if (assigned[b]) continue;
      if (doms_i[a] == doms_i[b] && doms_j[a] == doms_j[b]) {
        cls.push_back(b);
        assigned[b] = true;
      }
    }
    rep.classes.push_back(std::move(cls));
  }
  auto disjoint = [](const std::vector<uint32_t>& x,
                     const std::vector<uint32_t>& y) {
    for (uint32_t v : x)
      if (std::binary_search(y.begin(), y.end(), v)) return false;
    return true;
  };
  for (size_t a = 0; a < atoms.size() && rep.dichotomy_ok; ++a)
    for (size_t b = a + 1; b < atoms.size(); ++b) {
      const bool eq = doms_i[a] == doms_i[b] && doms_j[a] == doms_j[b];
      const bool dis =
          disjoint(doms_i[a], doms_i[b]) && disjoint(doms_j[a], doms_j[b]);
      if (!eq && !dis) {
        rep.dichotomy_ok = false;
        rep.witness = "atoms #" + std::to_string(a) + ", #" +
                      std::to_string(b) + " are neither equal-dom nor disjoint-dom";
        break;
      }
    }
  rep.dom_i_covers =
      dom_i(i, d).size() == static_cast<size_t>(d.base().size);
  rep.dom_j_covers =
      dom_i(j, d).size() == static_cast<size_t>(d.base().size);
  return rep;
}

Bijection Bijection::identity(uint32_t n) {
  Bijection b;
  b.fwd.resize(n);
  b.inv.resize(n);
  for (uint32_t v = 0; v < n; ++v) b.fwd[v] = b.inv[v] = v;
  return b;
}

namespace {

// Kuhn's augmenting-path matching on an explicit bipartite graph.
class KuhnMatcher {
 public:
  KuhnMatcher(size_t left, size_t right) : adj_(left), match_right_(right, -1) {}

  void add_edge(size_t l, size_t r) { adj_[l].push_back(static_cast<int>(r)); }

  // Returns match for each left node, or empty if not perfect.
  std::vector<int> solve() {
    std::vector<int> match_left(adj_.size(), -1);
    for (size_t l = 0; l < adj_.size(); ++l) {
      visited_.assign(match_right_.size(), false);
      if (!augment(static_cast<int>(l))) return {};
    }
    for (size_t r = 0; r < match_right_.size(); ++r)
      if (match_right_[r] >= 0) match_left[static_cast<size_t>(match_right_[r])] = static_cast<int>(r);
    return match_left;
  }

 private:
  bool augment(int l) {
    for (int r : adj_[static_cast<size_t>(l)]) {
      if (visited_[static_cast<size_t>(r)]) continue;
      visited_[static_cast<size_t>(r)] = true;
      if (match_right_[static_cast<size_t>(r)] < 0 ||
          augment(match_right_[static_cast<size_t>(r)])) {
        match_right_[static_cast<size_t>(r)] = l;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> match_right_;
  std::vector<bool> visited_;
};

std::set<std::pair<uint32_t, uint32_t>> coordinate_pairs(const Relation& a,
                                                         int i, int j) {
  std::set<std::pair<uint32_t, uint32_t>> out;
  for (uint64_t k = 0; k < a.npoints(); ++k) {
    if (!a.test(k)) continue;
    const auto c = decode_point(k, a.dim(), a.base());
    out.emplace(c[static_cast<size_t>(i)], c[static_cast<size_t>(j)]);
  }
  return out;
}

}  // namespace

Bijection build_f0i(const std::vector<Relation>& atoms_below_d, int i,
                    const DomPartitionReport& partition, uint32_t v_size) {
  if (atoms_below_d.empty())
    throw InputError("build_f0i: no atoms below the diagonal element");
  constexpr uint32_t kUnset = ~uint32_t(0);
  Bijection out;
  out.fwd.assign(v_size, kUnset);
  out.inv.assign(v_size, kUnset);

  for (const auto& cls : partition.classes) {
    const auto d0 = dom_i(0, atoms_below_d[cls.front()]);
    const auto di = dom_i(i, atoms_below_d[cls.front()]);
    if (d0.size() != di.size())
      throw MatchingError("matching failed; increase W (dom_0 and dom_i of a "
                          "class have different sizes)");
    // Pairs realizable in every member of the class; the shared matching
    // must live inside each member.
    auto edges = coordinate_pairs(atoms_below_d[cls.front()], 0, i);
    for (size_t m = 1; m < cls.size(); ++m) {
      const auto more = coordinate_pairs(atoms_below_d[cls[m]], 0, i);
      std::set<std::pair<uint32_t, uint32_t>> keep;
      for (const auto& e : edges)
        if (more.count(e)) keep.insert(e);
      edges = std::move(keep);
    }
    KuhnMatcher matcher(d0.size(), di.size());
    for (const auto& [u, v] : edges) {
      const auto lu = std::lower_bound(d0.begin(), d0.end(), u) - d0.begin();
      const auto rv = std::lower_bound(di.begin(), di.end(), v) - di.begin();
      matcher.add_edge(static_cast<size_t>(lu), static_cast<size_t>(rv));
    }
    const auto match = matcher.solve();
    if (match.empty())
      throw MatchingError("matching failed; increase W");
    for (size_t l = 0; l < d0.size(); ++l) {
      const uint32_t u = d0[l];
      const uint32_t v = di[static_cast<size_t>(match[l])];
      if (out.fwd[u] != kUnset || out.inv[v] != kUnset)
        throw MatchingError("matching failed; increase W (dom classes overlap)");
      out.fwd[u] = v;
      out.inv[v] = u;
    }
  }
  for (uint32_t v = 0; v < v_size; ++v)
    if (out.fwd[v] == kUnset || out.inv[v] == kUnset)
      throw MatchingError(
          "matching failed; increase W (f_0i not total on the base)");
  return out;
}

Rearrangement::Rearrangement(Dimension dim, Base v, std::vector<Bijection> f)
    : dim_(dim), v_(std::move(v)), f_(std::move(f)) {
  if (f_.size() != static_cast<size_t>(dim_.alpha()))
    throw InputError("rearrange needs one bijection per coordinate");
  for (const auto& b : f_)
    if (b.fwd.size() != v_.size || b.inv.size() != v_.size)
      throw InputError("rearrange: bijection size mismatch");
  for (uint32_t x = 0; x < v_.size; ++x)
    if (f_[0].fwd[x] != x)
      throw InputError("rearrange: f_00 must be the identity");
}

uint64_t Rearrangement::map_point(uint64_t index) const {
  auto c = decode_point(index, dim_, v_);
  for (int m = 0; m < dim_.alpha(); ++m)
    c[static_cast<size_t>(m)] =
        f_[static_cast<size_t>(m)].inv[c[static_cast<size_t>(m)]];
  return encode_point(c, v_);
}

Relation Rearrangement::apply(const Relation& x) const {
  if (x.base() != v_ || x.dim() != dim_)
    throw DimensionError("rearrange: element over the wrong space");
  Relation out(dim_, v_);
  for (uint64_t k = 0; k < x.npoints(); ++k)
    if (x.test(map_point(k))) out.set(k);
  return out;
}

SIsSReport verify_s_is_S(const SetAlgebra& alg_u, const BlowupMap& blow,
                         const Rearrangement& g) {
  SIsSReport rep;
  if (alg_u.npoints() > 16)
    throw BudgetError("verify_s_is_S enumerates the carrier over U; "
                      "|U|^alpha must stay <= 16");
  const int alpha = alg_u.dim().alpha();
  const uint64_t carrier = uint64_t(1) << alg_u.npoints();
  for (uint64_t m = 0; m < carrier; ++m) {
    const Relation x = alg_u.element_from_bits(m);
    const Relation xpp = g.apply(blow.lift(x));
    for (int i = 0; i < alpha; ++i)
      for (int j = 0; j < alpha; ++j)
        if (!(g.apply(blow.lift(subst(i, j, x))) == subst(i, j, xpp))) {
          rep.ok = false;
          rep.witness = "s''_" + std::to_string(i) + std::to_string(j) +
                        " != S_ij^V at element " + std::to_string(m);
          return rep;
        }
  }
  return rep;
}

SplitFamily split_shat(const std::vector<uint32_t>& s, Dimension dim,
                       const Base& u) {
  const auto perms = all_permutations(dim);
  const uint32_t w = static_cast<uint32_t>(perms.size());
  BlowupMap blow(dim, u, w);
  SplitFamily fam{Relation(dim, blow.base_v()), {}, {}};
  fam.group_table.assign(w, std::vector<int>(w));
  for (uint32_t a = 0; a < w; ++a)
    for (uint32_t b = 0; b < w; ++b)
      fam.group_table[a][b] = static_cast<int>((a + b) % w);

  fam.shat = blow.lift_point(s);
  fam.parts.assign(w, Relation(dim, blow.base_v()));
  const int alpha = dim.alpha();
  for (uint64_t t = 0; t < fam.shat.npoints(); ++t) {
    if (!fam.shat.test(t)) continue;
    const auto coords = decode_point(t, dim, blow.base_v());
    uint32_t acc = 0;
    for (int m = 0; m < alpha; ++m)
      acc = static_cast<uint32_t>(
          fam.group_table[acc][blow.proj_w(coords[static_cast<size_t>(m)])]);
    fam.parts[acc].set(t);
  }
  return fam;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<uint32_t> point_compose(const std::vector<uint32_t>& s,
                                    const Transformation& sigma) {
  std::vector<uint32_t> out(s.size());
  for (int m = 0; m < sigma.alpha(); ++m)
    out[static_cast<size_t>(m)] = s[sigma(m)];
  return out;
}

}  // namespace

Sec5Result run_sec5(Dimension dim, const Base& u, uint32_t w_size,
                    uint64_t seed) {
  Sec5Result res;
  const int alpha = dim.alpha();
  SetAlgebra algU(dim, u);
  json manifest;
  manifest["pipeline"] = "sec5";
  manifest["alpha"] = alpha;
  manifest["base_u"] = u.size;
  manifest["w_size"] = w_size;
  manifest["seed"] = seed;

  if (algU.npoints() > 16)
    throw BudgetError("sec5 demo enumerates the carrier over U; |U|^alpha "
                      "must stay <= 16");

  // Diagonal recovery over U; on the full algebra d* must be the set
  // diagonals themselves.
  const auto recovery = recover_diagonals(algU);
  res.diagonals_recovered = recovery.s_of_d_is_one;
  for (int i = 0; i < alpha && res.diagonals_recovered; ++i)
    for (int j = 0; j < alpha; ++j)
      if (!(recovery.at(i, j, alpha) == algU.diag(i, j))) {
        res.diagonals_recovered = false;
        res.failures.push_back("recovered d*_" + std::to_string(i) +
                               std::to_string(j) + " differs from D_ij");
        break;
      }

  BlowupMap blow(dim, u, w_size);
  const Base& v = blow.base_v();
  SetAlgebra algV(dim, v);
  manifest["base_v"] = v.size;

  // d'_ij = F(d*_ij); atoms of the blown-up algebra are the s-hat.
  std::vector<Relation> dpp;  // becomes d'' after rearrangement
  std::vector<Bijection> f;
  f.push_back(Bijection::identity(v.size));
  res.dom_covers = true;
  res.dichotomy = true;
  res.matchings_found = true;
  json matchings = json::object();
  for (int i = 1; i < alpha; ++i) {
    const Relation d0i = blow.lift(recovery.at(0, i, alpha));
    std::vector<Relation> atoms;
    for (uint64_t k = 0; k < algU.npoints(); ++k)
      if (recovery.at(0, i, alpha).test(k))
        atoms.push_back(blow.lift_point(decode_point(k, dim, u)));
    const auto part = analyze_dom_partition(atoms, d0i, 0, i);
    if (!part.dom_i_covers || !part.dom_j_covers) {
      res.dom_covers = false;
      res.failures.push_back("dom_0/dom_" + std::to_string(i) +
                             "(d'_0" + std::to_string(i) + ") != V");
    }
    if (!part.dichotomy_ok) {
      res.dichotomy = false;
      res.failures.push_back(part.witness);
    }
    try {
      f.push_back(build_f0i(atoms, i, part, v.size));
      matchings["f0" + std::to_string(i)] = f.back().fwd;
    } catch (const MatchingError& e) {
      res.matchings_found = false;
      res.failures.push_back(e.what());
      f.push_back(Bijection::identity(v.size));
    }
  }
  manifest["matchings"] = matchings;

  Rearrangement G(dim, v, f);

  // G must fix the cylindrifications (sampled) and be Boolean.
  std::mt19937_64 rng(seed);
  res.g_commutes_with_cyl = true;
  for (int trial = 0; trial < 100 && res.g_commutes_with_cyl; ++trial) {
    const Relation r = algV.random_element(rng);
    for (int i = 0; i < alpha; ++i)
      if (!(G.apply(cyl(i, r)) == cyl(i, G.apply(r)))) {
        res.g_commutes_with_cyl = false;
        res.failures.push_back("G does not commute with C_" +
                               std::to_string(i));
        break;
      }
  }

  // d''_ij = G(F(d*_ij)); the rearrangement must put the set diagonals
  // below them.
  res.diag_below_dpp = true;
  for (int i = 0; i < alpha; ++i)
    for (int j = 0; j < alpha; ++j) {
      dpp.push_back(G.apply(blow.lift(recovery.at(i, j, alpha))));
      if (!algV.diag(i, j).subset_of(dpp.back())) {
        res.diag_below_dpp = false;
        res.failures.push_back("D_" + std::to_string(i) + std::to_string(j) +
                               "^V not below d''");
      }
    }

  // s''_ij = S_ij^V on the whole (transported) carrier.
  const SIsSReport sreport = verify_s_is_S(algU, blow, G);
  res.s_is_S = sreport.ok;
  if (!sreport.ok) res.failures.push_back(sreport.witness);

  manifest["verdicts"] = {
      {"diagonals_recovered", res.diagonals_recovered},
      {"dom_covers", res.dom_covers},
      {"dichotomy", res.dichotomy},
      {"matchings_found", res.matchings_found},
      {"g_commutes_with_cyl", res.g_commutes_with_cyl},
      {"diag_below_dpp", res.diag_below_dpp},
      {"s_is_S", res.s_is_S},
  };
  if (!res.failures.empty()) manifest["failures"] = res.failures;
  res.manifest_json = manifest.dump(2);
  return res;
}

namespace {

// Carrier = the G-image of the algebra over U: operations are the real set
// operations over V, elements indexed by their U-side atom sets.
class ImageAlgebra {
 public:
  using Element = Relation;

  ImageAlgebra(SetAlgebra algV, std::vector<Relation> atom_images)
      : algV_(std::move(algV)), atom_images_(std::move(atom_images)) {
    // Small carriers get a full image table so exhaustive enumeration does
    // not rebuild unions per assignment.
    if (atom_images_.size() <= 16) {
      const uint64_t carrier = uint64_t(1) << atom_images_.size();
      memo_.reserve(carrier);
      for (uint64_t m = 0; m < carrier; ++m) memo_.push_back(build(m));
    }
  }

  Dimension dim() const { return algV_.dim(); }
  Element zero() const { return algV_.zero(); }
  Element one() const { return algV_.one(); }
  Element sum(const Element& a, const Element& b) const { return a | b; }
  Element product(const Element& a, const Element& b) const { return a & b; }
  Element complement(const Element& a) const { return a.complement(); }
  Element cyl(int i, const Element& a) const { return algV_.cyl(i, a); }
  Element cyl_set(const std::vector<int>& g, const Element& a) const {
    return algV_.cyl_set(g, a);
  }
  Element subst(int i, int j, const Element& a) const {
    return algV_.subst(i, j, a);
  }
  Element perm(int i, int j, const Element& a) const {
    return algV_.perm(i, j, a);
  }
  Element subst_sigma(const Transformation& s, const Element& a) const {
    return algV_.subst_sigma(s, a);
  }
  Element diag(int i, int j) const { return algV_.diag(i, j); }

  uint64_t carrier_bits() const { return atom_images_.size(); }
  Element element_from_bits(uint64_t bits) const {
    if (!memo_.empty()) return memo_[bits];
    return build(bits);
  }
  template <class Rng>
  Element random_element(Rng& rng) const {
    const uint64_t mask = atom_images_.size() >= 64
                              ? ~uint64_t(0)
                              : (uint64_t(1) << atom_images_.size()) - 1;
    return element_from_bits(rng() & mask);
  }
  std::string element_to_string(const Element& e) const {
    return e.to_string();
  }
  std::string describe() const {
    return "G-image in " + algV_.describe();
  }

 private:
  Element build(uint64_t bits) const {
    Element out = algV_.zero();
    for (size_t k = 0; k < atom_images_.size(); ++k)
      if ((bits >> k) & 1) out = out | atom_images_[k];
    return out;
  }

  SetAlgebra algV_;
  std::vector<Relation> atom_images_;
  std::vector<Relation> memo_;
};

}  // namespace

SplitRepPipeline::SplitRepPipeline(Dimension dim, const Base& u,
                                   PermOp abstract_perm)
    : dim_(dim),
      algU_(dim, u),
      perms_(all_permutations(dim)),
      blow_(dim, u, static_cast<uint32_t>(perms_.size())),
      perm_op_(std::move(abstract_perm)) {
  if (!perm_op_)
    perm_op_ = [](const Transformation& t, const Relation& x) {
      return perm_sigma(t, x);
    };
  const int alpha = dim_.alpha();
  const uint64_t npoints = algU_.npoints();
  if (npoints > 63)
    throw BudgetError("split/rep pipeline needs |U|^alpha <= 63 atoms");

  // Repetition-free atoms: below no d_kl with k != l.
  rep_free_.assign(npoints, true);
  for (uint64_t k = 0; k < npoints; ++k)
    for (int a = 0; a < alpha && rep_free_[k]; ++a)
      for (int b = 0; b < alpha; ++b)
        if (a != b && algU_.diag(a, b).test(k)) {
          rep_free_[k] = false;
          break;
        }
  for (uint64_t k = 0; k < npoints; ++k)
    if (rep_free_[k]) rfat_.push_back(k);

  // Blocks PT(s), represented by their lexicographically least member as
  // a coordinate sequence.
  std::set<uint64_t> covered;
  for (uint64_t k : rfat_) {
    if (covered.count(k)) continue;
    const auto seed = decode_point(k, dim_, u);
    auto rep = seed;
    for (const auto& sigma : perms_)
      rep = std::min(rep, point_compose(seed, sigma));
    const size_t rep_idx = reps_.size();
    for (size_t pi = 0; pi < perms_.size(); ++pi) {
      const uint64_t z = encode_point(point_compose(rep, perms_[pi]), u);
      covered.insert(z);
      block_of_[z] = {rep_idx, pi};
    }
    reps_.push_back(rep);
  }
  for (const auto& s : reps_) splits_.push_back(split_shat(s, dim_, u));
}

bool SplitRepPipeline::is_repetition_free(uint64_t point) const {
  return rep_free_.at(point);
}

Relation SplitRepPipeline::rep_atom(uint64_t point) const {
  if (!is_repetition_free(point))
    throw InputError("rep_atom: atom " + std::to_string(point) +
                     " lies below a diagonal");
  Relation out(dim_, blow_.base_v());
  const Relation a = algU_.element_from_bits(uint64_t(1) << point);
  for (size_t ri = 0; ri < reps_.size(); ++ri)
    for (size_t si = 0; si < perms_.size(); ++si) {
      const uint64_t s_sigma_pt =
          encode_point(point_compose(reps_[ri], perms_[si]), algU_.base());
      for (size_t di = 0; di < perms_.size(); ++di) {
        const Transformation eta = compose(perms_[si].inverse(), perms_[di]);
        if (!perm_op_(eta, a).test(s_sigma_pt)) continue;
        out = out | perm_sigma(perms_[di].inverse(), splits_[ri].parts[si]);
      }
    }
  return out;
}

Relation SplitRepPipeline::final_g_atom(uint64_t point) const {
  if (rep_free_.at(point)) return rep_atom(point);
  return blow_.lift_point(decode_point(point, dim_, algU_.base()));
}

bool SplitRepPipeline::verify_rep_equivariance(const Transformation& tau,
                                               std::string* why) const {
  for (uint64_t k : rfat_) {
    const Relation a = algU_.element_from_bits(uint64_t(1) << k);
    const Relation pa = perm_op_(tau, a);
    if (pa.count() != 1) {
      if (why) *why = "p_tau does not map atoms to atoms";
      return false;
    }
    uint64_t target = 0;
    for (uint64_t t = 0; t < algU_.npoints(); ++t)
      if (pa.test(t)) target = t;
    if (!is_repetition_free(target)) {
      if (why)
        *why = "p_tau image of a repetition-free atom is not repetition-free";
      return false;
    }
    if (!(rep_atom(target) == perm_sigma(tau, rep_atom(k)))) {
      if (why)
        *why = "rep(p_tau a) != P_tau(rep a) at atom " + std::to_string(k) +
               " tau=" + tau.to_string();
      return false;
    }
  }
  return true;
}

bool SplitRepPipeline::verify_cylinder_lemma(std::string* why) const {
  for (uint64_t k : rfat_) {
    const Relation ra = rep_atom(k);
    const Relation fa = blow_.lift_point(decode_point(k, dim_, algU_.base()));
    for (int i = 0; i < dim_.alpha(); ++i)
      if (!(cyl(i, ra) == cyl(i, fa))) {
        if (why)
          *why = "C_" + std::to_string(i) + "(rep a) != C_i(F a) at atom " +
                 std::to_string(k);
        return false;
      }
  }
  return true;
}

Sec6Result run_sec6(Dimension dim, const Base& u, uint64_t seed,
                    const PermOp& abstract_perm) {
  Sec6Result res;
  const int alpha = dim.alpha();
  SetAlgebra algU(dim, u);
  const uint64_t npointsU = algU.npoints();

  json manifest;
  manifest["pipeline"] = "sec6";
  manifest["alpha"] = alpha;
  manifest["base_u"] = u.size;
  manifest["w"] = "PT_" + std::to_string(alpha);
  manifest["seed"] = seed;

  // The diagonal family of the demo algebra is the set diagonals; when
  // the carrier is small enough, cross-check that recovery from the
  // substitutions returns exactly them.
  if (npointsU <= 16) {
    const auto recovery = recover_diagonals(algU);
    for (int a = 0; a < alpha; ++a)
      for (int b = 0; b < alpha; ++b)
        if (!(recovery.at(a, b, alpha) == algU.diag(a, b)))
          throw Error("sec6: recovered diagonals differ from set diagonals");
  }

  SplitRepPipeline pipe(dim, u, abstract_perm);
  const auto& perms = pipe.permutations();
  const auto& blow = pipe.blowup();
  const uint32_t w = static_cast<uint32_t>(perms.size());
  manifest["w_size"] = w;
  SetAlgebra algV(dim, blow.base_v());

  res.rfat_count = pipe.repetition_free_atoms().size();
  json reps_json = json::array();
  for (const auto& r : pipe.block_representatives()) reps_json.push_back(r);
  manifest["representatives"] = reps_json;

  // Split shape: alpha! parts of |W|^(alpha-1) points with the same
  // cylindrifications as the whole block.
  res.split_sizes_ok = true;
  res.split_cyl_ok = true;
  uint64_t part_size = 1;
  for (int m = 0; m + 1 < alpha; ++m) part_size *= w;
  for (size_t ri = 0; ri < pipe.block_representatives().size(); ++ri) {
    const auto& fam = pipe.split(ri);
    for (const auto& part : fam.parts) {
      if (part.count() != part_size) res.split_sizes_ok = false;
      for (int i = 0; i < alpha; ++i)
        if (!(cyl(i, part) == cyl(i, fam.shat))) res.split_cyl_ok = false;
    }
    Relation un(dim, blow.base_v());
    for (const auto& part : fam.parts) un = un | part;
    if (!(un == fam.shat)) res.split_sizes_ok = false;
  }
  if (!res.split_sizes_ok)
    res.failures.push_back("split parts are not an equal-size partition");
  if (!res.split_cyl_ok)
    res.failures.push_back("C_i(s_sigma) != C_i(s-hat) for some part");
  if (pipe.block_representatives().empty())
    manifest["note"] = "no repetition-free atoms at this base size";

  std::string why;
  res.rep_equivariant = true;
  for (const auto& tau : perms)
    if (!pipe.verify_rep_equivariance(tau, &why)) {
      res.rep_equivariant = false;
      res.failures.push_back(why);
      break;
    }
  res.rep_cyl_ok = pipe.verify_cylinder_lemma(&why);
  if (!res.rep_cyl_ok) res.failures.push_back(why);

  // Final representation: F on atoms below a diagonal, rep on the rest.
  std::vector<Relation> g_img;
  g_img.reserve(npointsU);
  for (uint64_t k = 0; k < npointsU; ++k) g_img.push_back(pipe.final_g_atom(k));

  PermOp pA = abstract_perm;
  if (!pA)
    pA = [](const Transformation& t, const Relation& x) {
      return perm_sigma(t, x);
    };

  res.g_disjoint = true;
  {
    Relation un(dim, blow.base_v());
    for (const auto& img : g_img) {
      if (!((un & img).is_empty())) {
        res.g_disjoint = false;
        res.failures.push_back("atom images overlap");
        break;
      }
      un = un | img;
    }
    if (res.g_disjoint && !un.is_full()) {
      res.g_disjoint = false;
      res.failures.push_back("atom images do not cover ^alpha(V)");
    }
  }

  auto G_of = [&](const Relation& x) {
    Relation out(dim, blow.base_v());
    for (uint64_t k = 0; k < npointsU; ++k)
      if (x.test(k)) out = out | g_img[k];
    return out;
  };

  // Homomorphism on atoms for every operator family.
  res.g_homomorphic = true;
  auto check_hom = [&](const Relation& atom, const Relation& imgU,
                       const Relation& opV, const std::string& what) {
    (void)atom;
    if (!(G_of(imgU) == opV)) {
      res.g_homomorphic = false;
      res.failures.push_back("G not homomorphic for " + what);
    }
  };
  for (uint64_t k = 0; k < npointsU && res.g_homomorphic; ++k) {
    const Relation a = algU.element_from_bits(uint64_t(1) << k);
    const Relation ga = g_img[k];
    for (int i = 0; i < alpha; ++i)
      check_hom(a, cyl(i, a), cyl(i, ga), "c_" + std::to_string(i));
    for (int i = 0; i < alpha; ++i)
      for (int j = 0; j < alpha; ++j)
        check_hom(a, subst(i, j, a), subst(i, j, ga),
                  "s_" + std::to_string(i) + std::to_string(j));
    for (const auto& tau : perms)
      check_hom(a, pA(tau, a), perm_sigma(tau, ga), "p_" + tau.to_string());
  }

  // FPA suite with the real set operators, assignments from the image:
  // exhaustive per instance while the assignment space is small, seeded
  // random sampling beyond that.
  {
    ImageAlgebra image(algV, g_img);
    const auto fpa = suites::instantiate(suites::SuiteId::FPA, dim);
    res.fpa_on_image = true;
    size_t exhausted = 0;
    for (size_t k = 0; k < fpa.equations.size(); ++k) {
      const auto& eq = fpa.equations[k];
      const uint64_t nv =
          std::max<uint64_t>(1, free_vars(eq).size());
      CheckStrategy strat;
      if (image.carrier_bits() * nv <= 12) {
        strat.mode = CheckStrategy::Exhaustive;
        ++exhausted;
      } else {
        strat.mode = CheckStrategy::Random;
        strat.samples = 2000;
        strat.seed = mix_seed(seed, k);
      }
      const Verdict v = check_equation(image, eq, strat);
      if (!v.passed()) {
        res.fpa_on_image = false;
        res.failures.push_back("FPA on image: " + eq.label + " " + v.detail);
      }
    }
    manifest["fpa_on_image_instances"] = fpa.equations.size();
    manifest["fpa_on_image_exhaustive_instances"] = exhausted;
  }

  manifest["rfat_count"] = res.rfat_count;
  if (!pipe.block_representatives().empty())
    manifest["group_table"] = pipe.split(0).group_table;
  manifest["verdicts"] = {
      {"split_sizes_ok", res.split_sizes_ok},
      {"split_cyl_ok", res.split_cyl_ok},
      {"rep_equivariant", res.rep_equivariant},
      {"rep_cyl_ok", res.rep_cyl_ok},
      {"g_disjoint", res.g_disjoint},
      {"g_homomorphic", res.g_homomorphic},
      {"fpa_on_image", res.fpa_on_image},
  };
  if (!res.failures.empty()) manifest["failures"] = res.failures;
  res.manifest_json = manifest.dump(2);
  return res;
}

}  // namespace cylkit::represent
