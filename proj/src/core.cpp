#include "cylkit/core.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>
#include <sstream>

namespace cylkit {

namespace {

void check_index(int i, int alpha, const char* what) {
  if (i < 0 || i >= alpha)
    throw DimensionError(std::string(what) + " index " + std::to_string(i) +
                         " out of dimension " + std::to_string(alpha));
}

}  // namespace

Transformation::Transformation(Dimension dim, std::vector<uint8_t> map)
    : map_(std::move(map)) {
  if (static_cast<int>(map_.size()) != dim.alpha())
    throw DimensionError("transformation table has wrong length");
  std::vector<bool> seen(map_.size(), false);
  for (uint8_t v : map_) {
    if (v >= map_.size())
      throw DimensionError("transformation value out of range");
    seen[v] = true;
  }
  is_permutation_ =
      std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

Transformation Transformation::identity(Dimension dim) {
  std::vector<uint8_t> m(static_cast<size_t>(dim.alpha()));
  std::iota(m.begin(), m.end(), uint8_t(0));
  return Transformation(dim, std::move(m));
}

Transformation Transformation::replacement(int i, int j, Dimension dim) {
  check_index(i, dim.alpha(), "replacement");
  check_index(j, dim.alpha(), "replacement");
  Transformation t = identity(dim);
  t.map_[static_cast<size_t>(i)] = static_cast<uint8_t>(j);
  t.is_permutation_ = (i == j);
  return t;
}

Transformation Transformation::transposition(int i, int j, Dimension dim) {
  check_index(i, dim.alpha(), "transposition");
  check_index(j, dim.alpha(), "transposition");
  Transformation t = identity(dim);
  std::swap(t.map_[static_cast<size_t>(i)], t.map_[static_cast<size_t>(j)]);
  return t;
}

bool Transformation::is_identity() const {
  for (size_t k = 0; k < map_.size(); ++k)
    if (map_[k] != k) return false;
  return true;
}

bool Transformation::is_replacement() const {
  int moved = -1;
  for (size_t k = 0; k < map_.size(); ++k) {
    if (map_[k] != k) {
      if (moved >= 0) return false;
      moved = static_cast<int>(k);
    }
  }
  return moved >= 0;
}

bool Transformation::is_transposition() const {
  int a = -1, b = -1;
  for (size_t k = 0; k < map_.size(); ++k) {
    if (map_[k] != k) {
      if (a < 0)
        a = static_cast<int>(k);
      else if (b < 0)
        b = static_cast<int>(k);
      else
        return false;
    }
  }
  return a >= 0 && b >= 0 && map_[static_cast<size_t>(a)] == b &&
         map_[static_cast<size_t>(b)] == a;
}

Transformation Transformation::inverse() const {
  if (!is_permutation_)
    throw NotInvertibleError("inverse of non-permutation " + to_string());
  std::vector<uint8_t> inv(map_.size());
  for (size_t k = 0; k < map_.size(); ++k)
    inv[map_[k]] = static_cast<uint8_t>(k);
  return Transformation(dim(), std::move(inv));
}

std::string Transformation::to_string() const {
  std::string s = "(";
  for (size_t k = 0; k < map_.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(int(map_[k]));
  }
  return s + ")";
}

Transformation compose(const Transformation& sigma, const Transformation& tau) {
  if (sigma.alpha() != tau.alpha())
    throw DimensionError("compose: dimension mismatch");
  std::vector<uint8_t> m(static_cast<size_t>(sigma.alpha()));
  for (size_t k = 0; k < m.size(); ++k) m[k] = sigma(tau(static_cast<int>(k)));
  return Transformation(sigma.dim(), std::move(m));
}

namespace {

// Cycle decomposition of a permutation. A cycle (c0 c1 ... cm-1) with
// c_{t+1} = sigma(c_t) equals [c0,c_{m-1}] o ... o [c0,c1].
std::vector<Transformation> decompose_permutation(const Transformation& sigma) {
  const int alpha = sigma.alpha();
  std::vector<Transformation> out;
  std::vector<bool> visited(static_cast<size_t>(alpha), false);
  for (int start = 0; start < alpha; ++start) {
    if (visited[static_cast<size_t>(start)] || sigma(start) == start) {
      visited[static_cast<size_t>(start)] = true;
      continue;
    }
    std::vector<int> cycle;
    int k = start;
    while (!visited[static_cast<size_t>(k)]) {
      visited[static_cast<size_t>(k)] = true;
      cycle.push_back(k);
      k = sigma(k);
    }
    for (size_t t = cycle.size() - 1; t >= 1; --t)
      out.push_back(
          Transformation::transposition(cycle[0], cycle[t], sigma.dim()));
  }
  return out;
}

// Non-surjective maps are lowered to a copy program over "registers":
// register k must end up holding the value originally at sigma(k), and
// [r/s] copies register s into register r. Demand cycles are broken first
// through a free register (one outside ran(sigma)), then the remaining
// tree-shaped demands are served in ascending target order.
std::vector<Transformation> decompose_with_replacements(
    const Transformation& sigma) {
  const int alpha = sigma.alpha();
  const Dimension dim = sigma.dim();
  std::vector<bool> in_range(static_cast<size_t>(alpha), false);
  for (int k = 0; k < alpha; ++k) in_range[sigma(k)] = true;
  int scratch = -1;
  for (int k = 0; k < alpha; ++k)
    if (!in_range[static_cast<size_t>(k)]) {
      scratch = k;
      break;
    }
  assert(scratch >= 0);

  std::vector<Transformation> out;
  // cur[r]: which original value register r currently holds.
  std::vector<int> cur(static_cast<size_t>(alpha));
  std::iota(cur.begin(), cur.end(), 0);
  std::vector<bool> done(static_cast<size_t>(alpha), false);
  for (int r = 0; r < alpha; ++r)
    if (sigma(r) == r) done[static_cast<size_t>(r)] = true;

  auto holder_of = [&](int value) {
    for (int s = 0; s < alpha; ++s)
      if (cur[static_cast<size_t>(s)] == value) return s;
    throw Error("decompose: value lost (internal)");
  };

  // Cycles of sigma (k -> sigma(k)): sets the map permutes within itself.
  std::vector<bool> visited(static_cast<size_t>(alpha), false);
  for (int start = 0; start < alpha; ++start) {
    if (visited[static_cast<size_t>(start)]) continue;
    // Walk forward to find whether start lies on a cycle.
    int slow = start;
    std::vector<int> path;
    std::vector<bool> on_path(static_cast<size_t>(alpha), false);
    while (!visited[static_cast<size_t>(slow)] &&
           !on_path[static_cast<size_t>(slow)]) {
      on_path[static_cast<size_t>(slow)] = true;
      path.push_back(slow);
      slow = sigma(slow);
    }
    for (int p : path) visited[static_cast<size_t>(p)] = true;
    if (!on_path[static_cast<size_t>(slow)]) continue;  // ran into old ground
    // Extract the cycle starting at 'slow'.
    std::vector<int> cycle;
    int k = slow;
    do {
      cycle.push_back(k);
      k = sigma(k);
    } while (k != slow);
    if (cycle.size() == 1) continue;  // fixed point
    // Rotate so the smallest register leads; keeps output deterministic.
    auto mn = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), mn, cycle.end());
    // Park the head's value, shift the cycle, close from scratch.
    out.push_back(Transformation::replacement(scratch, cycle[0], dim));
    cur[static_cast<size_t>(scratch)] = cur[static_cast<size_t>(cycle[0])];
    for (size_t t = 0; t + 1 < cycle.size(); ++t) {
      out.push_back(Transformation::replacement(cycle[t], cycle[t + 1], dim));
      cur[static_cast<size_t>(cycle[t])] = cur[static_cast<size_t>(cycle[t + 1])];
      done[static_cast<size_t>(cycle[t])] = true;
    }
    int last = cycle.back();
    out.push_back(Transformation::replacement(last, scratch, dim));
    cur[static_cast<size_t>(last)] = cur[static_cast<size_t>(scratch)];
    done[static_cast<size_t>(last)] = true;
  }

  // Tree demands: a register may be overwritten once its current value is
  // either not demanded any more or available elsewhere.
  auto pending = [&] {
    int n = 0;
    for (int r = 0; r < alpha; ++r)
      if (!done[static_cast<size_t>(r)]) ++n;
    return n;
  };
  while (pending() > 0) {
    bool progress = false;
    for (int r = 0; r < alpha && !progress; ++r) {
      if (done[static_cast<size_t>(r)]) continue;
      if (cur[static_cast<size_t>(r)] == sigma(r)) {
        done[static_cast<size_t>(r)] = true;
        progress = true;
        break;
      }
      bool demanded = false;
      for (int q = 0; q < alpha; ++q)
        if (!done[static_cast<size_t>(q)] &&
            sigma(q) == cur[static_cast<size_t>(r)])
          demanded = true;
      bool duplicated = false;
      for (int s = 0; s < alpha; ++s)
        if (s != r && cur[static_cast<size_t>(s)] == cur[static_cast<size_t>(r)])
          duplicated = true;
      if (demanded && !duplicated) continue;
      int src = holder_of(sigma(r));
      out.push_back(Transformation::replacement(r, src, dim));
      cur[static_cast<size_t>(r)] = sigma(r);
      done[static_cast<size_t>(r)] = true;
      progress = true;
    }
    if (!progress) throw Error("decompose: no progress (internal)");
  }
  return out;
}

}  // namespace

std::vector<Transformation> decompose(const Transformation& sigma) {
  if (sigma.is_identity()) return {};
  std::vector<Transformation> out = sigma.is_permutation()
                                        ? decompose_permutation(sigma)
                                        : decompose_with_replacements(sigma);
  // Recompose and compare; the generators must reproduce sigma exactly.
  Transformation check = out.front();
  for (size_t t = 1; t < out.size(); ++t) check = compose(check, out[t]);
  if (check != sigma) throw Error("decompose: recomposition mismatch (internal)");
  return out;
}

std::vector<Transformation> all_transformations(Dimension dim) {
  const int alpha = dim.alpha();
  std::vector<Transformation> out;
  std::vector<uint8_t> m(static_cast<size_t>(alpha), 0);
  while (true) {
    out.emplace_back(dim, m);
    int pos = alpha - 1;
    while (pos >= 0) {
      if (++m[static_cast<size_t>(pos)] < alpha) break;
      m[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

std::vector<Transformation> all_permutations(Dimension dim) {
  std::vector<Transformation> out;
  for (auto& t : all_transformations(dim))
    if (t.is_permutation()) out.push_back(t);
  return out;
}

uint64_t point_count(Dimension dim, const Base& base, uint64_t limit) {
  uint64_t n = 1;
  for (int k = 0; k < dim.alpha(); ++k) {
    if (n > limit / base.size)
      throw BudgetError("|U|^alpha exceeds point limit " +
                        std::to_string(limit));
    n *= base.size;
  }
  if (n > limit)
    throw BudgetError("|U|^alpha exceeds point limit " + std::to_string(limit));
  return n;
}

uint64_t encode_point(const std::vector<uint32_t>& coords, const Base& base) {
  uint64_t idx = 0;
  for (size_t k = coords.size(); k-- > 0;) {
    if (coords[k] >= base.size)
      throw DimensionError("point coordinate out of base");
    idx = idx * base.size + coords[k];
  }
  return idx;
}

std::vector<uint32_t> decode_point(uint64_t index, Dimension dim,
                                   const Base& base) {
  std::vector<uint32_t> c(static_cast<size_t>(dim.alpha()));
  for (int k = 0; k < dim.alpha(); ++k) {
    c[static_cast<size_t>(k)] = static_cast<uint32_t>(index % base.size);
    index /= base.size;
  }
  return c;
}

Relation::Relation(Dimension dim, const Base& base, uint64_t limit)
    : dim_(dim),
      base_(base),
      npoints_(point_count(dim, base, limit)),
      words_((npoints_ + 63) / 64, 0) {}

Relation Relation::empty(Dimension dim, const Base& base) {
  return Relation(dim, base);
}

Relation Relation::full(Dimension dim, const Base& base) {
  Relation r(dim, base);
  for (auto& w : r.words_) w = ~uint64_t(0);
  r.clear_slack();
  return r;
}

Relation Relation::singleton(const std::vector<uint32_t>& coords,
                             Dimension dim, const Base& base) {
  Relation r(dim, base);
  if (static_cast<int>(coords.size()) != dim.alpha())
    throw DimensionError("point has wrong arity");
  r.set(encode_point(coords, base));
  return r;
}

Relation Relation::of_points(const std::vector<std::vector<uint32_t>>& pts,
                             Dimension dim, const Base& base) {
  Relation r(dim, base);
  for (const auto& p : pts) {
    if (static_cast<int>(p.size()) != dim.alpha())
      throw DimensionError("point has wrong arity");
    r.set(encode_point(p, base));
  }
  return r;
}

void Relation::clear_slack() {
  const uint64_t used = npoints_ & 63;
  if (used != 0) words_.back() &= (uint64_t(1) << used) - 1;
}

uint64_t Relation::count() const {
  uint64_t n = 0;
  for (uint64_t w : words_) n += static_cast<uint64_t>(std::popcount(w));
  return n;
}

bool Relation::is_empty() const {
  for (uint64_t w : words_)
    if (w) return false;
  return true;
}

bool Relation::is_full() const { return count() == npoints_; }

void Relation::require_same_space(const Relation& o) const {
  if (dim_ != o.dim_ || base_ != o.base_)
    throw DimensionError("relations live over different spaces");
}

Relation Relation::operator|(const Relation& o) const {
  require_same_space(o);
  Relation r = *this;
  for (size_t k = 0; k < words_.size(); ++k) r.words_[k] |= o.words_[k];
  return r;
}

Relation Relation::operator&(const Relation& o) const {
  require_same_space(o);
  Relation r = *this;
  for (size_t k = 0; k < words_.size(); ++k) r.words_[k] &= o.words_[k];
  return r;
}

Relation Relation::operator-(const Relation& o) const {
  require_same_space(o);
  Relation r = *this;
  for (size_t k = 0; k < words_.size(); ++k) r.words_[k] &= ~o.words_[k];
  return r;
}

Relation Relation::complement() const {
  Relation r = *this;
  for (auto& w : r.words_) w = ~w;
  r.clear_slack();
  return r;
}

bool Relation::subset_of(const Relation& o) const {
  require_same_space(o);
  for (size_t k = 0; k < words_.size(); ++k)
    if (words_[k] & ~o.words_[k]) return false;
  return true;
}

std::vector<std::vector<uint32_t>> Relation::points() const {
  std::vector<std::vector<uint32_t>> out;
  for (uint64_t k = 0; k < npoints_; ++k)
    if (test(k)) out.push_back(decode_point(k, dim_, base_));
  return out;
}

std::string Relation::to_string(uint64_t max_points) const {
  const uint64_t n = count();
  if (n > max_points) {
    std::ostringstream os;
    os << "<" << n << " points of " << npoints_ << ">";
    return os.str();
  }
  std::string s = "{";
  bool first = true;
  for (uint64_t k = 0; k < npoints_; ++k) {
    if (!test(k)) continue;
    if (!first) s += ',';
    first = false;
    auto c = decode_point(k, dim_, base_);
    s += '(';
    for (size_t m = 0; m < c.size(); ++m) {
      if (m) s += ',';
      s += base_.label(c[m]);
    }
    s += ')';
  }
  return s + "}";
}

Relation cyl(int i, const Relation& r) {
  check_index(i, r.dim().alpha(), "cyl");
  const uint64_t usize = r.base().size;
  uint64_t stride = 1;
  for (int k = 0; k < i; ++k) stride *= usize;
  const uint64_t block = stride * usize;
  Relation out(r.dim(), r.base());
  for (uint64_t hi = 0; hi < r.npoints(); hi += block) {
    for (uint64_t lo = 0; lo < stride; ++lo) {
      const uint64_t line = hi + lo;
      bool any = false;
      for (uint64_t u = 0; u < usize && !any; ++u)
        any = r.test(line + u * stride);
      if (any)
        for (uint64_t u = 0; u < usize; ++u) out.set(line + u * stride);
    }
  }
  return out;
}

Relation cyl_set(const std::vector<int>& gamma, const Relation& r) {
  std::vector<int> g = gamma;
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  for (int i : g) check_index(i, r.dim().alpha(), "cyl_set");
  // cyl_set({i1 < i2 < ...}, R) = cyl(i1, cyl(i2, ... )): innermost last.
  Relation out = r;
  for (auto it = g.rbegin(); it != g.rend(); ++it) out = cyl(*it, out);
  return out;
}

Relation sub_sigma(const Transformation& sigma, const Relation& r) {
  if (sigma.alpha() != r.dim().alpha())
    throw DimensionError("sub_sigma: dimension mismatch");
  const uint64_t usize = r.base().size;
  const int alpha = sigma.alpha();
  Relation out(r.dim(), r.base());
  std::vector<uint32_t> coords(static_cast<size_t>(alpha));
  for (uint64_t k = 0; k < r.npoints(); ++k) {
    uint64_t rest = k;
    for (int m = 0; m < alpha; ++m) {
      coords[static_cast<size_t>(m)] = static_cast<uint32_t>(rest % usize);
      rest /= usize;
    }
    // index of s o sigma, coordinates (s(sigma(0)), ..., s(sigma(alpha-1)))
    uint64_t composed = 0;
    for (int m = alpha; m-- > 0;)
      composed = composed * usize + coords[sigma(m)];
    if (r.test(composed)) out.set(k);
  }
  return out;
}

Relation perm_sigma(const Transformation& sigma, const Relation& r) {
  if (!sigma.is_permutation())
    throw NotInvertibleError("perm_sigma needs a permutation, got " +
                             sigma.to_string());
  return sub_sigma(sigma, r);
}

Relation subst(int i, int j, const Relation& r) {
  return sub_sigma(Transformation::replacement(i, j, r.dim()), r);
}

Relation perm(int i, int j, const Relation& r) {
  return sub_sigma(Transformation::transposition(i, j, r.dim()), r);
}

Relation diag(int i, int j, Dimension dim, const Base& base) {
  check_index(i, dim.alpha(), "diag");
  check_index(j, dim.alpha(), "diag");
  Relation out(dim, base);
  for (uint64_t k = 0; k < out.npoints(); ++k) {
    auto c = decode_point(k, dim, base);
    if (c[static_cast<size_t>(i)] == c[static_cast<size_t>(j)]) out.set(k);
  }
  return out;
}

std::vector<uint32_t> dom_i(int i, const Relation& r) {
  check_index(i, r.dim().alpha(), "dom_i");
  std::vector<bool> seen(r.base().size, false);
  for (uint64_t k = 0; k < r.npoints(); ++k)
    if (r.test(k)) seen[decode_point(k, r.dim(), r.base())[static_cast<size_t>(i)]] = true;
  std::vector<uint32_t> out;
  for (uint32_t u = 0; u < r.base().size; ++u)
    if (seen[u]) out.push_back(u);
  return out;
}

SetAlgebra::Element SetAlgebra::element_from_bits(uint64_t bits) const {
  if (npoints_ > 63)
    throw BudgetError("carrier too large for bit-indexed enumeration");
  Relation r(dim_, base_);
  for (uint64_t k = 0; k < npoints_; ++k)
    if ((bits >> k) & 1) r.set(k);
  return r;
}

SetAlgebra::Element SetAlgebra::normalize(Relation r) {
  // Random words may set slack bits past npoints; complementing twice
  // clears them without extra API surface.
  return r.complement().complement();
}

std::string SetAlgebra::describe() const {
  return "SetAlgebra(alpha=" + std::to_string(dim_.alpha()) +
         ",|U|=" + std::to_string(base_.size) + ")";
}

}  // namespace cylkit
