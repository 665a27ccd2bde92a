#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Core finite-model machinery: transformations of a finite ordinal,
// mixed-radix point encoding, bitset relations over ^alpha(U), and the
// set-theoretic operators (cylindrification, substitution, permutation,
// diagonal) acting on them.

namespace cylkit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
  using Error::Error;
};
struct NotInvertibleError : Error {
  using Error::Error;
};
struct BudgetError : Error {
  using Error::Error;
};
struct InputError : Error {
  using Error::Error;
};
struct UnsupportedOperation : Error {
  using Error::Error;
};
struct MatchingError : Error {
  using Error::Error;
};

// Number of coordinate places per relation. Values below 3 are accepted but
// flagged: the interesting identities assume alpha >= 3.
class Dimension {
 public:
  static constexpr int kMaxAlpha = 8;

  explicit Dimension(int alpha) : alpha_(alpha) {
    if (alpha < 1 || alpha > kMaxAlpha)
      throw DimensionError("dimension must be in [1," +
                           std::to_string(kMaxAlpha) +
                           "], got " + std::to_string(alpha));
  }

  int alpha() const { return alpha_; }
  bool below_paper_scope() const { return alpha_ < 3; }

  friend bool operator==(Dimension a, Dimension b) {
    return a.alpha_ == b.alpha_;
  }
  friend bool operator!=(Dimension a, Dimension b) { return !(a == b); }

 private:
  int alpha_;
};

// A total map sigma: alpha -> alpha, stored by its value table.
class Transformation {
 public:
  Transformation(Dimension dim, std::vector<uint8_t> map);

  static Transformation identity(Dimension dim);
  // [i/j](k) = j if k = i, k otherwise.
  static Transformation replacement(int i, int j, Dimension dim);
  // [i,j] swaps i and j, fixes everything else.
  static Transformation transposition(int i, int j, Dimension dim);

  int alpha() const { return static_cast<int>(map_.size()); }
  Dimension dim() const { return Dimension(alpha()); }
  uint8_t operator()(int k) const { return map_[static_cast<size_t>(k)]; }
  const std::vector<uint8_t>& map() const { return map_; }

  bool is_permutation() const { return is_permutation_; }
  bool is_identity() const;
  bool is_replacement() const;    // some [i/j] with i != j
  bool is_transposition() const;  // some [i,j] with i != j

  // Requires is_permutation().
  Transformation inverse() const;

  std::string to_string() const;  // "(1,0,2)"

  friend bool operator==(const Transformation& a, const Transformation& b) {
    return a.map_ == b.map_;
  }
  friend bool operator!=(const Transformation& a, const Transformation& b) {
    return !(a == b);
  }
  friend bool operator<(const Transformation& a, const Transformation& b) {
    return a.map_ < b.map_;
  }

 private:
  std::vector<uint8_t> map_;
  bool is_permutation_;
};

// compose(sigma, tau)(k) = sigma(tau(k)), so that s o (sigma o tau) =
// (s o sigma) o tau for sequences s.
Transformation compose(const Transformation& sigma, const Transformation& tau);

// Generator list g0..gm with compose-fold g0 o g1 o ... o gm == sigma.
// Permutations decompose into transpositions (cycle decomposition);
// non-surjective maps into replacements (a free index serves as scratch).
// Identity yields the empty list. Deterministic.
std::vector<Transformation> decompose(const Transformation& sigma);

// T_alpha / PT_alpha in lexicographic order of the value table.
std::vector<Transformation> all_transformations(Dimension dim);
std::vector<Transformation> all_permutations(Dimension dim);

// Base set U = {0, ..., size-1}, optionally labelled.
struct Base {
  uint32_t size;
  std::vector<std::string> labels;  // empty = unlabelled

  explicit Base(uint32_t n) : size(n) {
    if (n < 1) throw InputError("base must have at least one element");
  }
  Base(uint32_t n, std::vector<std::string> names)
      : size(n), labels(std::move(names)) {}

  std::string label(uint32_t u) const {
    return u < labels.size() ? labels[u] : std::to_string(u);
  }
  friend bool operator==(const Base& a, const Base& b) {
    return a.size == b.size;
  }
  friend bool operator!=(const Base& a, const Base& b) { return !(a == b); }
};

// Default cap on |U|^alpha; a relation is one bit per point.
constexpr uint64_t kDefaultPointLimit = uint64_t(1) << 24;

// |U|^alpha with overflow/size guard.
uint64_t point_count(Dimension dim, const Base& base,
                     uint64_t limit = kDefaultPointLimit);

// Little-endian mixed radix: index = sum_k s_k * |U|^k.
uint64_t encode_point(const std::vector<uint32_t>& coords, const Base& base);
std::vector<uint32_t> decode_point(uint64_t index, Dimension dim,
                                   const Base& base);

// An alpha-ary relation R over U as a bit-vector of length |U|^alpha;
// bit k is set iff decode(k) is in R. Immutable use after construction is
// thread-safe; all operations are pure.
class Relation {
 public:
  Relation(Dimension dim, const Base& base,
           uint64_t limit = kDefaultPointLimit);

  static Relation empty(Dimension dim, const Base& base);
  static Relation full(Dimension dim, const Base& base);
  static Relation singleton(const std::vector<uint32_t>& coords,
                            Dimension dim, const Base& base);
  static Relation of_points(const std::vector<std::vector<uint32_t>>& pts,
                            Dimension dim, const Base& base);

  Dimension dim() const { return dim_; }
  const Base& base() const { return base_; }
  uint64_t npoints() const { return npoints_; }

  bool test(uint64_t index) const {
    return (words_[index >> 6] >> (index & 63)) & 1;
  }
  void set(uint64_t index) { words_[index >> 6] |= uint64_t(1) << (index & 63); }
  void reset(uint64_t index) {
    words_[index >> 6] &= ~(uint64_t(1) << (index & 63));
  }

  uint64_t count() const;
  bool is_empty() const;
  bool is_full() const;

  Relation operator|(const Relation& o) const;
  Relation operator&(const Relation& o) const;
  Relation operator-(const Relation& o) const;  // set difference
  Relation complement() const;
  bool subset_of(const Relation& o) const;

  friend bool operator==(const Relation& a, const Relation& b) {
    a.require_same_space(b);
    return a.words_ == b.words_;
  }
  friend bool operator!=(const Relation& a, const Relation& b) {
    return !(a == b);
  }

  const std::vector<uint64_t>& words() const { return words_; }
  std::vector<uint64_t>& mutable_words() { return words_; }

  // Points in index order.
  std::vector<std::vector<uint32_t>> points() const;
  std::string to_string(uint64_t max_points = 16) const;

  void require_same_space(const Relation& o) const;

 private:
  void clear_slack();

  Dimension dim_;
  Base base_;
  uint64_t npoints_;
  std::vector<uint64_t> words_;
};

// C_i(R) = { s : s(i/u) in R for some u in U }.
Relation cyl(int i, const Relation& r);

// Iterated cyl over gamma in ascending index order; cyl_set({}, R) = R.
Relation cyl_set(const std::vector<int>& gamma, const Relation& r);

// S_sigma(R) = { s : s o sigma in R }. S_[i/j] is the substitution S_ij,
// S_[i,j] the transposition operator P_ij.
Relation sub_sigma(const Transformation& sigma, const Relation& r);

// Same bitset as sub_sigma but requires sigma to be a permutation.
Relation perm_sigma(const Transformation& sigma, const Relation& r);

Relation subst(int i, int j, const Relation& r);  // S_[i/j]
Relation perm(int i, int j, const Relation& r);   // S_[i,j]

// D_ij = { s : s(i) = s(j) }.
Relation diag(int i, int j, Dimension dim, const Base& base);

// { s(i) : s in R }, ascending.
std::vector<uint32_t> dom_i(int i, const Relation& r);

// The full algebra over Sb(^alpha U): carrier is every Relation over the
// space. Elements are plain Relations; the struct just fixes the space and
// provides the operator vocabulary the evaluator expects.
class SetAlgebra {
 public:
  using Element = Relation;

  SetAlgebra(Dimension dim, Base base, uint64_t limit = kDefaultPointLimit)
      : dim_(dim), base_(std::move(base)), npoints_(point_count(dim, base_, limit)) {}

  Dimension dim() const { return dim_; }
  const Base& base() const { return base_; }
  uint64_t npoints() const { return npoints_; }

  Element zero() const { return Relation::empty(dim_, base_); }
  Element one() const { return Relation::full(dim_, base_); }
  Element sum(const Element& a, const Element& b) const { return a | b; }
  Element product(const Element& a, const Element& b) const { return a & b; }
  Element complement(const Element& a) const { return a.complement(); }
  Element cyl(int i, const Element& a) const { return cylkit::cyl(i, a); }
  Element cyl_set(const std::vector<int>& g, const Element& a) const {
    return cylkit::cyl_set(g, a);
  }
  Element subst(int i, int j, const Element& a) const {
    return cylkit::subst(i, j, a);
  }
  Element perm(int i, int j, const Element& a) const {
    return cylkit::perm(i, j, a);
  }
  Element subst_sigma(const Transformation& s, const Element& a) const {
    return cylkit::sub_sigma(s, a);
  }
  Element diag(int i, int j) const { return cylkit::diag(i, j, dim_, base_); }

  // log2 of carrier size; one carrier element per bit pattern.
  uint64_t carrier_bits() const { return npoints_; }
  Element element_from_bits(uint64_t bits) const;
  template <class Rng>
  Element random_element(Rng& rng) const {
    Relation r(dim_, base_);
    for (auto& w : r.mutable_words()) w = rng();
    return normalize(std::move(r));
  }
  std::string element_to_string(const Element& e) const {
    return e.to_string();
  }
  std::string describe() const;

 private:
  static Element normalize(Relation r);

  Dimension dim_;
  Base base_;
  uint64_t npoints_;
};

}  // namespace cylkit
