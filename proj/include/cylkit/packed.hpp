#pragma once

#include <vector>

#include "cylkit/core.hpp"

// Word-sized kernel for full set algebras whose point space fits one
// machine word: elements are uint64_t bitsets, cylindrifications become
// precomputed line masks and substitutions become index gathers. Must
// agree bit-for-bit with the Relation operations (property-tested).

namespace cylkit {

class PackedSetAlgebra {
 public:
  using Element = uint64_t;

  static constexpr uint64_t kMaxPoints = 63;

  explicit PackedSetAlgebra(const SetAlgebra& alg)
      : dim_(alg.dim()), base_(alg.base()), npoints_(alg.npoints()) {
    if (npoints_ > kMaxPoints)
      throw BudgetError("packed kernel needs |U|^alpha <= 63 points");
    mask_ = (Element(1) << npoints_) - 1;
    const int alpha = dim_.alpha();
    const uint64_t usize = base_.size;

    lines_.resize(static_cast<size_t>(alpha));
    uint64_t stride = 1;
    for (int i = 0; i < alpha; ++i) {
      const uint64_t block = stride * usize;
      for (uint64_t hi = 0; hi < npoints_; hi += block)
        for (uint64_t lo = 0; lo < stride; ++lo) {
          Element mask = 0;
          for (uint64_t u = 0; u < usize; ++u)
            mask |= Element(1) << (hi + lo + u * stride);
          lines_[static_cast<size_t>(i)].push_back(mask);
        }
      stride *= usize;
    }

    subst_tbl_.resize(static_cast<size_t>(alpha) * alpha);
    perm_tbl_.resize(static_cast<size_t>(alpha) * alpha);
    diag_.resize(static_cast<size_t>(alpha) * alpha);
    for (int i = 0; i < alpha; ++i)
      for (int j = 0; j < alpha; ++j) {
        const size_t at = static_cast<size_t>(i) * alpha + j;
        subst_tbl_[at] =
            gather_table(Transformation::replacement(i, j, dim_));
        perm_tbl_[at] =
            gather_table(Transformation::transposition(i, j, dim_));
        Element d = 0;
        for (uint64_t k = 0; k < npoints_; ++k) {
          const auto c = decode_point(k, dim_, base_);
          if (c[static_cast<size_t>(i)] == c[static_cast<size_t>(j)])
            d |= Element(1) << k;
        }
        diag_[at] = d;
      }
  }

  Dimension dim() const { return dim_; }
  const Base& base() const { return base_; }
  uint64_t npoints() const { return npoints_; }

  Element zero() const { return 0; }
  Element one() const { return mask_; }
  Element sum(Element a, Element b) const { return a | b; }
  Element product(Element a, Element b) const { return a & b; }
  Element complement(Element a) const { return mask_ & ~a; }

  Element cyl(int i, Element a) const {
    check_index(i);
    Element out = 0;
    for (Element mask : lines_[static_cast<size_t>(i)])
      if (a & mask) out |= mask;
    return out;
  }
  Element cyl_set(const std::vector<int>& gamma, Element a) const {
    Element out = a;
    for (int i : gamma) out = cyl(i, out);  // order immaterial: C_i commute
    return out;
  }
  Element subst(int i, int j, Element a) const {
    check_index(i);
    check_index(j);
    return gather(subst_tbl_[static_cast<size_t>(i) * dim_.alpha() + j], a);
  }
  Element perm(int i, int j, Element a) const {
    check_index(i);
    check_index(j);
    return gather(perm_tbl_[static_cast<size_t>(i) * dim_.alpha() + j], a);
  }
  Element subst_sigma(const Transformation& sigma, Element a) const {
    return gather(gather_table(sigma), a);
  }
  Element diag(int i, int j) const {
    check_index(i);
    check_index(j);
    return diag_[static_cast<size_t>(i) * dim_.alpha() + j];
  }

  uint64_t carrier_bits() const { return npoints_; }
  Element element_from_bits(uint64_t bits) const { return bits & mask_; }
  template <class Rng>
  Element random_element(Rng& rng) const {
    return rng() & mask_;
  }

  Relation unpack(Element a) const {
    Relation r(dim_, base_);
    for (uint64_t k = 0; k < npoints_; ++k)
      if ((a >> k) & 1) r.set(k);
    return r;
  }
  Element pack(const Relation& r) const {
    r.require_same_space(Relation(dim_, base_));
    return r.words()[0] & mask_;
  }

  std::string element_to_string(Element a) const {
    return unpack(a).to_string();
  }
  // Same description as the Relation-backed algebra: reports must not
  // depend on which kernel ran.
  std::string describe() const {
    return SetAlgebra(dim_, base_).describe();
  }

 private:
  void check_index(int i) const {
    if (i < 0 || i >= dim_.alpha())
      throw DimensionError("index " + std::to_string(i) +
                           " out of dimension " +
                           std::to_string(dim_.alpha()));
  }

  std::vector<uint8_t> gather_table(const Transformation& sigma) const {
    const int alpha = dim_.alpha();
    const uint64_t usize = base_.size;
    std::vector<uint8_t> tbl(npoints_);
    uint32_t coords[Dimension::kMaxAlpha];
    for (uint64_t k = 0; k < npoints_; ++k) {
      uint64_t rest = k;
      for (int m = 0; m < alpha; ++m) {
        coords[m] = static_cast<uint32_t>(rest % usize);
        rest /= usize;
      }
      uint64_t composed = 0;
      for (int m = alpha; m-- > 0;) composed = composed * usize + coords[sigma(m)];
      tbl[k] = static_cast<uint8_t>(composed);
    }
    return tbl;
  }

  static Element gather(const std::vector<uint8_t>& tbl, Element a) {
    Element out = 0;
    for (size_t k = 0; k < tbl.size(); ++k)
      out |= ((a >> tbl[k]) & 1) << k;
    return out;
  }

  Dimension dim_;
  Base base_;
  uint64_t npoints_;
  Element mask_ = 0;
  std::vector<std::vector<Element>> lines_;     // per i
  std::vector<std::vector<uint8_t>> subst_tbl_;  // per (i,j)
  std::vector<std::vector<uint8_t>> perm_tbl_;
  std::vector<Element> diag_;
};

}  // namespace cylkit
