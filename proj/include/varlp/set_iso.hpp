#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "varlp/sparse.hpp"

namespace varlp {

struct BoundedImageCertificate {
  std::size_t max_image_size = 0;
};

// Regular set isomorphism of N, stored as the disjoint family {T{k}} for
// k = 1..domain_bound. Images are finite, nonempty and pairwise disjoint;
// the set map extends over unions and the sequence map by relabeling.
class RegularSetIso {
 public:
  static RegularSetIso from_family(std::vector<std::vector<Index>> images);

  std::uint64_t domain_bound() const { return images_.size(); }
  const std::vector<Index>& image_of(Index k) const;  // k in 1..domain_bound

  // Union of T{k} over k in a. Errors with OutOfDomain when a reaches past
  // the stored family instead of growing it silently.
  std::vector<Index> apply_to_set(std::span<const Index> a) const;

  // (Ta)_n = a_k when n is in T{k}, 0 otherwise.
  SparseSequence extend_to_sequence(const SparseSequence& a) const;

  std::vector<Index> range() const;  // T(1..domain_bound), sorted
  BoundedImageCertificate image_bound() const;

  bool operator==(const RegularSetIso&) const = default;

 private:
  std::vector<std::vector<Index>> images_;
};

// sup|T(a-b)| <= sup|a-b|; holds for every regular set isomorphism, exposed
// as a checkable predicate for the property harness.
bool sup_norm_contraction_check(const RegularSetIso& t, const SparseSequence& a,
                                const SparseSequence& b);

}  // namespace varlp
