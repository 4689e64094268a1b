#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace varlp {

using Index = std::uint64_t;  // sequence positions are 1-based
using Complex = std::complex<double>;

// Finitely supported complex sequence. Entries are kept sorted by index with
// no explicit zeros, so two sequences are equal iff their entry lists are.
class SparseSequence {
 public:
  using Entry = std::pair<Index, Complex>;

  SparseSequence() = default;

  static SparseSequence basis(Index k);  // e_k

  // Sorts, sums duplicate indices, drops exact zeros. Index 0 is rejected.
  static SparseSequence from_entries(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }
  std::vector<Index> support() const;
  Index max_index() const;  // 0 for the zero sequence
  Complex at(Index n) const;
  double sup_norm() const;

  SparseSequence& operator+=(const SparseSequence& rhs);
  friend SparseSequence operator+(SparseSequence a, const SparseSequence& b) {
    a += b;
    return a;
  }
  friend SparseSequence operator-(const SparseSequence& a, const SparseSequence& b);
  friend SparseSequence operator*(Complex c, const SparseSequence& a);

  bool operator==(const SparseSequence&) const = default;

 private:
  std::vector<Entry> entries_;
};

SparseSequence basis_vector(Index k);

bool supports_disjoint(const SparseSequence& a, const SparseSequence& b);

}  // namespace varlp
