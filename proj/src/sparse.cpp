#include "varlp/sparse.hpp"

#include <algorithm>

#include "varlp/errors.hpp"

namespace varlp {

SparseSequence SparseSequence::basis(Index k) {
  if (k == 0) fail(Errc::BadInput, "basis index must be >= 1");
  SparseSequence e;
  e.entries_.emplace_back(k, Complex(1.0, 0.0));
  return e;
}

SparseSequence SparseSequence::from_entries(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.first < b.first; });
  SparseSequence out;
  out.entries_.reserve(entries.size());
  for (const Entry& e : entries) {
    if (e.first == 0) fail(Errc::BadInput, "sequence indices start at 1");
    if (!out.entries_.empty() && out.entries_.back().first == e.first) {
      out.entries_.back().second += e.second;
      if (out.entries_.back().second == Complex(0.0, 0.0)) out.entries_.pop_back();
    } else if (e.second != Complex(0.0, 0.0)) {
      out.entries_.push_back(e);
    }
  }
  return out;
}

std::vector<Index> SparseSequence::support() const {
  std::vector<Index> s;
  s.reserve(entries_.size());
  for (const Entry& e : entries_) s.push_back(e.first);
  return s;
}

Index SparseSequence::max_index() const {
  return entries_.empty() ? 0 : entries_.back().first;
}

Complex SparseSequence::at(Index n) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                             [](const Entry& e, Index k) { return e.first < k; });
  if (it != entries_.end() && it->first == n) return it->second;
  return {0.0, 0.0};
}

double SparseSequence::sup_norm() const {
  double m = 0.0;
  for (const Entry& e : entries_) m = std::max(m, std::abs(e.second));
  return m;
}

SparseSequence& SparseSequence::operator+=(const SparseSequence& rhs) {
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + rhs.entries_.size());
  auto a = entries_.begin();
  auto b = rhs.entries_.begin();
  while (a != entries_.end() || b != rhs.entries_.end()) {
    if (b == rhs.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Complex sum = a->second + b->second;
      if (sum != Complex(0.0, 0.0)) merged.emplace_back(a->first, sum);
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
  return *this;
}

SparseSequence operator-(const SparseSequence& a, const SparseSequence& b) {
  return a + Complex(-1.0, 0.0) * b;
}

SparseSequence operator*(Complex c, const SparseSequence& a) {
  SparseSequence out;
  if (c == Complex(0.0, 0.0)) return out;
  out.entries_.reserve(a.entries_.size());
  for (const SparseSequence::Entry& e : a.entries_) {
    Complex v = c * e.second;
    if (v != Complex(0.0, 0.0)) out.entries_.emplace_back(e.first, v);
  }
  return out;
}

SparseSequence basis_vector(Index k) { return SparseSequence::basis(k); }

bool supports_disjoint(const SparseSequence& a, const SparseSequence& b) {
  auto i = a.entries().begin();
  auto j = b.entries().begin();
  while (i != a.entries().end() && j != b.entries().end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace varlp
