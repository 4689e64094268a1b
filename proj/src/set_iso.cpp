#include "varlp/set_iso.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "varlp/errors.hpp"

namespace varlp {

RegularSetIso RegularSetIso::from_family(std::vector<std::vector<Index>> images) {
  std::unordered_set<Index> seen;
  for (std::size_t k = 0; k < images.size(); ++k) {
    auto& image = images[k];
    if (image.empty()) {
      fail(Errc::EmptyImage, "image of {" + std::to_string(k + 1) + "} is empty");
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    for (Index n : image) {
      if (n == 0) fail(Errc::BadInput, "image elements start at 1");
      if (!seen.insert(n).second) {
        fail(Errc::DisjointnessViolation,
             "index " + std::to_string(n) + " appears in two images");
      }
    }
  }
  RegularSetIso t;
  t.images_ = std::move(images);
  return t;
}

const std::vector<Index>& RegularSetIso::image_of(Index k) const {
  if (k == 0 || k > images_.size()) {
    fail(Errc::OutOfDomain, "{" + std::to_string(k) + "} is outside the stored family");
  }
  return images_[k - 1];
}

std::vector<Index> RegularSetIso::apply_to_set(std::span<const Index> a) const {
  std::vector<Index> out;
  for (Index k : a) {
    const auto& image = image_of(k);
    out.insert(out.end(), image.begin(), image.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SparseSequence RegularSetIso::extend_to_sequence(const SparseSequence& a) const {
  std::vector<SparseSequence::Entry> out;
  for (const auto& [k, v] : a.entries()) {
    for (Index n : image_of(k)) out.emplace_back(n, v);
  }
  return SparseSequence::from_entries(std::move(out));
}

std::vector<Index> RegularSetIso::range() const {
  std::vector<Index> out;
  for (const auto& image : images_) out.insert(out.end(), image.begin(), image.end());
  std::sort(out.begin(), out.end());
  return out;  // disjointness makes the concatenation duplicate-free
}

BoundedImageCertificate RegularSetIso::image_bound() const {
  BoundedImageCertificate cert;
  for (const auto& image : images_) {
    cert.max_image_size = std::max(cert.max_image_size, image.size());
  }
  return cert;
}

bool sup_norm_contraction_check(const RegularSetIso& t, const SparseSequence& a,
                                const SparseSequence& b) {
  SparseSequence diff = a - b;
  return t.extend_to_sequence(diff).sup_norm() <= diff.sup_norm();
}

}  // namespace varlp
