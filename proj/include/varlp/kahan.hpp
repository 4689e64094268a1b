#pragma once

namespace varlp {

// Compensated accumulator. Feed terms in ascending index order so that sums
// are reproducible across platforms and runs.
class KahanSum {
 public:
  void add(double x) {
    double y = x - carry_;
    double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace varlp
