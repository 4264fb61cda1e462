#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

// Two-sided periodic coefficient signals.  A signal of length L = 2N stores
// the logical indices -N..N-1 in ascending order; access through at() wraps
// periodically for any integer index.  Lengths are powers of two (pyramid
// levels); the degenerate length-1 signal is allowed so a single coefficient
// can still be upsampled.

namespace wavecurve {

class PeriodicSignal {
 public:
  PeriodicSignal() = default;

  explicit PeriodicSignal(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty() || (values_.size() & (values_.size() - 1)) != 0)
      throw std::invalid_argument("periodic signal length must be a power of two");
  }

  static PeriodicSignal zeros(std::size_t length) {
    return PeriodicSignal(std::vector<double>(length, 0.0));
  }

  std::size_t size() const noexcept { return values_.size(); }
  long first_index() const noexcept { return -static_cast<long>(values_.size() / 2); }
  long last_index() const noexcept { return first_index() + static_cast<long>(values_.size()) - 1; }

  // Periodic access for any integer index.
  double at(long k) const noexcept {
    const long len = static_cast<long>(values_.size());
    long off = (k - first_index()) % len;
    if (off < 0) off += len;
    return values_[static_cast<std::size_t>(off)];
  }

  // Bounded access within the stored window -N..N-1.
  double& slot(long k) {
    if (k < first_index() || k > last_index())
      throw std::out_of_range("index outside the stored window");
    return values_[static_cast<std::size_t>(k - first_index())];
  }

  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }

 private:
  std::vector<double> values_;
};

// Finite, symmetric-indexed filter: taps for logical indices 1-M..M-1 stored
// ascending, length 2M-1 with M >= 2.  Indices outside the window read as 0.
class TwoSidedFilter {
 public:
  explicit TwoSidedFilter(std::vector<double> taps) : taps_(std::move(taps)) {
    if (taps_.size() < 3 || taps_.size() % 2 == 0)
      throw std::invalid_argument("two-sided filter needs odd length >= 3");
  }

  long radius() const noexcept { return (static_cast<long>(taps_.size()) + 1) / 2; }

  double at(long k) const noexcept {
    const long m = radius();
    if (k <= -m || k >= m) return 0.0;
    return taps_[static_cast<std::size_t>(k + m - 1)];
  }

  const std::vector<double>& taps() const noexcept { return taps_; }

 private:
  std::vector<double> taps_;
};

}  // namespace wavecurve
