#pragma once

#include <span>
#include <vector>

namespace nrics {

/// Strictly increasing set of positive operating frequencies.
class FrequencySet {
 public:
  explicit FrequencySet(std::vector<double> hz);

  /// 500, 600 and 700 MHz.
  static FrequencySet default_experiment();

  std::size_t size() const noexcept { return hz_.size(); }
  double hz(std::size_t k) const { return hz_.at(k); }
  double omega(std::size_t k) const;
  std::span<const double> hz() const noexcept { return hz_; }

  /// Angular frequency at the middle of the band.
  double center_omega() const;

 private:
  std::vector<double> hz_;
};

}  // namespace nrics
