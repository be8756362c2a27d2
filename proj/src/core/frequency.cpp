#include "nrics/core/frequency.hpp"

#include <cmath>
#include <numbers>

#include "nrics/core/error.hpp"

namespace nrics {

FrequencySet::FrequencySet(std::vector<double> hz) : hz_(std::move(hz)) {
  if (hz_.empty()) throw ConfigurationError("frequency set is empty");
  for (std::size_t k = 0; k < hz_.size(); ++k) {
    if (!(hz_[k] > 0.0) || !std::isfinite(hz_[k])) {
      throw ConfigurationError("frequencies must be positive and finite");
    }
    if (k > 0 && !(hz_[k] > hz_[k - 1])) {
      throw ConfigurationError("frequencies must be strictly increasing");
    }
  }
}

FrequencySet FrequencySet::default_experiment() { return FrequencySet({500e6, 600e6, 700e6}); }

double FrequencySet::omega(std::size_t k) const { return 2.0 * std::numbers::pi * hz_.at(k); }

double FrequencySet::center_omega() const {
  return std::numbers::pi * (hz_.front() + hz_.back());
}

}  // namespace nrics
