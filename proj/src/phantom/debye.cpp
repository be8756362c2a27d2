#include "nrics/phantom/debye.hpp"

#include <cmath>

#include "nrics/core/error.hpp"

namespace nrics {

void DebyeTissue::validate() const {
  const bool finite = std::isfinite(eps_inf) && std::isfinite(delta_eps) && std::isfinite(tau) &&
                      std::isfinite(sigma_s);
  if (!finite || eps_inf < 1.0 || delta_eps < 0.0 || !(tau > 0.0) || sigma_s < 0.0) {
    throw InvariantError("Debye parameters need eps_inf >= 1, delta_eps >= 0, tau > 0, sigma >= 0");
  }
}

cplx DebyeTissue::evaluate(double omega) const {
  if (!(omega > 0.0)) throw DomainError("Debye evaluation needs omega > 0");
  const cplx j{0.0, 1.0};
  return eps_inf + delta_eps / (1.0 - j * omega * tau) + j * sigma_s / (omega * kEps0);
}

void TissueLibrary::validate() const {
  for (const auto* t : {&fat, &fibroglandular, &skin, &muscle, &bolus, &lesion}) t->validate();
}

}  // namespace nrics
