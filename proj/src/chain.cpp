#include "qbat/chain.hpp"

#include <cmath>
#include <string>

namespace qbat {

void ChainSpec::validate() const {
  if (n_spins < 1 || n_spins > kMaxSpins) {
    throw argument_error("n_spins must be in [1, " + std::to_string(kMaxSpins) +
                         "], got " + std::to_string(n_spins));
  }
  if (!std::isfinite(field_b)) {
    throw argument_error("field_b must be finite");
  }
  if (!(g >= 0.0) || !std::isfinite(g)) {
    throw argument_error("coupling strength g must be >= 0, got " +
                         std::to_string(g));
  }
  if (!(gamma >= -1.0 && gamma <= 1.0)) {
    throw argument_error("anisotropy gamma must be in [-1, 1], got " +
                         std::to_string(gamma));
  }
  if (const auto* lr = std::get_if<LongRange>(&coupling)) {
    if (!(lr->exponent >= 0.0) || !std::isfinite(lr->exponent)) {
      throw argument_error("long-range exponent must be >= 0");
    }
  }
}

double coupling_strength(const CouplingScheme& scheme, double g, int i, int j) {
  if (i >= j) throw argument_error("coupling_strength requires i < j");
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NearestNeighbor>) {
          return (j == i + 1) ? g : 0.0;
        } else {
          return g / std::pow(static_cast<double>(j - i), s.exponent);
        }
      },
      scheme);
}

}  // namespace qbat
