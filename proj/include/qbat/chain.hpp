#pragma once

#include <cstddef>
#include <variant>

#include "qbat/errors.hpp"

namespace qbat {

// Dense 4^N operator storage; past this the memory cost is prohibitive.
inline constexpr int kMaxSpins = 12;

struct NearestNeighbor {};

struct LongRange {
  double exponent = 1.0;  // g_ij = g / |i-j|^exponent
};

using CouplingScheme = std::variant<NearestNeighbor, LongRange>;

/// Static description of the battery: chain length, magnetic field,
/// pair-coupling scheme, coupling strength and XY anisotropy.
struct ChainSpec {
  int n_spins = 1;
  double field_b = 1.0;
  CouplingScheme coupling = NearestNeighbor{};
  double g = 0.0;        // >= 0
  double gamma = 0.0;    // in [-1, 1]

  std::size_t dim() const { return std::size_t{1} << n_spins; }

  /// Throws argument_error if any invariant is violated.
  void validate() const;
};

/// Pair coupling g_ij between sites i < j.
/// NearestNeighbor: g for j == i+1, else 0.  LongRange: g / |i-j|^a.
double coupling_strength(const CouplingScheme& scheme, double g, int i, int j);

}  // namespace qbat
