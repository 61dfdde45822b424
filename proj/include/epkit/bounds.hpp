#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace epkit {

/// Which size thresholds the high-treewidth machinery enforces. `Paper`
/// uses the published constants (astronomically large); `Small` accepts
/// caller-supplied witnesses below them and marks results non-paper-scale.
enum class ThresholdMode { Paper, Small };

std::string to_string(ThresholdMode mode);
ThresholdMode parse_threshold_mode(const std::string& text);

/// A non-negative integer that may not fit in 64 bits: `exact` is set when it
/// does, `log2` is always set.
struct Magnitude {
  std::optional<std::uint64_t> exact;
  long double log2 = 0;

  // True iff the value is strictly greater than `n`.
  bool exceeds(std::uint64_t n) const { return !exact || *exact > n; }
};

// 2^p * p^(6p): irrelevant-vertex search in paper mode needs |Z| strictly above this.
Magnitude linkage_z_bound(int p);

// rho(k) = 2^(3k) * (3k)^(18k) + 1.
Magnitude rho(int k);

// Constants of the main driver with the Flat Wall constant c taken as 1:
//   rho'(k) = rho(k) + 3k, pi(k) = 2 (2^r r^(6r) + 1) with r = 3k + rho(k),
//   sigma(k) = 16 k^2 (pi(k) + 2k), sigma'(k) = sigma(k) + rho'(k) + 3k,
//   w(k) = (sigma'(k) (sigma'(k) + rho'(k)))^20,
//   tau(k) = max(tau(k-1) + rho'(k) + 3k, (k-1)(w(k)+1)), tau(0) = 0.
// Only log2 values are meaningful for k >= 1.
struct DriverConstants {
  int k = 0;
  Magnitude rho;
  Magnitude rho_prime;
  long double log2_pi = 0;
  long double log2_sigma = 0;
  long double log2_sigma_prime = 0;
  long double log2_w = 0;
  long double log2_tau = 0;
};

DriverConstants driver_constants(int k);

}  // namespace epkit
