#include "epkit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epkit/errors.hpp"

namespace epkit {

namespace {

std::optional<std::uint64_t> checked_mul(std::optional<std::uint64_t> a, std::uint64_t b) {
  if (!a) return std::nullopt;
  if (b != 0 && *a > std::numeric_limits<std::uint64_t>::max() / b) return std::nullopt;
  return *a * b;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::optional<std::uint64_t> r = 1;
  for (std::uint64_t i = 0; i < exp && r; ++i) r = checked_mul(r, base);
  return r;
}

// log2(2^a + 2^b)
long double log2_add(long double a, long double b) {
  const long double hi = std::max(a, b);
  const long double lo = std::min(a, b);
  return hi + std::log2(1.0L + std::exp2(lo - hi));
}

Magnitude plus(const Magnitude& m, std::uint64_t c) {
  Magnitude r;
  if (m.exact && *m.exact <= std::numeric_limits<std::uint64_t>::max() - c) r.exact = *m.exact + c;
  r.log2 = r.exact ? std::log2(static_cast<long double>(*r.exact))
                   : log2_add(m.log2, std::log2(static_cast<long double>(c)));
  return r;
}

}  // namespace

std::string to_string(ThresholdMode mode) { return mode == ThresholdMode::Paper ? "paper" : "small"; }

ThresholdMode parse_threshold_mode(const std::string& text) {
  if (text == "paper") return ThresholdMode::Paper;
  if (text == "small") return ThresholdMode::Small;
  throw InvalidInput("unknown thresholds mode '" + text + "' (expected paper or small)");
}

Magnitude linkage_z_bound(int p) {
  if (p < 1) throw InvalidInput("linkage_z_bound: p must be positive");
  Magnitude m;
  m.exact = checked_pow(p, 6 * static_cast<std::uint64_t>(p));
  m.exact = checked_mul(m.exact, std::uint64_t{1} << std::min(p, 63));
  if (p >= 64) m.exact.reset();
  m.log2 = p + 6.0L * p * std::log2(static_cast<long double>(p));
  return m;
}

Magnitude rho(int k) {
  if (k < 1) throw InvalidInput("rho: k must be positive");
  Magnitude base;
  const std::uint64_t three_k = 3 * static_cast<std::uint64_t>(k);
  base.exact = checked_pow(three_k, 18 * static_cast<std::uint64_t>(k));
  base.exact = three_k < 64 ? checked_mul(base.exact, std::uint64_t{1} << three_k) : std::nullopt;
  base.log2 = three_k + 18.0L * k * std::log2(static_cast<long double>(three_k));
  return plus(base, 1);
}

DriverConstants driver_constants(int k) {
  if (k < 1) throw InvalidInput("driver_constants: k must be positive");
  DriverConstants c;
  c.k = k;
  long double tau = -std::numeric_limits<long double>::infinity();  // log2(0)
  for (int j = 1; j <= k; ++j) {
    const Magnitude rh = rho(j);
    const Magnitude rp = plus(rh, 3 * static_cast<std::uint64_t>(j));
    const long double log2_r = log2_add(rh.log2, std::log2(3.0L * j));
    const long double r = std::exp2(log2_r);
    // 2^r r^(6r) dominates the +1, then times 2.
    const long double log2_pi = 1.0L + r + 6.0L * r * log2_r;
    const long double log2_sigma =
        4.0L + 2.0L * std::log2(static_cast<long double>(j)) + log2_add(log2_pi, std::log2(2.0L * j));
    const long double log2_sigma_prime =
        log2_add(log2_add(log2_sigma, rp.log2), std::log2(3.0L * j));
    const long double log2_w = 20.0L * (log2_sigma_prime + log2_add(log2_sigma_prime, rp.log2));
    const long double step = log2_add(tau, log2_add(rp.log2, std::log2(3.0L * j)));
    const long double cover =
        j == 1 ? -std::numeric_limits<long double>::infinity()
               : std::log2(static_cast<long double>(j - 1)) + log2_add(log2_w, 0.0L);
    tau = std::max(step, cover);
    if (j == k) {
      c.rho = rh;
      c.rho_prime = rp;
      c.log2_pi = log2_pi;
      c.log2_sigma = log2_sigma;
      c.log2_sigma_prime = log2_sigma_prime;
      c.log2_w = log2_w;
      c.log2_tau = tau;
    }
  }
  return c;
}

}  // namespace epkit
