#pragma once

// Exact counting sieves (smooth numbers, integers and shifted primes with a divisor in
// an interval, squarefull multiples) and the thresholds of the density argument.

#include <cstdint>

namespace ternrec {

/// Largest x any counting sieve accepts.
inline constexpr std::uint64_t kSieveLimit = 100'000'000;

/// Psi(x, y) = #{1 <= n <= x : P(n) <= y}, with P(1) = 1 so n = 1 always counts.
std::uint64_t smooth_count(std::uint64_t x, double y);

/// H(x, y, z) = #{n <= x : d | n for some integer d with y < d < z}.
std::uint64_t divisor_interval_count(std::uint64_t x, double y, double z);

/// P(x, y, z; lam) = #{p <= x prime : d | p + lam for some integer d with y < d < z}, lam = +1 or -1.
std::uint64_t shifted_prime_count(std::uint64_t x, double y, double z, int lam);

/// #{n <= x : q^2 | n for some prime q > bound}.
std::uint64_t squarefull_multiple_count(std::uint64_t x, double bound);

/// Whether p - 1 (lam = -1) or p + 1 (lam = +1) has a divisor d with
/// p^{1/2}/log p < d < p^{1/2} exp(c (log log p)^2).
bool has_mid_divisor(std::uint64_t p, int lam, double c);

/// Thresholds attached to a cutoff x, all as real numbers.
struct SieveParameters {
    double x = 0;
    double kappa = 0;
    double lambda = 0;
    double c = 0;   // 20 / kappa^2
    double y1 = 0;  // exp(log x / log log x)
    double z1 = 0;  // (log x)^3
    double z2 = 0;  // exp(18 (log log x)^2)
    double z3 = 0;  // exp((log x)^kappa)
    double y2 = 0;  // exp(log x / (log log x)^2)
    double z4 = 0;  // exp(18 (log log x)^3)
    long long K = 0;  // floor(lambda log log x)
};

/// Requires x > e (so that log log x > 0). kappa and lambda default to the solved exponents.
SieveParameters sieve_parameters(double x);
SieveParameters sieve_parameters(double x, double kappa, double lambda);

}  // namespace ternrec
