#include "ternrec/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ternrec/charpoly.hpp"
#include "ternrec/errors.hpp"
#include "ternrec/numtheory.hpp"

namespace ternrec {

namespace {

void check_limit(std::uint64_t x) {
    if (x > kSieveLimit)
        throw BudgetExceeded("sieve bound " + std::to_string(x) + " exceeds " + std::to_string(kSieveLimit));
}

// Integers strictly between y and z.
std::pair<std::uint64_t, std::uint64_t> open_interval(double y, double z, std::uint64_t cap) {
    const double lo_d = std::floor(y) + 1.0;
    const double hi_d = std::ceil(z) - 1.0;
    if (hi_d < lo_d || lo_d > static_cast<double>(cap)) return {1, 0};
    const auto lo = static_cast<std::uint64_t>(std::max(lo_d, 1.0));
    const auto hi = static_cast<std::uint64_t>(std::min(hi_d, static_cast<double>(cap)));
    return {lo, hi};
}

}  // namespace

std::uint64_t smooth_count(std::uint64_t x, double y) {
    if (x == 0) return 0;
    if (y < 2) return 1;
    if (y >= static_cast<double>(x)) return x;
    check_limit(x);
    const auto ymax = static_cast<std::uint64_t>(std::floor(y));
    if (ymax * ymax >= x) {
        // Each non-smooth n has exactly one prime factor above y.
        std::uint64_t rough = 0;
        for_each_prime(ymax + 1, x, [&](u64 p) { rough += x / p; });
        return x - rough;
    }
    const std::vector<u64> primes = primes_up_to(ymax);
    constexpr std::uint64_t kSegment = 1u << 20;
    std::vector<std::uint32_t> rest(kSegment);
    std::uint64_t count = 0;
    for (std::uint64_t lo = 1; lo <= x; lo += kSegment) {
        const std::uint64_t hi = std::min(x, lo + kSegment - 1);
        for (std::uint64_t n = lo; n <= hi; ++n) rest[n - lo] = static_cast<std::uint32_t>(n);
        for (u64 p : primes) {
            for (std::uint64_t n = (lo + p - 1) / p * p; n <= hi; n += p) {
                std::uint32_t& r = rest[n - lo];
                do r /= static_cast<std::uint32_t>(p);
                while (r % p == 0);
            }
        }
        for (std::uint64_t n = lo; n <= hi; ++n) count += rest[n - lo] == 1;
    }
    return count;
}

std::uint64_t divisor_interval_count(std::uint64_t x, double y, double z) {
    check_limit(x);
    const auto [lo, hi] = open_interval(y, z, x);
    std::vector<bool> hit(x + 1, false);
    for (std::uint64_t d = lo; d <= hi; ++d)
        for (std::uint64_t m = d; m <= x; m += d) hit[m] = true;
    return static_cast<std::uint64_t>(std::count(hit.begin() + 1, hit.end(), true));
}

std::uint64_t shifted_prime_count(std::uint64_t x, double y, double z, int lam) {
    if (lam != 1 && lam != -1) throw InvalidInput("shift must be +1 or -1");
    check_limit(x);
    const std::uint64_t top = x + 1;
    const auto [lo, hi] = open_interval(y, z, top);
    std::vector<bool> hit(top + 1, false);
    for (std::uint64_t d = lo; d <= hi; ++d)
        for (std::uint64_t m = d; m <= top; m += d) hit[m] = true;
    std::uint64_t count = 0;
    for_each_prime(2, x, [&](u64 p) { count += hit[lam > 0 ? p + 1 : p - 1]; });
    return count;
}

std::uint64_t squarefull_multiple_count(std::uint64_t x, double bound) {
    check_limit(x);
    const u64 r = isqrt_u64(x);
    const auto start = static_cast<u64>(std::max(0.0, std::floor(bound))) + 1;
    if (start > r) return 0;
    std::vector<bool> hit(x + 1, false);
    for_each_prime(start, r, [&](u64 q) {
        for (u64 m = q * q; m <= x; m += q * q) hit[m] = true;
    });
    return static_cast<std::uint64_t>(std::count(hit.begin() + 1, hit.end(), true));
}

bool has_mid_divisor(std::uint64_t p, int lam, double c) {
    if (lam != 1 && lam != -1) throw InvalidInput("shift must be +1 or -1");
    if (p < 3) return false;
    const double lp = std::log(static_cast<double>(p));
    const double root = std::sqrt(static_cast<double>(p));
    const double lo = root / lp;
    const double hi = root * std::exp(c * std::pow(std::log(lp), 2));
    const u64 m = lam > 0 ? p + 1 : p - 1;
    std::vector<u64> divisors{1};
    for (const auto& [q, e] : factor_u64(m)) {
        const std::size_t base = divisors.size();
        u64 power = 1;
        for (int k = 1; k <= e; ++k) {
            power *= q;
            for (std::size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * power);
        }
    }
    return std::any_of(divisors.begin(), divisors.end(), [&](u64 d) {
        const auto dd = static_cast<double>(d);
        return dd > lo && dd < hi;
    });
}

SieveParameters sieve_parameters(double x) {
    const ExponentSolution e = solve_exponents();
    return sieve_parameters(x, e.kappa, e.lambda);
}

SieveParameters sieve_parameters(double x, double kappa, double lambda) {
    if (!(x > std::exp(1.0))) throw InvalidInput("sieve parameters need x > e");
    SieveParameters s;
    const double L = std::log(x);
    const double LL = std::log(L);
    s.x = x;
    s.kappa = kappa;
    s.lambda = lambda;
    s.c = 20.0 / (kappa * kappa);
    s.y1 = std::exp(L / LL);
    s.z1 = L * L * L;
    s.z2 = std::exp(18.0 * LL * LL);
    s.z3 = std::exp(std::pow(L, kappa));
    s.y2 = std::exp(L / (LL * LL));
    s.z4 = std::exp(18.0 * LL * LL * LL);
    s.K = static_cast<long long>(std::floor(lambda * LL));
    return s;
}

}  // namespace ternrec
