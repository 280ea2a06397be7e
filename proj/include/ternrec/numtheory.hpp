#pragma once

// Word-size modular arithmetic, factorization and prime enumeration.
// Moduli are assumed < 2^63 so that sums of two residues never overflow.

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace ternrec {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
inline u64 add_mod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return s >= m ? s - m : s;
}
inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

/// Reduces a signed value into [0, m).
inline u64 reduce(i64 a, u64 m) {
    i64 r = static_cast<i64>(static_cast<__int128>(a) % static_cast<__int128>(m));
    return r < 0 ? static_cast<u64>(r + static_cast<i64>(m)) : static_cast<u64>(r);
}

u64 pow_mod(u64 base, u64 exp, u64 m);
/// Inverse of a modulo m; a must be a unit.
u64 inv_mod(u64 a, u64 m);
u64 gcd_u64(u64 a, u64 b);
u64 lcm_u64(u64 a, u64 b);
/// floor(sqrt(n)), exact.
u64 isqrt_u64(u64 n);

/// Legendre symbol (a/p) for an odd prime p; returns -1, 0 or 1.
int legendre(u64 a, u64 p);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime_u64(u64 n);

using Factorization = std::vector<std::pair<u64, int>>;

/// Prime factorization with primes sorted ascending: trial division by the
/// primes below 10^6, then Pollard rho (Brent) on whatever is left.
Factorization factor_u64(u64 n);

/// Merges two factorizations (exponents of shared primes add).
Factorization merge_factorizations(const Factorization& a, const Factorization& b);

u64 factorization_value(const Factorization& f);

/// Order of an element in a cyclic-exponent group: `group_order` is any
/// multiple of the order with factorization `factors`; `is_identity_at(k)`
/// reports whether the element raised to k is the identity.
u64 order_from_multiple(u64 group_order, const Factorization& factors,
                        const std::function<bool(u64)>& is_identity_at);

/// All primes <= limit, ascending.
std::vector<u64> primes_up_to(u64 limit);

/// Calls fn(p) for every prime p in [lo, hi], ascending, using a segmented sieve.
void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn);

/// pi(x) by segmented sieve.
u64 prime_count(u64 x);

}  // namespace ternrec
