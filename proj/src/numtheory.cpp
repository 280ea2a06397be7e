#include "ternrec/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace ternrec {

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 inv_mod(u64 a, u64 m) {
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

u64 lcm_u64(u64 a, u64 b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

u64 isqrt_u64(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

int legendre(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

constexpr u64 kTrialLimit = 1'000'000;

const std::vector<u64>& small_primes() {
    static const std::vector<u64> table = primes_up_to(kTrialLimit);
    return table;
}

// Brent's variant with batched gcds. n must be odd and composite.
u64 pollard_brent(u64 n) {
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return add_mod(mul_mod(x, x, n), c, n); };
        u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
        const u64 m = 128;
        u64 r = 1;
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split(u64 n, std::map<u64, int>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        ++out[n];
        return;
    }
    u64 d = pollard_brent(n);
    split(d, out);
    split(n / d, out);
}

}  // namespace

Factorization factor_u64(u64 n) {
    Factorization result;
    if (n <= 1) return result;
    for (u64 q : small_primes()) {
        if (q * q > n) break;
        if (n % q == 0) {
            int e = 0;
            while (n % q == 0) {
                n /= q;
                ++e;
            }
            result.emplace_back(q, e);
        }
    }
    if (n > 1) {
        std::map<u64, int> rest;
        split(n, rest);
        for (auto [q, e] : rest) result.emplace_back(q, e);
    }
    std::sort(result.begin(), result.end());
    return result;
}

Factorization merge_factorizations(const Factorization& a, const Factorization& b) {
    std::map<u64, int> m;
    for (auto [q, e] : a) m[q] += e;
    for (auto [q, e] : b) m[q] += e;
    return {m.begin(), m.end()};
}

u64 factorization_value(const Factorization& f) {
    u64 v = 1;
    for (auto [q, e] : f)
        for (int i = 0; i < e; ++i) v *= q;
    return v;
}

u64 order_from_multiple(u64 group_order, const Factorization& factors,
                        const std::function<bool(u64)>& is_identity_at) {
    u64 order = group_order;
    for (auto [q, e] : factors) {
        for (int i = 0; i < e && order % q == 0; ++i) {
            if (!is_identity_at(order / q)) break;
            order /= q;
        }
    }
    return order;
}

std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn) {
    if (hi < 2 || lo > hi) return;
    lo = std::max<u64>(lo, 2);
    const auto base = primes_up_to(isqrt_u64(hi));
    constexpr u64 kSegment = 1 << 18;
    std::vector<char> composite(kSegment);
    for (u64 seg = lo; seg <= hi; seg += kSegment) {
        const u64 seg_hi = std::min(hi, seg + kSegment - 1);
        std::fill(composite.begin(), composite.end(), 0);
        for (u64 q : base) {
            if (q * q > seg_hi) break;
            u64 start = std::max(q * q, (seg + q - 1) / q * q);
            for (u64 j = start; j <= seg_hi; j += q) composite[j - seg] = 1;
        }
        for (u64 n = seg; n <= seg_hi; ++n)
            if (!composite[n - seg]) fn(n);
        if (seg_hi == hi) break;
    }
}

u64 prime_count(u64 x) {
    u64 count = 0;
    for_each_prime(2, x, [&](u64) { ++count; });
    return count;
}

}  // namespace ternrec
