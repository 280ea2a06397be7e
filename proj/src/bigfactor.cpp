#include "ternrec/bigfactor.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "ternrec/errors.hpp"
#include "ternrec/numtheory.hpp"

namespace ternrec {

namespace {

constexpr std::uint64_t kTrialLimit = 1'000'000;
constexpr std::uint64_t kRhoBatch = 128;

const std::vector<u64>& small_primes() {
    static const std::vector<u64> primes = primes_up_to(kTrialLimit);
    return primes;
}

bool fits_u64(const mpz_class& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

u64 to_u64(const mpz_class& n) {
    u64 v = 0;
    mpz_export(&v, nullptr, -1, sizeof v, 0, 0, n.get_mpz_t());
    return v;
}

mpz_class from_u64(u64 v) {
    mpz_class r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
    return r;
}

// One Brent rho attempt with polynomial x^2 + c. Returns a nontrivial divisor or 0.
mpz_class brent_rho(const mpz_class& n, unsigned long c, std::uint64_t& remaining) {
    mpz_class y = 2, x, ys, q = 1, g = 1, t;
    std::uint64_t r = 1;
    auto f = [&](mpz_class& v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) f(y);
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            const std::uint64_t batch = std::min(kRhoBatch, r - k);
            if (remaining < batch) throw BudgetExceeded("factorization exceeded its iteration budget");
            remaining -= batch;
            for (std::uint64_t i = 0; i < batch; ++i) {
                f(y);
                t = x - y;
                q *= t;
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += batch;
        }
        r *= 2;
    }
    if (g == n) {
        // The batch overshot: retrace one step at a time.
        do {
            f(ys);
            t = x - ys;
            mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g == n ? mpz_class(0) : g;
}

void split(const mpz_class& n, std::map<mpz_class, unsigned>& out, unsigned multiplicity, std::uint64_t& remaining) {
    if (n == 1) return;
    if (fits_u64(n)) {
        for (const auto& [q, e] : factor_u64(to_u64(n))) out[from_u64(q)] += static_cast<unsigned>(e) * multiplicity;
        return;
    }
    if (probable_prime(n)) {
        out[n] += multiplicity;
        return;
    }
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = mpz_sizeinbase(n.get_mpz_t(), 2); k >= 2; --k) {
            mpz_class root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k)) {
                split(root, out, multiplicity * static_cast<unsigned>(k), remaining);
                return;
            }
        }
    }
    for (unsigned long c = 1;; ++c) {
        const mpz_class d = brent_rho(n, c, remaining);
        if (d != 0) {
            split(d, out, multiplicity, remaining);
            split(n / d, out, multiplicity, remaining);
            return;
        }
    }
}

}  // namespace

FactorBudget FactorBudget::from_seconds(double seconds) {
    constexpr double kIterationsPerSecond = 5'000'000.0;
    const double it = std::max(1.0, seconds * kIterationsPerSecond);
    return FactorBudget{static_cast<std::uint64_t>(std::min(it, 1e18))};
}

bool probable_prime(const mpz_class& n) {
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    if (mpz_even_p(n.get_mpz_t())) return false;
    for (u64 p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;

    const mpz_class n_minus_1 = n - 1;
    mpz_class d = n_minus_1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    std::mt19937_64 rng(0x7465726e726563ULL);
    const mpz_class span = n - 3;
    mpz_class a, x;
    for (int round = 0; round < 64; ++round) {
        // base in [2, n-2]
        a = 0;
        for (int limb = 0; limb < 4; ++limb) {
            a <<= 64;
            a += from_u64(rng());
        }
        mpz_mod(a.get_mpz_t(), a.get_mpz_t(), span.get_mpz_t());
        a += 2;
        mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == n_minus_1) continue;
        bool witness = true;
        for (unsigned long i = 1; i < s; ++i) {
            x = x * x;
            mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
            if (x == n_minus_1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

BigFactorization factor_big(const mpz_class& n, const FactorBudget& budget) {
    if (n < 1) throw InvalidInput("factor_big requires n >= 1");
    std::map<mpz_class, unsigned> found;
    mpz_class rest = n;
    for (u64 p : small_primes()) {
        if (fits_u64(rest)) break;
        const mpz_class pz = from_u64(p);
        if (pz * pz > rest) break;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++found[pz];
        }
    }
    std::uint64_t remaining = budget.max_iterations;
    split(rest, found, 1, remaining);
    return {found.begin(), found.end()};
}

}  // namespace ternrec
