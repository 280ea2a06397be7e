#include <doctest.h>

#include <random>

#include "ternrec/bigfactor.hpp"
#include "ternrec/errors.hpp"

using namespace ternrec;

namespace {

mpz_class product(const BigFactorization& f) {
    mpz_class r = 1;
    for (const auto& [q, e] : f) {
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), q.get_mpz_t(), e);
        r *= pw;
    }
    return r;
}

mpz_class next_prime(const mpz_class& n) {
    mpz_class r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

}  // namespace

TEST_CASE("probable primes") {
    CHECK(probable_prime(mpz_class("170141183460469231731687303715884105727")));  // 2^127 - 1
    CHECK_FALSE(probable_prime(mpz_class("170141183460469231731687303715884105729")));
    // Carmichael number above 2^64.
    CHECK_FALSE(probable_prime(mpz_class("3825123056546413051") * mpz_class("1000000000000000003")));
    CHECK_FALSE(probable_prime(1));
    CHECK(probable_prime(2));
}

TEST_CASE("factorizations") {
    CHECK(factor_big(1).empty());
    const BigFactorization f12 = factor_big(12);
    REQUIRE(f12.size() == 2);
    CHECK(f12[0] == std::pair<mpz_class, unsigned>{2, 2});

    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        mpz_class n = 1;
        std::vector<mpz_class> ps;
        for (int k = 0; k < 3; ++k) {
            // Primes below 2^40 keep rho within its budget.
            mpz_class seed = static_cast<unsigned long>(rng() >> 34);
            seed <<= (rng() % 10);
            ps.push_back(next_prime(seed));
            n *= ps.back();
        }
        const BigFactorization f = factor_big(n);
        CHECK(product(f) == n);
        for (const auto& [q, e] : f) CHECK(probable_prime(q));
        for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i - 1].first < f[i].first);
    }

    // Perfect power of a large prime.
    const mpz_class q = next_prime(mpz_class("1000000000000000000000"));
    mpz_class q5;
    mpz_pow_ui(q5.get_mpz_t(), q.get_mpz_t(), 5);
    const BigFactorization f = factor_big(q5 * 12);
    REQUIRE(f.size() == 3);
    CHECK(f[2] == std::pair<mpz_class, unsigned>{q, 5});
}

TEST_CASE("iteration budget") {
    const mpz_class a = next_prime(mpz_class("100000000000000000000"));
    const mpz_class b = next_prime(mpz_class("300000000000000000000"));
    CHECK_THROWS_AS(factor_big(a * b, FactorBudget{1000}), BudgetExceeded);
    CHECK(FactorBudget::from_seconds(1).max_iterations > 0);
}
