#include <doctest.h>

#include <random>

#include "ternrec/errors.hpp"
#include "ternrec/modular.hpp"
#include "ternrec/numtheory.hpp"
#include "ternrec/representation.hpp"

using namespace ternrec;

namespace {

const RecurrenceSpec kTrib = preset_spec(Preset::Tribonacci);

// Least-v solution of u^2 + n v^2 = N by exhaustive search, as (u, v), or v = -1 if none.
std::pair<i64, i64> exhaustive(u64 N, u64 n) {
    for (u64 v = 0; n * v * v <= N; ++v) {
        const u64 rest = N - n * v * v;
        const u64 u = isqrt_u64(rest);
        if (u * u == rest) return {static_cast<i64>(u), static_cast<i64>(v)};
    }
    return {-1, -1};
}

void check_against_exhaustive(u64 N, u64 n, const RepresentOptions& opt) {
    const auto [u, v] = exhaustive(N, n);
    const Represented r = represent(N, n, opt);
    INFO("N = ", N, " n = ", n);
    if (v < 0) {
        CHECK(r.kind == Represented::Kind::NonMember);
    } else {
        REQUIRE(r.kind == Represented::Kind::Member);
        CHECK(r.u == u);
        CHECK(r.v == v);
    }
}

}  // namespace

TEST_CASE("integer square roots") {
    CHECK(integer_sqrt(25).root == 5);
    CHECK(integer_sqrt(25).is_square);
    CHECK(integer_sqrt(26).root == 5);
    CHECK_FALSE(integer_sqrt(26).is_square);
    const IntegerSqrt big = integer_sqrt(mpz_class(1) << 128);
    CHECK(big.root == mpz_class(1) << 64);
    CHECK(big.is_square);
    CHECK_THROWS_AS(integer_sqrt(-1), InvalidInput);
}

TEST_CASE("represent examples") {
    const Represented a = represent(233, 13);
    REQUIRE(a.kind == Represented::Kind::Member);
    CHECK(a.u == 5);
    CHECK(a.v == 4);
    const Represented zero = represent(0, 9);
    CHECK(zero.kind == Represented::Kind::Member);
    CHECK(zero.u == 0);
    CHECK(zero.v == 0);
    CHECK(represent(13, 7).kind == Represented::Kind::NonMember);
    const Represented sq = represent(4, 5);
    CHECK(sq.u == 2);
    CHECK(sq.v == 0);
    CHECK_THROWS_AS(represent(5, 0), InvalidInput);
}

TEST_CASE("both tiers agree with exhaustive search on small inputs") {
    RepresentOptions cornacchia;
    cornacchia.force_cornacchia = true;
    for (u64 n = 1; n <= 50; ++n)
        for (u64 N = 0; N <= 3000; ++N) {
            check_against_exhaustive(N, n, {});
            check_against_exhaustive(N, n, cornacchia);
        }
}

TEST_CASE("Cornacchia agrees with enumeration on random N up to 10^12") {
    std::mt19937_64 rng(99);
    RepresentOptions cornacchia;
    cornacchia.force_cornacchia = true;
    int members = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const u64 n = 1 + rng() % 1000;
        u64 N = rng() % 1'000'000'000'000ULL;
        if (trial % 2) {
            // Bias half the cases towards members.
            const u64 u = rng() % 1'000'000, v = rng() % (isqrt_u64(1'000'000'000'000ULL / n) + 1);
            N = std::min<u64>(u * u + n * v * v, 1'000'000'000'000ULL);
        }
        const Represented a = represent(N, n);
        const Represented b = represent(N, n, cornacchia);
        INFO("N = ", N, " n = ", n);
        CHECK(a.method == Method::Enumeration);
        CHECK(b.method == Method::Cornacchia);
        REQUIRE(a.kind == b.kind);
        members += a.kind == Represented::Kind::Member;
        if (a.kind == Represented::Kind::Member) {
            CHECK(a.u == b.u);
            CHECK(a.v == b.v);
        }
    }
    CHECK(members > 100);
}

TEST_CASE("Fibonacci primes F_p = u^2 + p v^2 for p = 1 mod 4") {
    const RecurrenceSpec fib = preset_spec(Preset::Fibonacci);
    for (u64 p : primes_up_to(101)) {
        if (p % 4 != 1) continue;
        const mpz_class F = term(fib, p);
        const Represented r = represent(F, p);
        INFO("p = ", p);
        REQUIRE(r.kind == Represented::Kind::Member);
        CHECK(r.u * r.u + p * r.v * r.v == F);
    }
}

TEST_CASE("large inputs reach the Cornacchia tier") {
    // (10^9 + 7)^2 + 3 (10^12 + 39)^2, far beyond the enumeration limit.
    const mpz_class u("1000000007"), v("1000000000039");
    const mpz_class N = u * u + 3 * v * v;
    const Represented r = represent(N, 3);
    REQUIRE(r.kind == Represented::Kind::Member);
    CHECK(r.method == Method::Cornacchia);
    CHECK(r.u * r.u + 3 * r.v * r.v == N);
    CHECK(r.v <= v);

    RepresentOptions tight;
    tight.factor_budget.max_iterations = 10;
    tight.force_cornacchia = true;
    const mpz_class hard = mpz_class("100000000000000000039") * mpz_class("300000000000000000041");
    CHECK(represent(hard, 5, tight).kind == Represented::Kind::Unknown);
}

TEST_CASE("quadratic residue obstruction") {
    CHECK(qr_obstruction(kTrib, 7) == 7u);
    CHECK_FALSE(qr_obstruction(kTrib, 5));
    CHECK_FALSE(qr_obstruction(kTrib, 1));
    CHECK_FALSE(qr_obstruction(kTrib, 64));
}

TEST_CASE("membership records") {
    const MembershipRecord m5 = membership(kTrib, 5, 120);
    CHECK(m5.status() == MemberStatus::Member);
    CHECK(m5.u() == 2);
    CHECK(m5.v() == 0);
    const MembershipRecord m7 = membership(kTrib, 7, 120);
    CHECK(m7.status() == MemberStatus::Obstructed);
    CHECK(m7.obstruction_prime() == 7u);
    CHECK(m7.certified_non_member());
    const MembershipRecord w = membership(preset_spec(Preset::Pow2PlusN), 8, 120);
    CHECK(w.status() == MemberStatus::Member);
    CHECK(w.method() == Method::WitnessFormula);
    CHECK(w.u() == 16);
    CHECK(w.v() == 1);
    CHECK(membership(kTrib, 1000, 120).status() != MemberStatus::Member);

    CHECK_THROWS_AS(MembershipRecord::member(5, 4, 1, 1, Method::Enumeration), std::logic_error);
    CHECK_THROWS_AS(MembershipRecord::obstructed(kTrib, 5, 5), std::logic_error);
    CHECK_THROWS_AS(MembershipRecord::obstructed(kTrib, 14, 2), std::logic_error);
}

TEST_CASE("obstructed indices are non-members, n <= 60") {
    std::vector<mpz_class> terms;
    for (const auto& t : term_iter(kTrib, 60)) terms.push_back(t);
    for (u64 n = 1; n <= 60; ++n) {
        const MembershipRecord r = membership(kTrib, n, 120);
        if (r.status() != MemberStatus::Obstructed) continue;
        INFO("n = ", n);
        // Exhaustive check for n <= 60 (T_60 < 2^53 * 2^10, so use big arithmetic).
        const mpz_class& U = terms[n];
        bool found = false;
        for (mpz_class v = 0; n * v * v <= U && !found; ++v) found = integer_sqrt(U - n * v * v).is_square;
        CHECK_FALSE(found);
    }
}

TEST_CASE("count_range") {
    const CountReport r = count_range(kTrib, 10, 120);
    REQUIRE(r.records.size() == 10);
    std::vector<mpz_class> terms;
    for (const auto& t : term_iter(kTrib, 10)) terms.push_back(t);
    for (const auto& rec : r.records) {
        const mpz_class& U = terms[rec.n()];
        bool found = false;
        for (mpz_class v = 0; rec.n() * v * v <= U && !found; ++v) found = integer_sqrt(U - rec.n() * v * v).is_square;
        INFO("n = ", rec.n());
        CHECK(found == (rec.status() == MemberStatus::Member));
        CHECK(rec.status() != MemberStatus::Unknown);
    }
    CHECK(r.members + r.non_members + r.obstructed + r.unknown == 10);
    CHECK(r.upper_bound == 10 - r.non_members - r.obstructed);
    CHECK(r.lower_bound == r.members);

    CHECK(count_range(preset_spec(Preset::SquarePow), 100, 120).members == 100);
    const CountReport one = count_range(kTrib, 1, 120);
    CHECK(one.records.size() == 1);

    // Same report whatever the thread count.
    const CountReport a = count_range(kTrib, 3000, 120, 1);
    const CountReport b = count_range(kTrib, 3000, 120, 4);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].status() == b.records[i].status());
        CHECK(a.records[i].u() == b.records[i].u());
        CHECK(a.records[i].v() == b.records[i].v());
    }
}
