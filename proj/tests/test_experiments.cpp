#include <doctest.h>

#include <numeric>

#include "ternrec/errors.hpp"
#include "ternrec/experiments.hpp"

using namespace ternrec;

namespace {
const RecurrenceSpec kTrib = preset_spec(Preset::Tribonacci);
const RecurrenceSpec kPf = preset_spec(Preset::Pow2PlusFib);
}  // namespace

TEST_CASE("Z density") {
    const ExperimentReport small = z_density(kTrib, 13);
    CHECK(small.observation("z_count") == 2);
    CHECK(small.observation("pi") == 6);
    CHECK(small.observation("ratio") == doctest::Approx(1.0 / 3));
    CHECK_FALSE(small.pass);

    const ExperimentReport pf = z_density(kPf, 100'000, 0.02);
    CHECK(pf.observation("z_count") == 4813);
    CHECK(pf.observation("pi") == 9592);
    CHECK(pf.pass);
}

TEST_CASE("sweeps over small primes") {
    const ExperimentReport orders = order_sweep(kTrib, 3, 10);
    CHECK(orders.pass);
    CHECK(orders.observation("primes_checked") == 1);
    CHECK(orders.observation("t_equals_k") == 1);

    const ExperimentReport m = multiplier_sweep(kTrib, 3, 10);
    CHECK(m.pass);
    CHECK(m.observation("max_mult_order") == 3);

    for (const auto& s : {kTrib, kPf}) {
        CHECK(order_sweep(s, 100, 20'000).pass);
        CHECK(multiplier_sweep(s, 3, 5'000).pass);
    }
}

TEST_CASE("Beukers zero counts") {
    const ExperimentReport t = beukers_zero_count(kTrib, 500);
    CHECK(t.observation("zero_count") == 2);
    CHECK(t.pass);
    CHECK(beukers_zero_count(kPf, 500).observation("zero_count") == 0);
    const ExperimentReport odd = beukers_zero_count(RecurrenceSpec{1, 1, 1, 1, -1, 0}, 500);
    CHECK(odd.observation("zero_count") <= 6);
    CHECK_THROWS_AS(beukers_zero_count(RecurrenceSpec{1, 1, 1, 0, 0, 0}, 10), InvalidInput);
    CHECK_THROWS_AS(beukers_zero_count(preset_spec(Preset::Pow2PlusN), 10), InvalidInput);
}

TEST_CASE("character sum sweep") {
    const ExperimentReport r = char_sum_sweep(kTrib, 13);
    CHECK(r.observation("primes_checked") == 2);
    // |S| = 18 at p = 7, (c, d) = (0, 1).
    CHECK(r.observation("max_abs_sum_over_p") == doctest::Approx(18.0 / 7));
    CHECK(r.pass);
    CHECK(char_sum_sweep(kTrib, 300).pass);
}

TEST_CASE("omega over I and Z") {
    CHECK(omega_IZ(kTrib, 91, 2, 100) == 2);
    CHECK(omega_IZ(kTrib, 8, 2, 100) == 0);
    CHECK(omega_IZ(kTrib, 7 * 13 * 3, 2, 100) == 2);
    CHECK(omega_IZ(kTrib, 7 * 13, 7, 100) == 1);  // the interval is open
    for (u64 a = 1; a < 60; ++a)
        for (u64 b = 1; b < 60; ++b) {
            if (std::gcd(a, b) != 1) continue;
            CHECK(omega_IZ(kTrib, a * b, 2, 1000) == omega_IZ(kTrib, a, 2, 1000) + omega_IZ(kTrib, b, 2, 1000));
        }
    CHECK_THROWS_AS(omega_IZ(kTrib, 10, 5, 5), InvalidInput);
}

TEST_CASE("counterexample densities") {
    const ExperimentReport pn = counterexample_density(Preset::Pow2PlusN, 10);
    CHECK(pn.pass);
    CHECK(pn.observation("member_density") >= 0.5);
    const ExperimentReport sq = counterexample_density(Preset::SquarePow, 200);
    CHECK(sq.pass);
    CHECK(sq.observation("member_density") == 1.0);
    const ExperimentReport ff = counterexample_density(Preset::FiveFibSqMinus4, 200);
    CHECK(ff.pass);
    CHECK(ff.observation("target_member_density") == 1.0);
    CHECK_THROWS_AS(counterexample_density(Preset::Tribonacci, 10), InvalidInput);
}

TEST_CASE("density shape on small cutoffs") {
    const ExperimentReport r = density_shape(kTrib, {1000, 10000}, 120);
    CHECK(r.pass);
    // Every n <= 100 is decided exactly, so the bound rises going to 1000.
    const ExperimentReport rising = density_shape(kTrib, {100, 1000}, 120);
    CHECK(rising.observation("upper_density_100") == doctest::Approx(0.16));
    CHECK_FALSE(rising.pass);
    CHECK(r.observation("upper_density_1000") == doctest::Approx(0.43));
    CHECK(r.observation("upper_density_10000") == doctest::Approx(0.3957));
}
