#include <doctest.h>

#include <random>
#include <vector>

#include "ternrec/errors.hpp"
#include "ternrec/recurrence.hpp"

using namespace ternrec;

namespace {

mpz_class lucas(unsigned long n) {
    mpz_class r;
    mpz_lucnum_ui(r.get_mpz_t(), n);
    return r;
}

mpz_class fib(unsigned long n) {
    mpz_class r;
    mpz_fib_ui(r.get_mpz_t(), n);
    return r;
}

}  // namespace

TEST_CASE("terms of the presets") {
    const auto trib = preset_spec(Preset::Tribonacci);
    CHECK(term(trib, 2) == 1);
    CHECK(term(trib, 10) == 81);
    CHECK(term(preset_spec(Preset::Pow2PlusFib), 5) == 37);
    CHECK(term(trib, 0) == trib.u0);

    std::vector<mpz_class> seq;
    for (const auto& t : term_iter(trib, 7)) seq.push_back(t);
    CHECK(seq == std::vector<mpz_class>{0, 0, 1, 1, 2, 4, 7, 13});
    seq.clear();
    for (const auto& t : term_iter(preset_spec(Preset::Pow2PlusFib), 2)) seq.push_back(t);
    CHECK(seq == std::vector<mpz_class>{1, 3, 5});
    seq.clear();
    for (const auto& t : term_iter(trib, 0)) seq.push_back(t);
    CHECK(seq == std::vector<mpz_class>{0});
}

TEST_CASE("closed forms of the presets up to n = 200") {
    const auto sq = preset_spec(Preset::SquarePow);
    const auto ff = preset_spec(Preset::FiveFibSqMinus4);
    const auto pn = preset_spec(Preset::Pow2PlusN);
    unsigned long n = 0;
    for (const auto& t : term_iter(sq, 200)) {
        const mpz_class p = (mpz_class(1) << n) + 1;
        CHECK(t == p * p);
        ++n;
    }
    n = 0;
    for (const auto& t : term_iter(ff, 200)) {
        if (n % 2) {
            CHECK(t == lucas(n) * lucas(n));
            CHECK(t == 5 * fib(n) * fib(n) - 4);
        }
        ++n;
    }
    n = 0;
    for (const auto& t : term_iter(pn, 200)) {
        CHECK(t == (mpz_class(1) << n) + n);
        ++n;
    }
}

TEST_CASE("random specs obey the recurrence and term_iter matches term") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int trial = 0; trial < 50; ++trial) {
        RecurrenceSpec s{coef(rng), coef(rng), coef(rng), coef(rng), coef(rng), coef(rng)};
        if (s.a3 == 0) s.a3 = 1;
        std::vector<mpz_class> seq;
        for (const auto& t : term_iter(s, 60)) seq.push_back(t);
        for (std::size_t k = 0; k + 3 < seq.size(); ++k)
            CHECK(seq[k + 3] == s.a1 * seq[k + 2] + s.a2 * seq[k + 1] + s.a3 * seq[k]);
        for (unsigned k : {0u, 1u, 2u, 17u, 60u}) CHECK(term(s, k) == seq[k]);
    }
}

TEST_CASE("spec validation and budgets") {
    RecurrenceSpec bad{1, 1, 0, 0, 0, 1};
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
    CHECK_THROWS_AS(term(bad, 5), InvalidInput);
    CHECK_THROWS_AS(term(preset_spec(Preset::Tribonacci), 10'000'000, TermBudget{1000}), BudgetExceeded);
    CHECK_NOTHROW(term(preset_spec(Preset::Tribonacci), 1000, TermBudget{1000}));
}

TEST_CASE("preset names round trip") {
    for (Preset p : kAllPresets) {
        CHECK(parse_preset(preset_name(p)) == p);
        CHECK(identify_preset(preset_spec(p)) == p);
    }
    CHECK_FALSE(parse_preset("lucas"));
    CHECK_FALSE(is_ternary(Preset::Fibonacci));
    // The Fibonacci entry is F_n padded with the root 1.
    unsigned long n = 0;
    for (const auto& t : term_iter(preset_spec(Preset::Fibonacci), 50)) CHECK(t == fib(n++));
}
