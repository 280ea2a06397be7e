// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ternrec/charpoly.hpp"
#include "ternrec/experiments.hpp"
#include "ternrec/numtheory.hpp"
#include "ternrec/representation.hpp"
#include "ternrec/serialize.hpp"
#include "ternrec/sieve.hpp"

using namespace ternrec;

namespace {

// Tolerances and limits.
constexpr double kDeltaTol = 1e-6;
constexpr double kKappaTol = 1e-4;
constexpr double kExponentTol = 2e-6;
constexpr double kLambdaTol = 5e-4;
constexpr double kZLow = 0.45, kZHigh = 0.55;
constexpr double kDensityTol = 1e-9;
constexpr unsigned kBeukersSamples = 1000;
constexpr std::uint64_t kBeukersN = 500;
constexpr std::uint64_t kBeukersSeed = 20240611;

// Upper densities observed on the first full run, pinned as regressions.
constexpr std::array<std::pair<std::uint64_t, double>, 3> kPinnedUpper = {{{1000, 0.43}, {10000, 0.3957}, {100000, 0.35081}}};
constexpr double kUpperCeiling = 0.6;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun cli(const std::string& args) {
    const std::string cmd = std::string(TERNREC_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const RecurrenceSpec kTrib = preset_spec(Preset::Tribonacci);
const RecurrenceSpec kPf = preset_spec(Preset::Pow2PlusFib);

Outcome conditions() {
    struct Expect {
        const char* preset;
        int code;
        std::array<bool, 3> holds;
        std::array<bool, 3> listed_failure;  // failures the diagnosis names; others may fail too
        const char* reason_ii;
    };
    const std::array<Expect, 5> cases = {{
        {"tribonacci", 0, {true, true, true}, {false, false, false}, nullptr},
        {"pow2-plus-fib", 0, {true, true, true}, {false, false, false}, nullptr},
        {"pow2-plus-n", 2, {false, false, false}, {true, false, true}, nullptr},
        {"square-pow", 2, {false, false, true}, {true, false, false}, nullptr},
        {"five-fib-sq-minus-4", 2, {true, false, true}, {false, true, false}, "integer root a = -1"},
    }};
    std::ostringstream detail;
    bool ok = true;
    for (const auto& c : cases) {
        const CliRun r = cli("analyze --preset " + std::string(c.preset));
        bool good = r.code == c.code;
        std::string fails;
        try {
            const Json a = Json::parse(r.out)["analysis"];
            const char* keys[] = {"cond_i", "cond_ii", "cond_iii"};
            for (int i = 0; i < 3; ++i) {
                const bool h = a[keys[i]]["holds"].get<bool>();
                good = good && h == c.holds[i] && !(c.listed_failure[i] && h);
                if (!h) fails += std::string(fails.empty() ? "" : "+") + (i == 0 ? "i" : i == 1 ? "ii" : "iii");
            }
            if (c.reason_ii) good = good && a["cond_ii"]["reason"] == c.reason_ii;
        } catch (const std::exception&) {
            good = false;
        }
        ok = ok && good;
        detail << c.preset << "=" << (fails.empty() ? "ok" : "fails " + fails) << " ";
    }
    return {ok, detail.str()};
}

Outcome constants() {
    const ExponentSolution s = solve_exponents();
    const bool ok = std::abs(s.delta - 0.086071) <= kDeltaTol && std::abs(s.kappa - 0.600541) <= kKappaTol &&
                    std::abs(s.exponent - 0.0516894) <= kExponentTol && std::abs(s.lambda - 0.07452) <= kLambdaTol;
    char buf[160];
    std::snprintf(buf, sizeof buf, "delta=%.7f kappa=%.7f kappa*delta=%.7f lambda=%.6f (reference 0.07452)", s.delta,
                  s.kappa, s.exponent, s.lambda);
    return {ok, buf};
}

Outcome z_densities() {
    bool ok = true;
    std::ostringstream d;
    for (const auto& [name, spec] : {std::pair{"tribonacci", kTrib}, std::pair{"pow2-plus-fib", kPf}}) {
        const ExperimentReport r = z_density(spec, 1'000'000);
        const double ratio = r.observation("ratio");
        ok = ok && ratio >= kZLow && ratio <= kZHigh;
        d << name << "=" << r.observation("z_count") << "/" << r.observation("pi") << " ";
    }
    return {ok, d.str()};
}

Outcome order_divisibility() {
    bool ok = true;
    std::ostringstream d;
    for (const auto& [name, spec] : {std::pair{"tribonacci", kTrib}, std::pair{"pow2-plus-fib", kPf}}) {
        const ExperimentReport r = order_sweep(spec, 101, 99'999);
        ok = ok && r.pass && r.violations.empty();
        d << name << ": " << r.observation("primes_checked") << " primes, " << r.violations.size() << " violations ";
    }
    return {ok, d.str()};
}

Outcome multipliers() {
    bool ok = true;
    std::ostringstream d;
    for (const auto& [name, spec] : {std::pair{"tribonacci", kTrib}, std::pair{"pow2-plus-fib", kPf}}) {
        const ExperimentReport r = multiplier_sweep(spec, 3, 9'999);
        ok = ok && r.pass;
        d << name << ": max=" << r.observation("max_mult_order") << " ";
    }
    const PrimeProfile p7 = classify_prime(kTrib, 7);
    ok = ok && p7.mult_order == 3;
    d << "tribonacci p=7: " << p7.mult_order.value_or(0);
    return {ok, d.str()};
}

Outcome representation_oracle() {
    constexpr std::uint64_t kN = 10'000, kIdx = 50;
    // Least v with N - n v^2 a square, by direct search.
    auto brute = [](std::uint64_t N, std::uint64_t n) -> std::optional<std::pair<std::uint64_t, std::uint64_t>> {
        for (std::uint64_t v = 0; n * v * v <= N; ++v) {
            const std::uint64_t rest = N - n * v * v;
            const std::uint64_t u = isqrt_u64(rest);
            if (u * u == rest) return std::pair{u, v};
        }
        return std::nullopt;
    };
    RepresentOptions corn;
    corn.force_cornacchia = true;
    std::uint64_t mismatches = 0, cases = 0;
    for (std::uint64_t n = 1; n <= kIdx; ++n)
        for (std::uint64_t N = 0; N <= kN; ++N) {
            const auto want = brute(N, n);
            for (const RepresentOptions& opt : {RepresentOptions{}, corn}) {
                ++cases;
                const Represented got = represent(mpz_class(static_cast<unsigned long>(N)), n, opt);
                const bool agree = want ? got.kind == Represented::Kind::Member && got.u == want->first &&
                                              got.v == want->second
                                        : got.kind == Represented::Kind::NonMember;
                if (!agree) ++mismatches;
            }
        }
    std::uint64_t fib_found = 0, fib_total = 0;
    bool f13 = false;
    for (const u64 p : primes_up_to(101)) {
        if (p % 4 != 1) continue;
        ++fib_total;
        mpz_class F;
        mpz_fib_ui(F.get_mpz_t(), p);
        const Represented r = represent(F, p);
        if (r.kind == Represented::Kind::Member && r.u * r.u + p * r.v * r.v == F) ++fib_found;
        if (p == 13) f13 = F == 233 && r.u == 5 && r.v == 4;
    }
    std::ostringstream d;
    d << cases << " cases, " << mismatches << " mismatches; F_p found for " << fib_found << "/" << fib_total
      << " primes; F_13 = 233 = 5^2 + 13*4^2 " << (f13 ? "yes" : "no");
    return {mismatches == 0 && fib_found == fib_total && f13, d.str()};
}

Outcome obstruction_soundness() {
    std::uint64_t flagged = 0, confirmed = 0;
    bool seven = false;
    for (std::uint64_t n = 1; n <= 60; ++n) {
        const MembershipRecord r = membership(kTrib, n, 0);
        if (r.status() != MemberStatus::Obstructed) continue;
        ++flagged;
        if (n == 7) seven = r.obstruction_prime() == 7u;
        const mpz_class U = term(kTrib, n);
        RepresentOptions opt;
        opt.enumeration_limit = std::uint64_t(1) << 40;  // force the exhaustive tier
        if (represent(U, n, opt).kind == Represented::Kind::NonMember) ++confirmed;
    }
    std::ostringstream d;
    d << flagged << " flagged, " << confirmed << " confirmed by exhaustive search; n=7 via p=7 " << (seven ? "yes" : "no");
    return {flagged > 0 && flagged == confirmed && seven, d.str()};
}

Outcome counterexamples() {
    bool ok = true;
    std::ostringstream d;
    const std::array<std::pair<Preset, const char*>, 3> cases = {
        {{Preset::SquarePow, "member_density"}, {Preset::Pow2PlusN, "target_member_density"},
         {Preset::FiveFibSqMinus4, "target_member_density"}}};
    for (const auto& [preset, key] : cases) {
        const ExperimentReport r = counterexample_density(preset, 1000);
        const double v = r.observation(key);
        ok = ok && r.pass && std::abs(v - 1.0) <= kDensityTol;
        d << preset_name(preset) << "=" << v << " ";
    }
    return {ok, d.str()};
}

Outcome density_shape_check() {
    std::vector<std::uint64_t> cutoffs;
    for (const auto& [x, _] : kPinnedUpper) cutoffs.push_back(x);
    const ExperimentReport r = density_shape(kTrib, cutoffs, 120);
    bool ok = r.pass;
    std::ostringstream d;
    for (const auto& [x, pinned] : kPinnedUpper) {
        const double v = r.observation("upper_density_" + std::to_string(x));
        ok = ok && std::abs(v - pinned) <= kDensityTol;
        d << "x=" << x << ": " << v << " ";
    }
    ok = ok && r.observation("upper_density_100000") < kUpperCeiling;
    return {ok, d.str()};
}

Outcome beukers() {
    std::mt19937_64 rng(kBeukersSeed);
    std::uniform_int_distribution<std::int64_t> coef(-5, 5);
    unsigned accepted = 0, worst = 0, skipped = 0;
    while (accepted < kBeukersSamples) {
        const RecurrenceSpec s{coef(rng), coef(rng), coef(rng), coef(rng), coef(rng), coef(rng)};
        if (s.a3 == 0 || (s.u0 == 0 && s.u1 == 0 && s.u2 == 0) || is_degenerate(s).degenerate) {
            ++skipped;
            continue;
        }
        ++accepted;
        worst = std::max(worst, static_cast<unsigned>(beukers_zero_count(s, kBeukersN).observation("zero_count")));
    }
    std::ostringstream d;
    d << accepted << " specs (" << skipped << " skipped), max zeros " << worst;
    return {worst <= 6, d.str()};
}

Outcome brute_counts() {
    const auto a = smooth_count(10, 2.0), b = smooth_count(100, 5.0);
    const auto h = divisor_interval_count(20, 2.0, 4.0), p = shifted_prime_count(50, 2.0, 4.0, -1);
    std::ostringstream d;
    d << "Psi(10,2)=" << a << " Psi(100,5)=" << b << " H(20,2,4)=" << h << " P(50,2,4,-1)=" << p;
    return {a == 4 && b == 34 && h == 6 && p == 6, d.str()};
}

Outcome determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path();
    const fs::path one = dir / "ternrec_accept_t1.csv", eight = dir / "ternrec_accept_t8.csv";
    const int c1 = cli("count --preset tribonacci --x 10000 --threads 1 -o " + one.string()).code;
    const int c8 = cli("count --preset tribonacci --x 10000 --threads 8 -o " + eight.string()).code;
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    };
    const std::string a = slurp(one), b = slurp(eight);
    fs::remove(one);
    fs::remove(eight);
    std::ostringstream d;
    d << a.size() << " bytes vs " << b.size() << " bytes";
    return {c1 == 0 && c8 == 0 && !a.empty() && a == b, d.str()};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "condition classification", 1, conditions},
        {2, "exponent constants", 0.1, constants},
        {3, "density of Z up to 1e6", 120, z_densities},
        {4, "order divisibility sweep 100 < p < 1e5", 300, order_divisibility},
        {5, "multiplier bound p < 1e4", 60, multipliers},
        {6, "representation oracle", 120, representation_oracle},
        {7, "obstruction soundness n <= 60", 10, obstruction_soundness},
        {8, "counterexample densities n <= 1e3", 30, counterexamples},
        {9, "upper density shape", 600, density_shape_check},
        {10, "zero counts of random recurrences", 120, beukers},
        {11, "brute counts", 1, brute_counts},
        {12, "thread-count determinism", 60, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.limit_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::printf("%s [criterion %d] %s: %s (%.3f s, limit %g s%s)\n", pass ? "PASS" : "FAIL", c.id, c.title,
                    o.detail.c_str(), secs, c.limit_s, in_time ? "" : ", exceeded");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
