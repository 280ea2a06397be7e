#include "ternrec/experiments.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "ternrec/charpoly.hpp"
#include "ternrec/errors.hpp"
#include "ternrec/numtheory.hpp"
#include "ternrec/parallel.hpp"
#include "ternrec/representation.hpp"
#include "ternrec/sieve.hpp"

namespace ternrec {

double ExperimentReport::observation(const std::string& label) const {
    for (const auto& [k, v] : observations)
        if (k == label) return v;
    throw std::out_of_range("no observation named " + label);
}

namespace {

std::string str(std::uint64_t v) { return std::to_string(v); }

std::string str(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

std::string spec_string(const RecurrenceSpec& s) {
    if (const auto preset = identify_preset(s)) return std::string(preset_name(*preset));
    std::ostringstream os;
    os << "(" << s.a1 << "," << s.a2 << "," << s.a3 << ";" << s.u0 << "," << s.u1 << "," << s.u2 << ")";
    return os.str();
}

// Profiles of all primes in Z within [lo, hi], in increasing p.
std::vector<PrimeProfile> z_profiles(const RecurrenceSpec& spec, std::uint64_t lo, std::uint64_t hi,
                                     const SweepOptions& options) {
    std::vector<u64> primes;
    for_each_z_prime(spec, lo, hi, [&](u64 p) { primes.push_back(p); });
    std::vector<std::optional<PrimeProfile>> slots(primes.size());
    parallel_for(0, primes.size(), options.threads,
                 [&](std::uint64_t i) { slots[i] = classify_prime(spec, primes[i], options.budget); }, 16);
    std::vector<PrimeProfile> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

bool divides(u64 d, u64 n) { return d != 0 && n % d == 0; }
bool divides(u128 d, u128 n) { return d != 0 && n % d == 0; }

}  // namespace

ExperimentReport z_density(const RecurrenceSpec& spec, std::uint64_t x, double tolerance) {
    spec.validate();
    ExperimentReport r;
    r.name = "z-density";
    r.parameters = {{"spec", spec_string(spec)}, {"x", str(x)}, {"tolerance", str(tolerance)}};
    std::uint64_t z = 0;
    for_each_z_prime(spec, 3, x, [&](u64) { ++z; });
    const std::uint64_t pi = prime_count(x);
    const double ratio = pi ? static_cast<double>(z) / static_cast<double>(pi) : 0.0;
    r.observations = {{"z_count", static_cast<double>(z)}, {"pi", static_cast<double>(pi)}, {"ratio", ratio}};
    if (std::abs(ratio - 0.5) > tolerance)
        r.violations.push_back({"ratio_within_tolerance", {{"ratio", str(ratio)}}});
    r.pass = r.violations.empty();
    return r;
}

ExperimentReport order_sweep(const RecurrenceSpec& spec, std::uint64_t p_min, std::uint64_t p_max,
                              const SweepOptions& options) {
    spec.validate();
    ExperimentReport r;
    r.name = "orders";
    r.parameters = {{"spec", spec_string(spec)}, {"p_min", str(p_min)}, {"p_max", str(p_max)}};
    std::uint64_t checked = 0, equal_periods = 0;
    for (const auto& prof : z_profiles(spec, p_min, p_max, options)) {
        const u64 p = prof.p, oa = *prof.ord_alpha, orr = *prof.ord_ratio, t = prof.t_p, k = *prof.k_p;
        ++checked;
        auto fail = [&](const char* check) {
            r.violations.push_back({check,
                                    {{"p", str(p)},
                                     {"ord_alpha", str(oa)},
                                     {"ord_ratio", str(orr)},
                                     {"t_p", str(t)},
                                     {"k_p", str(k)}}});
        };
        if (!divides(oa, p - 1)) fail("ord_alpha | p-1");
        if (!divides(orr, p + 1)) fail("ord_ratio | p+1");
        if (!divides(t, k)) fail("t_p | k_p");
        if (t == k) {
            ++equal_periods;
            const u128 prod = static_cast<u128>(oa) * orr;
            if (!divides(prod, u128{2} * t)) fail("oa*or | 2t_p");
            if (!divides(u128{2} * t, 8 * prod)) fail("2t_p | 8*oa*or");
            if (!divides(8 * prod, u128{8} * (p - 1) * (p + 1))) fail("8*oa*or | 8(p-1)(p+1)");
        }
    }
    r.observations = {{"primes_checked", static_cast<double>(checked)},
                      {"t_equals_k", static_cast<double>(equal_periods)},
                      {"violations", static_cast<double>(r.violations.size())}};
    r.pass = r.violations.empty();
    return r;
}

ExperimentReport multiplier_sweep(const RecurrenceSpec& spec, std::uint64_t p_min, std::uint64_t p_max,
                                  const SweepOptions& options) {
    spec.validate();
    ExperimentReport r;
    r.name = "multipliers";
    r.parameters = {{"spec", spec_string(spec)}, {"p_min", str(p_min)}, {"p_max", str(p_max)}};
    const bool unit_a3 = spec.a3 == 1 || spec.a3 == -1;
    bool unit_c = false;
    const CubicFactorization f = factorize(spec);
    if (const auto* lq = std::get_if<LinearTimesQuadratic>(&f)) unit_c = lq->c == 1 || lq->c == -1;

    std::map<u64, std::uint64_t> histogram;
    std::uint64_t checked = 0;
    u64 max_mult = 0;
    for (const auto& prof : z_profiles(spec, p_min, p_max, options)) {
        const u64 m = *prof.mult_order;
        ++checked;
        ++histogram[m];
        max_mult = std::max(max_mult, m);
        auto fail = [&](const char* check) {
            r.violations.push_back({check, {{"p", str(prof.p)}, {"mult_order", str(m)}, {"k_p", str(*prof.k_p)}}});
        };
        if (m > 6) fail("mult_order <= 6");
        if (!divides(m, *prof.k_p)) fail("mult_order | k_p");
        if (unit_a3 && !divides(m, u64{6})) fail("mult_order | 6");
        if (unit_c && !divides(m, u64{4})) fail("mult_order | 4");
    }
    r.observations = {{"primes_checked", static_cast<double>(checked)}, {"max_mult_order", static_cast<double>(max_mult)}};
    for (const auto& [m, count] : histogram)
        r.observations.emplace_back("mult_order_" + str(m), static_cast<double>(count));
    r.pass = r.violations.empty();
    return r;
}

ExperimentReport beukers_zero_count(const RecurrenceSpec& spec, std::uint64_t n_max) {
    spec.validate();
    if (spec.all_initial_zero()) throw InvalidInput("the zero sequence has every term zero");
    if (const DegeneracyResult d = is_degenerate(spec); d.degenerate)
        throw InvalidInput("degenerate recurrence: " + d.witness);
    ExperimentReport r;
    r.name = "beukers";
    r.parameters = {{"spec", spec_string(spec)}, {"n_max", str(n_max)}};
    std::uint64_t zeros = 0, n = 0;
    for (const mpz_class& u : term_iter(spec, n_max)) {
        if (u == 0) {
            ++zeros;
            r.observations.emplace_back("zero_at", static_cast<double>(n));
        }
        ++n;
    }
    r.observations.insert(r.observations.begin(), {"zero_count", static_cast<double>(zeros)});
    if (zeros > 6) r.violations.push_back({"zero_count <= 6", {{"zero_count", str(zeros)}}});
    r.pass = r.violations.empty();
    return r;
}

ExperimentReport char_sum_sweep(const RecurrenceSpec& spec, std::uint64_t p_max, const SweepOptions& options) {
    spec.validate();
    ExperimentReport r;
    r.name = "char-sums";
    r.parameters = {{"spec", spec_string(spec)}, {"p_max", str(p_max)}, {"d_values", "1,2,3"}};
    struct Cell {
        long long sum;
        u64 period;
    };
    std::vector<u64> primes = z_primes(spec, p_max);
    std::vector<std::optional<std::array<Cell, 6>>> cells(primes.size());
    parallel_for(0, primes.size(), options.threads, [&](std::uint64_t i) {
        std::array<Cell, 6> out{};
        std::size_t k = 0;
        try {
            for (u64 d = 1; d <= 3; ++d)
                for (u64 c = 0; c < d; ++c) {
                    const CharSum s = char_sum(spec, primes[i], c, d, options.budget);
                    out[k++] = {s.sum, s.period};
                }
        } catch (const BudgetExceeded&) {
            return;
        }
        cells[i] = out;
    });
    double worst = 0;
    u64 worst_p = 0, skipped = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (!cells[i]) {
            ++skipped;
            continue;
        }
        for (const Cell& c : *cells[i]) {
            const double ratio = std::abs(static_cast<double>(c.sum)) / static_cast<double>(primes[i]);
            if (ratio > worst) {
                worst = ratio;
                worst_p = primes[i];
            }
        }
    }
    r.observations = {{"primes_checked", static_cast<double>(primes.size() - skipped)},
                      {"primes_skipped", static_cast<double>(skipped)},
                      {"max_abs_sum_over_p", worst},
                      {"worst_p", static_cast<double>(worst_p)}};
    if (worst > 6) r.violations.push_back({"max |S|/p <= 6", {{"p", str(worst_p)}, {"ratio", str(worst)}}});
    r.pass = r.violations.empty();
    return r;
}

unsigned omega_IZ(const RecurrenceSpec& spec, std::uint64_t n, double z3, double y2) {
    if (!(z3 < y2)) throw InvalidInput("omega_IZ needs z3 < y2");
    if (n == 0) throw InvalidInput("omega_IZ needs n >= 1");
    unsigned count = 0;
    for (const auto& [p, e] : factor_u64(n)) {
        const auto pd = static_cast<double>(p);
        if (pd > z3 && pd < y2 && in_Z(spec, p)) ++count;
    }
    return count;
}

ExperimentReport counterexample_density(Preset preset, std::uint64_t x, unsigned threads) {
    if (preset != Preset::Pow2PlusN && preset != Preset::SquarePow && preset != Preset::FiveFibSqMinus4)
        throw InvalidInput("counterexample_density applies to pow2-plus-n, square-pow and five-fib-sq-minus-4");
    const RecurrenceSpec spec = preset_spec(preset);
    ExperimentReport r;
    r.name = "counterexample-density";
    r.parameters = {{"preset", std::string(preset_name(preset))}, {"x", str(x)}, {"n_exact", "0"}};
    auto targeted = [&](std::uint64_t n) {
        switch (preset) {
            case Preset::Pow2PlusN: return n % 2 == 0;
            case Preset::FiveFibSqMinus4: return n % 2 == 1;
            default: return true;
        }
    };
    std::vector<std::optional<MembershipRecord>> slots(x);
    parallel_for(1, x + 1, threads, [&](std::uint64_t n) { slots[n - 1] = membership(spec, n, 0); }, 16);
    std::uint64_t members = 0, targets = 0, target_members = 0;
    for (const auto& rec : slots) {
        const bool member = rec->status() == MemberStatus::Member;
        members += member;
        if (targeted(rec->n())) {
            ++targets;
            if (member && rec->method() == Method::WitnessFormula) {
                ++target_members;
            } else {
                r.violations.push_back({"witness verified", {{"n", str(rec->n())}, {"status", to_string(rec->status())}}});
            }
        }
    }
    r.observations = {{"member_density", static_cast<double>(members) / static_cast<double>(x)},
                      {"target_count", static_cast<double>(targets)},
                      {"target_member_density",
                       targets ? static_cast<double>(target_members) / static_cast<double>(targets) : 0.0}};
    r.pass = r.violations.empty();
    return r;
}

ExperimentReport density_shape(const RecurrenceSpec& spec, const std::vector<std::uint64_t>& cutoffs,
                               std::uint64_t n_exact, unsigned threads) {
    spec.validate();
    if (cutoffs.empty()) throw InvalidInput("density_shape needs at least one cutoff");
    ExperimentReport r;
    r.name = "density-shape";
    std::string list;
    for (auto x : cutoffs) list += (list.empty() ? "" : ",") + str(x);
    r.parameters = {{"spec", spec_string(spec)}, {"cutoffs", list}, {"n_exact", str(n_exact)}};
    // One pass up to the largest cutoff; prefix counts give the smaller ones.
    std::uint64_t top = 0;
    for (auto x : cutoffs) top = std::max(top, x);
    const CountReport report = count_range(spec, top, n_exact, threads);
    double previous = 2.0;
    for (auto x : cutoffs) {
        std::uint64_t certified = 0, members = 0;
        for (std::uint64_t i = 0; i < x; ++i) {
            certified += report.records[i].certified_non_member();
            members += report.records[i].status() == MemberStatus::Member;
        }
        const double upper = static_cast<double>(x - certified) / static_cast<double>(x);
        r.observations.emplace_back("upper_density_" + str(x), upper);
        r.observations.emplace_back("lower_density_" + str(x), static_cast<double>(members) / static_cast<double>(x));
        if (!(upper < previous))
            r.violations.push_back({"strictly decreasing", {{"x", str(x)}, {"upper_density", str(upper)}}});
        previous = upper;
    }
    r.pass = r.violations.empty();
    return r;
}

ExperimentReport mid_divisor_census(std::uint64_t p_max, double c) {
    ExperimentReport r;
    r.name = "mid-divisor";
    r.parameters = {{"p_max", str(p_max)}, {"c", str(c)}};
    std::uint64_t total = 0, minus = 0, plus = 0;
    for_each_prime(3, p_max, [&](u64 p) {
        ++total;
        minus += has_mid_divisor(p, -1, c);
        plus += has_mid_divisor(p, +1, c);
    });
    const double t = total ? static_cast<double>(total) : 1.0;
    r.observations = {{"primes", static_cast<double>(total)},
                      {"share_p_minus_1", static_cast<double>(minus) / t},
                      {"share_p_plus_1", static_cast<double>(plus) / t}};
    r.pass = true;
    return r;
}

}  // namespace ternrec
