#include "ternrec/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "ternrec/charpoly.hpp"
#include "ternrec/errors.hpp"

namespace ternrec {

void RecurrenceSpec::validate() const {
    if (a3 == 0) throw InvalidInput("recurrence coefficient a3 must be nonzero");
}

namespace {

struct PresetEntry {
    Preset id;
    std::string_view name;
    RecurrenceSpec spec;
};

constexpr std::array<PresetEntry, 6> kPresets = {{
    {Preset::Tribonacci, "tribonacci", {1, 1, 1, 0, 0, 1}},
    {Preset::Pow2PlusFib, "pow2-plus-fib", {3, -1, -2, 1, 3, 5}},          // (X-2)(X^2-X-1)
    {Preset::Pow2PlusN, "pow2-plus-n", {4, -5, 2, 1, 3, 6}},               // (X-2)(X-1)^2
    {Preset::SquarePow, "square-pow", {7, -14, 8, 4, 9, 25}},              // (X-4)(X-2)(X-1)
    {Preset::FiveFibSqMinus4, "five-fib-sq-minus-4", {2, 2, -1, 4, 1, 9}},  // (X+1)(X^2-3X+1), U_n = L_n^2
    {Preset::Fibonacci, "fibonacci", {2, 0, -1, 0, 1, 1}},                  // (X-1)(X^2-X-1)
}};

const PresetEntry& entry(Preset preset) {
    for (const auto& e : kPresets)
        if (e.id == preset) return e;
    throw std::logic_error("unknown preset");
}

mpz_class fib(unsigned long n) {
    mpz_class r;
    mpz_fib_ui(r.get_mpz_t(), n);
    return r;
}

mpz_class closed_form(Preset preset, unsigned long n) {
    mpz_class two_n = mpz_class(1) << n;
    switch (preset) {
        case Preset::Tribonacci: {
            mpz_class a = 0, b = 0, c = 1;
            for (unsigned long i = 0; i < n; ++i) {
                mpz_class d = a + b + c;
                a = b;
                b = c;
                c = d;
            }
            return a;
        }
        case Preset::Pow2PlusFib: return two_n + fib(n);
        case Preset::Pow2PlusN: return two_n + n;
        case Preset::SquarePow: return (two_n + 1) * (two_n + 1);
        case Preset::FiveFibSqMinus4: {
            mpz_class l;
            mpz_lucnum_ui(l.get_mpz_t(), n);
            return l * l;
        }
        case Preset::Fibonacci: return fib(n);
    }
    throw std::logic_error("unknown preset");
}

std::once_flag g_presets_checked;

}  // namespace

void validate_presets() {
    for (const auto& e : kPresets) {
        unsigned long n = 0;
        for (const mpz_class& value : TermRange(e.spec, 19, TermBudget{})) {
            if (value != closed_form(e.id, n))
                throw std::logic_error("preset " + std::string(e.name) +
                                       " disagrees with its closed form at n=" + std::to_string(n));
            // The sequence is named for 5F_n^2 - 4, which it matches at odd n.
            if (e.id == Preset::FiveFibSqMinus4 && n % 2 == 1 && value != 5 * fib(n) * fib(n) - 4)
                throw std::logic_error("five-fib-sq-minus-4 differs from 5F_n^2 - 4 at odd n=" + std::to_string(n));
            ++n;
        }
    }
}

RecurrenceSpec preset_spec(Preset preset) {
    std::call_once(g_presets_checked, validate_presets);
    return entry(preset).spec;
}

std::string_view preset_name(Preset preset) { return entry(preset).name; }

std::optional<Preset> parse_preset(std::string_view name) {
    for (const auto& e : kPresets)
        if (e.name == name) return e.id;
    return std::nullopt;
}

std::optional<Preset> identify_preset(const RecurrenceSpec& spec) {
    for (const auto& e : kPresets)
        if (e.spec == spec) return e.id;
    return std::nullopt;
}

double estimated_digits(const RecurrenceSpec& spec, std::uint64_t n) {
    const double gamma = std::max(1.0, dominant_root_modulus(spec));
    const double init = static_cast<double>(
        std::max({std::llabs(spec.u0), std::llabs(spec.u1), std::llabs(spec.u2), 1LL}));
    return static_cast<double>(n) * std::log10(gamma) + std::log10(init) + 1.0;
}

namespace {

// Hard cap applied while iterating, in case the estimate is off for tiny n.
std::uint64_t bit_cap(const TermBudget& budget) {
    return static_cast<std::uint64_t>(static_cast<double>(budget.max_digits) * 3.3219280948873623) + 64;
}

void check_estimate(const RecurrenceSpec& spec, std::uint64_t n, const TermBudget& budget) {
    // Digit estimate only matters when it could approach the budget.
    if (n > 64 && estimated_digits(spec, n) > static_cast<double>(budget.max_digits))
        throw BudgetExceeded("U_" + std::to_string(n) + " exceeds the term budget of " +
                             std::to_string(budget.max_digits) + " digits");
}

}  // namespace

mpz_class term(const RecurrenceSpec& spec, std::uint64_t n, const TermBudget& budget) {
    spec.validate();
    if (n == 0) return spec.u0;
    if (n == 1) return spec.u1;
    if (n == 2) return spec.u2;
    check_estimate(spec, n, budget);
    const std::uint64_t cap = bit_cap(budget);
    mpz_class a = spec.u0, b = spec.u1, c = spec.u2, next;
    for (std::uint64_t i = 3; i <= n; ++i) {
        next = spec.a1 * c + spec.a2 * b + spec.a3 * a;
        a.swap(b);
        b.swap(c);
        c.swap(next);
        if (mpz_sizeinbase(c.get_mpz_t(), 2) > cap)
            throw BudgetExceeded("term budget exhausted at n=" + std::to_string(i));
    }
    return c;
}

TermRange::iterator::iterator(const RecurrenceSpec& spec, std::uint64_t index, std::uint64_t max_bits)
    : spec_(spec), index_(index), max_bits_(max_bits), window_{spec.u0, spec.u1, spec.u2} {}

TermRange::iterator& TermRange::iterator::operator++() {
    mpz_class next = spec_.a1 * window_[2] + spec_.a2 * window_[1] + spec_.a3 * window_[0];
    window_[0].swap(window_[1]);
    window_[1].swap(window_[2]);
    window_[2].swap(next);
    ++index_;
    if (mpz_sizeinbase(window_[0].get_mpz_t(), 2) > max_bits_)
        throw BudgetExceeded("term budget exhausted at n=" + std::to_string(index_));
    return *this;
}

TermRange::TermRange(RecurrenceSpec spec, std::uint64_t n_max, TermBudget budget)
    : spec_(spec), n_max_(n_max), budget_(budget) {
    spec_.validate();
    check_estimate(spec_, n_max_, budget_);
}

TermRange::iterator TermRange::begin() const { return iterator(spec_, 0, bit_cap(budget_)); }

TermRange::iterator TermRange::end() const {
    iterator it;
    it.index_ = n_max_ + 1;
    return it;
}

TermRange term_iter(const RecurrenceSpec& spec, std::uint64_t n_max, const TermBudget& budget) {
    return TermRange(spec, n_max, budget);
}

}  // namespace ternrec
