#pragma once

// Ternary recurrences U_{n+3} = a1*U_{n+2} + a2*U_{n+1} + a3*U_n and their exact terms.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ternrec {

struct RecurrenceSpec {
    std::int64_t a1 = 0, a2 = 0, a3 = 1;
    std::int64_t u0 = 0, u1 = 0, u2 = 0;

    bool operator==(const RecurrenceSpec&) const = default;

    std::array<std::int64_t, 3> coefficients() const { return {a1, a2, a3}; }
    std::array<std::int64_t, 3> initial() const { return {u0, u1, u2}; }
    bool all_initial_zero() const { return u0 == 0 && u1 == 0 && u2 == 0; }

    /// Throws InvalidInput when a3 == 0.
    void validate() const;
};

enum class Preset { Tribonacci, Pow2PlusFib, Pow2PlusN, SquarePow, FiveFibSqMinus4, Fibonacci };

inline constexpr std::array<Preset, 6> kAllPresets = {
    Preset::Tribonacci, Preset::Pow2PlusFib,     Preset::Pow2PlusN,
    Preset::SquarePow,  Preset::FiveFibSqMinus4, Preset::Fibonacci};

/// Fibonacci is stored as (2,0,-1; 0,1,1), i.e. X^2-X-1 padded with the factor X-1.
/// It is only meant for representation checks and is not a genuine ternary sequence.
RecurrenceSpec preset_spec(Preset preset);
std::string_view preset_name(Preset preset);
std::optional<Preset> parse_preset(std::string_view name);
/// The preset whose tuple equals `spec`, if any.
std::optional<Preset> identify_preset(const RecurrenceSpec& spec);
inline bool is_ternary(Preset preset) { return preset != Preset::Fibonacci; }

/// Checks every preset against 20 terms of its closed form; throws std::logic_error on mismatch.
/// Runs once automatically on first call to preset_spec.
void validate_presets();

struct TermBudget {
    std::uint64_t max_digits = 1'000'000;
};

/// Exact U_n. Throws BudgetExceeded when U_n would exceed the digit budget.
mpz_class term(const RecurrenceSpec& spec, std::uint64_t n, const TermBudget& budget = {});

/// Estimated decimal digits of U_n (n*log10(Gamma) plus the size of the initial terms).
double estimated_digits(const RecurrenceSpec& spec, std::uint64_t n);

/// Input range over U_0..U_{n_max} holding only three big integers of state.
class TermRange {
public:
    class iterator {
    public:
        using value_type = mpz_class;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        const mpz_class& operator*() const { return window_[0]; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        bool operator==(const iterator& other) const { return index_ == other.index_; }

    private:
        friend class TermRange;
        iterator(const RecurrenceSpec& spec, std::uint64_t index, std::uint64_t max_bits);
        RecurrenceSpec spec_{};
        std::uint64_t index_ = 0;
        std::uint64_t max_bits_ = 0;
        std::array<mpz_class, 3> window_;
    };

    TermRange(RecurrenceSpec spec, std::uint64_t n_max, TermBudget budget);
    iterator begin() const;
    iterator end() const;

private:
    RecurrenceSpec spec_;
    std::uint64_t n_max_;
    TermBudget budget_;
};

/// Streams U_0..U_{n_max}; same budget rule as term().
TermRange term_iter(const RecurrenceSpec& spec, std::uint64_t n_max, const TermBudget& budget = {});

}  // namespace ternrec
