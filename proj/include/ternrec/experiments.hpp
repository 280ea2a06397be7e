#pragma once

// Desk-scale experiments. Each returns a report with its parameters, numeric
// observations and any violated checks.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ternrec/modular.hpp"
#include "ternrec/recurrence.hpp"

namespace ternrec {

struct Violation {
    std::string check;
    std::map<std::string, std::string> fields;
};

struct ExperimentReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<std::pair<std::string, double>> observations;
    std::vector<Violation> violations;
    bool pass = false;

    /// Value of a named observation; throws std::out_of_range when absent.
    double observation(const std::string& label) const;
};

struct SweepOptions {
    unsigned threads = 1;
    ScanBudget budget{};
};

/// #Z(x)/pi(x); passes when it is within `tolerance` of 1/2.
ExperimentReport z_density(const RecurrenceSpec& spec, std::uint64_t x, double tolerance = 0.05);

/// ord(alpha) | p-1, ord(beta/gamma) | p+1, t_p | k_p and, when t_p = k_p,
/// oa*or | 2t_p | 8*oa*or | 8(p-1)(p+1), for p in Z with p_min <= p <= p_max.
ExperimentReport order_sweep(const RecurrenceSpec& spec, std::uint64_t p_min, std::uint64_t p_max,
                              const SweepOptions& options = {});

/// mult_order <= 6 and mult_order | k_p; also mult_order | 6 when a3 = +-1 and
/// mult_order | 4 when Psi = (X - a)(X^2 + bX + c) with c = +-1.
ExperimentReport multiplier_sweep(const RecurrenceSpec& spec, std::uint64_t p_min, std::uint64_t p_max,
                                  const SweepOptions& options = {});

/// Number of n <= n_max with U_n = 0; passes when at most 6.
/// Throws InvalidInput for the zero sequence or a degenerate recurrence.
ExperimentReport beukers_zero_count(const RecurrenceSpec& spec, std::uint64_t n_max);

/// max |S|/p over p in Z, p <= p_max, d in {1,2,3}, c < d; passes when at most 6.
/// Primes whose state period exceeds the scan budget are skipped and counted.
ExperimentReport char_sum_sweep(const RecurrenceSpec& spec, std::uint64_t p_max, const SweepOptions& options = {});

/// Distinct primes p | n with z3 < p < y2 and p in Z.
unsigned omega_IZ(const RecurrenceSpec& spec, std::uint64_t n, double z3, double y2);

/// Checks the closed-form representations of a counterexample preset for every n <= x.
ExperimentReport counterexample_density(Preset preset, std::uint64_t x, unsigned threads = 1);

/// Certified upper density (x - certified non-members)/x at each cutoff; passes when strictly decreasing.
ExperimentReport density_shape(const RecurrenceSpec& spec, const std::vector<std::uint64_t>& cutoffs,
                               std::uint64_t n_exact, unsigned threads = 1);

/// Share of primes p <= p_max for which p - 1 (resp. p + 1) has a divisor in
/// (p^{1/2}/log p, p^{1/2} exp(c (log log p)^2)).
ExperimentReport mid_divisor_census(std::uint64_t p_max, double c);

}  // namespace ternrec
