#pragma once

// Factorization of big integers: trial division, then Pollard rho (Brent variant).

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace ternrec {

/// Work cap for Pollard rho, counted in modular multiplications so that results
/// do not depend on machine speed. The default is roughly ten seconds of work.
struct FactorBudget {
    std::uint64_t max_iterations = 50'000'000;

    /// Converts a wall-clock allowance to the equivalent iteration cap.
    static FactorBudget from_seconds(double seconds);
};

using BigFactorization = std::vector<std::pair<mpz_class, unsigned>>;

/// Miller-Rabin: exact below 2^64, otherwise 64 rounds with bases from a fixed-seed generator.
bool probable_prime(const mpz_class& n);

/// Prime factorization of n >= 1, primes ascending. Throws BudgetExceeded when rho
/// runs out of iterations.
BigFactorization factor_big(const mpz_class& n, const FactorBudget& budget = {});

}  // namespace ternrec
