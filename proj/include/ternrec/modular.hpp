#pragma once

// Arithmetic of a ternary recurrence modulo a prime p: fast terms, root counts of the
// characteristic polynomial, periods, orders of the roots, multipliers, the V-sequence
// V_m = U_{pm} mod p, Legendre character sums and the threshold sets built on them.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ternrec/numtheory.hpp"
#include "ternrec/recurrence.hpp"

namespace ternrec {

using State = std::array<u64, 3>;  // (U_n, U_{n+1}, U_{n+2}) mod p

struct Mat3 {
    std::array<std::array<u64, 3>, 3> m{};
    bool operator==(const Mat3&) const = default;
};

Mat3 companion_matrix(const RecurrenceSpec& spec, u64 p);
Mat3 mat_mul(const Mat3& x, const Mat3& y, u64 p);
Mat3 mat_pow(Mat3 x, u64 e, u64 p);
State apply(const Mat3& x, const State& s, u64 p);

State initial_state(const RecurrenceSpec& spec, u64 p);
/// (U_n, U_{n+1}, U_{n+2}) mod p by companion-matrix powering.
State state_mod(const RecurrenceSpec& spec, u64 n, u64 p);
/// U_n mod p in O(log n) matrix products.
u64 term_mod(const RecurrenceSpec& spec, u64 n, u64 p);

struct ScanBudget {
    /// Cap on states visited by any direct cycle scan.
    u64 max_states = 100'000'000;
    /// Periods of primes up to this bound are found by walking the orbit; larger
    /// primes use order reduction of a known multiple of the period.
    u64 direct_period_limit = 1000;
};

enum class RootCount { Zero, One, Three, Ramified };
std::string to_string(RootCount rc);

/// Ramified iff p | disc; otherwise the number of distinct roots in F_p
/// (scan for p < 1000, deg gcd(X^p - X, Psi) above).
RootCount count_roots_mod_p(const RecurrenceSpec& spec, u64 p);

/// All roots of Psi in F_p, ascending (distinct).
std::vector<u64> roots_mod_p(const RecurrenceSpec& spec, u64 p);

/// Z-membership: p odd, p does not divide a3 or the discriminant, exactly one root mod p.
bool in_Z(const RecurrenceSpec& spec, u64 p);

/// Least t with U_{n+t} = U_n (mod p) for all large n (eventual period when p | a3).
u64 period_mod_p(const RecurrenceSpec& spec, u64 p, const ScanBudget& budget = {});
/// The orbit walk alone, for cross-checking the order-reduction route.
u64 period_by_scan(const RecurrenceSpec& spec, u64 p, const ScanBudget& budget = {});

struct PrimeProfile {
    u64 p = 0;
    RootCount root_count = RootCount::Zero;
    bool in_Z = false;
    u64 t_p = 0;
    // Present only for p in Z.
    std::optional<u64> alpha;
    std::optional<u64> k_p;
    std::optional<u64> ord_alpha;
    std::optional<u64> ord_ratio;
    std::optional<u64> mult_order;
    /// Least n with alpha^n = beta^n = gamma^n; mult_order = k_p / n0.
    std::optional<u64> n0;
};

/// Full profile for p in Z; reduced profile (root_count, t_p) for other primes.
/// Throws InvalidInput for p = 2 or p | a3.
PrimeProfile classify_prime(const RecurrenceSpec& spec, u64 p, const ScanBudget& budget = {});

/// Reduced or full profile for any prime, never throwing on p = 2 or p | a3.
PrimeProfile profile_any_prime(const RecurrenceSpec& spec, u64 p, const ScanBudget& budget = {});

/// Primes p <= x in Z, ascending.
std::vector<u64> z_primes(const RecurrenceSpec& spec, u64 x);
void for_each_z_prime(const RecurrenceSpec& spec, u64 lo, u64 hi, const std::function<void(u64)>& fn);

/// V_m = U_{pm} mod p for p in Z. Throws InvalidInput when p is not in Z.
u64 v_mod(const RecurrenceSpec& spec, u64 p, u64 m, const ScanBudget& budget = {});
u64 v_mod(const RecurrenceSpec& spec, const PrimeProfile& profile, u64 m);

struct CharSum {
    long long sum = 0;
    u64 period = 0;  // t_{c,d,p}
};

/// Sum of (V_{c+dk}/p) for k = 1..t_{c,d,p}; p must be in Z and c < d.
CharSum char_sum(const RecurrenceSpec& spec, u64 p, u64 c, u64 d, const ScanBudget& budget = {});

struct ProgressionPeriod {
    u64 t_cdp = 0;
    bool matches_formula = false;  // t_cdp == t_p / gcd(d, t_p)
};

/// Period of U_{c+dk} mod p by state-triple cycle detection; requires c < d.
ProgressionPeriod period_in_progression(const RecurrenceSpec& spec, u64 p, u64 c, u64 d,
                                        const ScanBudget& budget = {});

/// ord_p(alpha) <= y. Profile must be for a prime in Z.
bool in_K_y(const PrimeProfile& profile, double y);
/// ord_p(beta/gamma) <= y. Profile must be for a prime in Z.
bool in_L_y(const PrimeProfile& profile, double y);

struct PfuResult {
    bool member = false;
    std::optional<std::array<u64, 7>> witness;  // m_1 < ... < m_7 with U_{p m_i} = 0 mod p
};

/// Seven zeros of m -> U_{pm} mod p within a span <= f_p. Requires p odd, p not dividing a3.
PfuResult in_P_fU(const RecurrenceSpec& spec, u64 p, u64 f_p, const ScanBudget& budget = {});

}  // namespace ternrec
