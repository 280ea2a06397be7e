#pragma once

// Analysis of the characteristic polynomial X^3 - a1 X^2 - a2 X - a3 over the rationals.

#include <gmpxx.h>

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ternrec/recurrence.hpp"

namespace ternrec {

struct Irreducible {
    bool operator==(const Irreducible&) const = default;
};

/// (X - a)(X^2 + bX + c) with X^2 + bX + c irreducible over Q.
struct LinearTimesQuadratic {
    std::int64_t a = 0, b = 0, c = 0;
    bool operator==(const LinearTimesQuadratic&) const = default;
};

/// Three distinct integer roots, ascending.
struct ThreeLinear {
    std::array<std::int64_t, 3> roots{};
    bool operator==(const ThreeLinear&) const = default;
};

/// Integer roots with multiplicities (ascending by root); multiplicities sum to 3.
struct RepeatedRoot {
    std::vector<std::pair<std::int64_t, int>> roots;
    bool operator==(const RepeatedRoot&) const = default;
};

using CubicFactorization = std::variant<Irreducible, LinearTimesQuadratic, ThreeLinear, RepeatedRoot>;

enum class GaloisLabel { S3, C3, C2, TrivialSplit, Degenerate };
std::string to_string(GaloisLabel label);

struct Verdict {
    bool holds = false;
    std::string reason;  // empty when the condition holds
};

struct DegeneracyResult {
    bool degenerate = false;
    /// Order n of the root of unity found among the root ratios (1 for repeated roots).
    std::optional<unsigned> root_of_unity_order;
    std::string witness;
};

struct PolyAnalysis {
    mpz_class discriminant;
    CubicFactorization factorization;
    Verdict cond_i, cond_ii, cond_iii;
    bool degenerate = false;
    double gamma = 0.0;
    GaloisLabel galois_label = GaloisLabel::Degenerate;

    bool all_conditions() const { return cond_i.holds && cond_ii.holds && cond_iii.holds; }
};

mpz_class discriminant(const RecurrenceSpec& spec);

/// Exact factorization over Q via the rational-root test on the divisors of a3.
/// Requires |a_i| < 2^31 so that cofactor coefficients fit in 64 bits.
CubicFactorization factorize(const RecurrenceSpec& spec);

/// Expands a factorization back to (a1, a2, a3).
std::array<mpz_class, 3> expand_coefficients(const CubicFactorization& f);

/// Ratio polynomial prod_{i != j} (x - r_i/r_j) scaled by a3^3, integer coefficients,
/// index = power of x. Degree 6.
std::vector<mpz_class> ratio_polynomial(const RecurrenceSpec& spec);

/// Integer coefficients of the n-th cyclotomic polynomial, index = power of x.
std::vector<mpz_class> cyclotomic(unsigned n);

/// True iff the roots are repeated or some ratio of distinct roots is a root of unity.
DegeneracyResult is_degenerate(const RecurrenceSpec& spec);

/// Complex roots of the characteristic polynomial, refined to ~1e-12 relative accuracy.
std::array<std::complex<double>, 3> characteristic_roots(const RecurrenceSpec& spec);

/// Gamma = max modulus of the characteristic roots.
double dominant_root_modulus(const RecurrenceSpec& spec);

PolyAnalysis check_conditions(const RecurrenceSpec& spec);

struct ExponentSolution {
    double delta = 0.0;
    double kappa = 0.0;
    double lambda = 0.0;    // kappa*delta/ln 2
    double exponent = 0.0;  // kappa*delta
    double kappa_upper = 0.0;  // bracket end where lambda = (1 - kappa)/2
    double residual = 0.0;
    bool lambda_below_bound = false;  // lambda < (1 - kappa)/2
};

/// Residual of kappa*delta = (1-kappa)/2 - (kappa*delta/ln2) ln(e(1-kappa)ln2 / (2 kappa delta)).
double exponent_equation(double kappa, double delta);

/// Solves the exponent-balancing equation by bisection. Throws std::runtime_error if unbracketed.
ExponentSolution solve_exponents();

}  // namespace ternrec
