#pragma once

// Deciding N = u^2 + n v^2, the quadratic-residue obstruction, and classification of
// indices n by whether U_n has such a representation.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ternrec/bigfactor.hpp"
#include "ternrec/recurrence.hpp"

namespace ternrec {

struct IntegerSqrt {
    mpz_class root;
    bool is_square = false;
};

/// floor(sqrt(N)) and whether N is a perfect square. Throws InvalidInput for N < 0.
IntegerSqrt integer_sqrt(const mpz_class& N);

enum class Method { Enumeration, Cornacchia, QrSieve, WitnessFormula };
std::string to_string(Method m);

struct RepresentOptions {
    /// Scan v directly when floor(sqrt(N/n)) is at most this.
    std::uint64_t enumeration_limit = 1'000'000;
    FactorBudget factor_budget{};
    /// Skip the enumeration tier (differential testing).
    bool force_cornacchia = false;
    /// Give up (Unknown) when -n has more square roots than this modulo some N/g^2.
    std::uint64_t max_roots = 1u << 16;
};

struct Represented {
    enum class Kind { Member, NonMember, Unknown };
    Kind kind = Kind::Unknown;
    mpz_class u, v;  // Member only; v is minimal, then u
    Method method = Method::Enumeration;
    std::string note;  // reason for Unknown
};

/// Decides u^2 + n v^2 = N over nonnegative integers. Among all solutions the one
/// with the least v is returned, whichever tier runs.
Represented represent(const mpz_class& N, std::uint64_t n, const RepresentOptions& options = {});

/// Least odd prime p | n with U_n mod p a quadratic nonresidue.
std::optional<std::uint64_t> qr_obstruction(const RecurrenceSpec& spec, std::uint64_t n);

enum class MemberStatus { Member, NonMember, Obstructed, Unknown };
std::string to_string(MemberStatus s);

/// Verdict on n. Factories re-check their certificate and throw std::logic_error if it is false.
class MembershipRecord {
public:
    static MembershipRecord member(std::uint64_t n, const mpz_class& U_n, mpz_class u, mpz_class v, Method method);
    static MembershipRecord non_member(std::uint64_t n, Method method);
    static MembershipRecord obstructed(const RecurrenceSpec& spec, std::uint64_t n, std::uint64_t p);
    static MembershipRecord unknown(std::uint64_t n, Method method, std::string note = {});

    std::uint64_t n() const { return n_; }
    MemberStatus status() const { return status_; }
    Method method() const { return method_; }
    const mpz_class& u() const { return u_; }
    const mpz_class& v() const { return v_; }
    std::optional<std::uint64_t> obstruction_prime() const { return p_; }
    const std::string& note() const { return note_; }
    /// Member counts as in M_U; NonMember and Obstructed certify absence.
    bool certified_non_member() const {
        return status_ == MemberStatus::NonMember || status_ == MemberStatus::Obstructed;
    }

private:
    MembershipRecord() = default;
    std::uint64_t n_ = 0;
    MemberStatus status_ = MemberStatus::Unknown;
    Method method_ = Method::QrSieve;
    mpz_class u_, v_;
    std::optional<std::uint64_t> p_;
    std::string note_;
};

struct MembershipOptions {
    RepresentOptions represent{};
    TermBudget term_budget{};
    /// Use the closed-form representations known for the counterexample presets.
    bool use_witness_formulas = true;
};

/// QR obstruction, then preset witness formulas, then exact decision when n <= n_exact.
MembershipRecord membership(const RecurrenceSpec& spec, std::uint64_t n, std::uint64_t n_exact,
                            const MembershipOptions& options = {});

struct CountReport {
    std::uint64_t x = 0;
    std::uint64_t n_exact = 0;
    std::vector<MembershipRecord> records;  // index i holds n = i + 1
    std::uint64_t members = 0, non_members = 0, obstructed = 0, unknown = 0;
    std::uint64_t upper_bound = 0;  // x - obstructed - non_members
    std::uint64_t lower_bound = 0;  // members
    double upper_density = 0, lower_density = 0;
    /// Sizes of the smooth set {n <= x : P(n) <= y1} and of {n <= x : q^2 | n, q > z1^kappa}
    /// (both zero when x is too small for the thresholds to be defined).
    std::uint64_t m1_count = 0, m2_count = 0;
};

/// Classifies every n in [1, x]. The report does not depend on the thread count.
CountReport count_range(const RecurrenceSpec& spec, std::uint64_t x, std::uint64_t n_exact, unsigned threads = 1,
                        const MembershipOptions& options = {});

}  // namespace ternrec
