#include "ternrec/representation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ternrec/errors.hpp"
#include "ternrec/modular.hpp"
#include "ternrec/numtheory.hpp"
#include "ternrec/parallel.hpp"
#include "ternrec/sieve.hpp"

namespace ternrec {

IntegerSqrt integer_sqrt(const mpz_class& N) {
    if (N < 0) throw InvalidInput("integer_sqrt of a negative number");
    IntegerSqrt out;
    mpz_class rem;
    mpz_sqrtrem(out.root.get_mpz_t(), rem.get_mpz_t(), N.get_mpz_t());
    out.is_square = rem == 0;
    return out;
}

std::string to_string(Method m) {
    switch (m) {
        case Method::Enumeration: return "enumeration";
        case Method::Cornacchia: return "cornacchia";
        case Method::QrSieve: return "qr_sieve";
        case Method::WitnessFormula: return "witness_formula";
    }
    return "?";
}

std::string to_string(MemberStatus s) {
    switch (s) {
        case MemberStatus::Member: return "member";
        case MemberStatus::NonMember: return "nonmember";
        case MemberStatus::Obstructed: return "obstructed";
        case MemberStatus::Unknown: return "unknown";
    }
    return "?";
}

namespace {

struct TooManyRoots : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Roots = std::vector<mpz_class>;

mpz_class mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

mpz_class power(const mpz_class& q, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), e);
    return r;
}

mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

void check_cap(const mpz_class& count, std::uint64_t cap) {
    if (count > mpz_class(std::to_string(cap))) throw TooManyRoots("too many square roots");
}

// Tonelli-Shanks for a unit a modulo an odd prime q.
std::optional<mpz_class> sqrt_mod_prime(const mpz_class& a_in, const mpz_class& q) {
    const mpz_class a = mod(a_in, q);
    if (mpz_legendre(a.get_mpz_t(), q.get_mpz_t()) != 1) return std::nullopt;
    mpz_class Q = q - 1;
    const unsigned long S = mpz_scan1(Q.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(Q.get_mpz_t(), Q.get_mpz_t(), S);
    mpz_class z = 2;
    while (mpz_legendre(z.get_mpz_t(), q.get_mpz_t()) != -1) ++z;
    unsigned long M = S;
    mpz_class c = powm(z, Q, q);
    mpz_class t = powm(a, Q, q);
    mpz_class R = powm(a, (Q + 1) / 2, q);
    while (t != 1) {
        unsigned long i = 0;
        mpz_class t2 = t;
        while (t2 != 1) {
            t2 = mod(t2 * t2, q);
            ++i;
        }
        mpz_class b = c;
        for (unsigned long k = 0; k + i + 1 < M; ++k) b = mod(b * b, q);
        M = i;
        c = mod(b * b, q);
        t = mod(t * c, q);
        R = mod(R * b, q);
    }
    return R;
}

// x^2 = A (mod q^e) for a unit A and odd prime q: Tonelli-Shanks then Newton (Hensel) lifting.
Roots unit_roots_odd(const mpz_class& A, const mpz_class& q, unsigned long e) {
    const auto r0 = sqrt_mod_prime(A, q);
    if (!r0) return {};
    const mpz_class qe = power(q, e);
    mpz_class r = *r0, inv;
    while (mod(r * r - A, qe) != 0) {
        const mpz_class two_r = 2 * r;
        mpz_invert(inv.get_mpz_t(), two_r.get_mpz_t(), qe.get_mpz_t());
        r = mod(r - (r * r - A) * inv, qe);
    }
    return {r, qe - r};
}

// x^2 = A (mod 2^e) for odd A, lifting the root set one bit at a time.
Roots unit_roots_two(const mpz_class& A, unsigned long e) {
    Roots roots{mpz_class(1)};
    for (unsigned long j = 1; j < e; ++j) {
        const mpz_class step = power(2, j), modulus = step * 2;
        Roots next;
        for (const auto& r : roots)
            for (const mpz_class& cand : {mpz_class(r), mpz_class(r + step)})
                if (mod(cand * cand - A, modulus) == 0) next.push_back(cand);
        roots = std::move(next);
    }
    return roots;
}

Roots unit_roots(const mpz_class& A, const mpz_class& q, unsigned long e) {
    return q == 2 ? unit_roots_two(A, e) : unit_roots_odd(A, q, e);
}

// All x mod q^e with x^2 = A.
Roots prime_power_roots(const mpz_class& A_in, const mpz_class& q, unsigned long e, std::uint64_t cap) {
    const mpz_class qe = power(q, e);
    mpz_class A = mod(A_in, qe);
    if (A == 0) {
        const unsigned long h = (e + 1) / 2;
        const mpz_class count = power(q, e / 2), step = power(q, h);
        check_cap(count, cap);
        Roots out;
        for (mpz_class t = 0; t < count; ++t) out.push_back(t * step);
        return out;
    }
    const unsigned long k = mpz_remove(A.get_mpz_t(), A.get_mpz_t(), q.get_mpz_t());
    if (k % 2) return {};
    const unsigned long half = k / 2;
    const Roots base = unit_roots(A, q, e - k);
    const mpz_class spread = power(q, half);
    check_cap(spread * base.size(), cap);
    const mpz_class step = power(q, e - k);
    Roots out;
    for (const auto& r : base)
        for (mpz_class t = 0; t < spread; ++t) out.push_back(mod(spread * (r + t * step), qe));
    return out;
}

// Square roots of -n modulo M, given M's factorization.
Roots roots_of_minus_n(std::uint64_t n, const BigFactorization& factors, std::uint64_t cap) {
    Roots acc{mpz_class(0)};
    mpz_class acc_mod = 1;
    const mpz_class minus_n = -mpz_class(std::to_string(n));
    for (const auto& [q, e] : factors) {
        if (e == 0) continue;
        const Roots local = prime_power_roots(minus_n, q, e, cap);
        if (local.empty()) return {};
        check_cap(mpz_class(acc.size()) * local.size(), cap);
        const mpz_class m = power(q, e);
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), acc_mod.get_mpz_t(), m.get_mpz_t());
        Roots next;
        next.reserve(acc.size() * local.size());
        for (const auto& a : acc)
            for (const auto& b : local) next.push_back(a + acc_mod * mod((b - a) * inv, m));
        acc = std::move(next);
        acc_mod *= m;
    }
    return acc;
}

// Cornacchia descent from (M, r); returns (x, y) with x^2 + n y^2 = M, if this root yields one.
std::optional<std::pair<mpz_class, mpz_class>> cornacchia(const mpz_class& M, const mpz_class& r, const mpz_class& n) {
    mpz_class a = M, b = r, t;
    while (b * b > M) {
        t = a % b;
        a = b;
        b = t;
    }
    const mpz_class rest = M - b * b;
    if (rest % n != 0) return std::nullopt;
    const IntegerSqrt y = integer_sqrt(rest / n);
    if (!y.is_square) return std::nullopt;
    return std::pair{b, y.root};
}

bool better(const mpz_class& u, const mpz_class& v, const Represented& best) {
    return best.kind != Represented::Kind::Member || v < best.v || (v == best.v && u < best.u);
}

Represented by_enumeration(const mpz_class& N, std::uint64_t n, std::uint64_t vmax) {
    Represented out;
    out.method = Method::Enumeration;
    const mpz_class nz = mpz_class(std::to_string(n));
    mpz_class rest;
    for (std::uint64_t v = 0; v <= vmax; ++v) {
        const mpz_class vz = mpz_class(std::to_string(v));
        rest = N - nz * vz * vz;
        if (mpz_perfect_square_p(rest.get_mpz_t())) {
            out.kind = Represented::Kind::Member;
            out.u = integer_sqrt(rest).root;
            out.v = vz;
            return out;
        }
    }
    out.kind = Represented::Kind::NonMember;
    return out;
}

Represented by_cornacchia(const mpz_class& N, std::uint64_t n, const RepresentOptions& options) {
    Represented out;
    out.method = Method::Cornacchia;
    if (const IntegerSqrt s = integer_sqrt(N); s.is_square) {
        out.kind = Represented::Kind::Member;
        out.u = s.root;
        out.v = 0;
        return out;
    }
    BigFactorization factors;
    try {
        factors = factor_big(N, options.factor_budget);
    } catch (const BudgetExceeded& e) {
        out.kind = Represented::Kind::Unknown;
        out.note = e.what();
        return out;
    }
    const mpz_class nz = mpz_class(std::to_string(n));
    // Walk every g with g^2 | N through its exponent vector.
    std::vector<unsigned> k(factors.size(), 0);
    try {
        while (true) {
            mpz_class g = 1;
            BigFactorization reduced = factors;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                g *= power(factors[i].first, k[i]);
                reduced[i].second -= 2 * k[i];
            }
            const mpz_class M = N / (g * g);
            for (const auto& r : roots_of_minus_n(n, reduced, options.max_roots)) {
                if (const auto sol = cornacchia(M, r, nz)) {
                    const mpz_class u = sol->first * g, v = sol->second * g;
                    if (better(u, v, out)) {
                        out.kind = Represented::Kind::Member;
                        out.u = u;
                        out.v = v;
                    }
                }
            }
            std::size_t i = 0;
            while (i < k.size() && 2 * (k[i] + 1) > factors[i].second) k[i++] = 0;
            if (i == k.size()) break;
            ++k[i];
        }
    } catch (const TooManyRoots& e) {
        out.kind = Represented::Kind::Unknown;
        out.note = e.what();
        return out;
    }
    if (out.kind != Represented::Kind::Member) out.kind = Represented::Kind::NonMember;
    return out;
}

}  // namespace

Represented represent(const mpz_class& N, std::uint64_t n, const RepresentOptions& options) {
    if (N < 0) throw InvalidInput("represent needs N >= 0");
    if (n == 0) throw InvalidInput("represent needs n >= 1");
    if (N == 0) {
        Represented out;
        out.kind = Represented::Kind::Member;
        out.u = out.v = 0;
        return out;
    }
    const mpz_class vmax = integer_sqrt(N / mpz_class(std::to_string(n))).root;
    if (!options.force_cornacchia && vmax <= mpz_class(std::to_string(options.enumeration_limit)))
        return by_enumeration(N, n, mpz_get_ui(vmax.get_mpz_t()));
    return by_cornacchia(N, n, options);
}

std::optional<std::uint64_t> qr_obstruction(const RecurrenceSpec& spec, std::uint64_t n) {
    if (n < 2) return std::nullopt;
    for (const auto& [p, e] : factor_u64(n)) {
        if (p == 2) continue;
        const u64 r = term_mod(spec, n, p);
        if (r != 0 && legendre(r, p) == -1) return p;
    }
    return std::nullopt;
}

MembershipRecord MembershipRecord::member(std::uint64_t n, const mpz_class& U_n, mpz_class u, mpz_class v,
                                          Method method) {
    if (u < 0 || v < 0 || u * u + mpz_class(std::to_string(n)) * v * v != U_n)
        throw std::logic_error("member certificate does not reproduce U_n for n = " + std::to_string(n));
    MembershipRecord r;
    r.n_ = n;
    r.status_ = MemberStatus::Member;
    r.method_ = method;
    r.u_ = std::move(u);
    r.v_ = std::move(v);
    return r;
}

MembershipRecord MembershipRecord::non_member(std::uint64_t n, Method method) {
    MembershipRecord r;
    r.n_ = n;
    r.status_ = MemberStatus::NonMember;
    r.method_ = method;
    return r;
}

MembershipRecord MembershipRecord::obstructed(const RecurrenceSpec& spec, std::uint64_t n, std::uint64_t p) {
    if (p == 2 || n % p != 0 || !is_prime_u64(p))
        throw std::logic_error("obstruction prime must be an odd prime divisor of n");
    const u64 r = term_mod(spec, n, p);
    if (r == 0 || legendre(r, p) != -1) throw std::logic_error("U_n is a square modulo the obstruction prime");
    MembershipRecord rec;
    rec.n_ = n;
    rec.status_ = MemberStatus::Obstructed;
    rec.method_ = Method::QrSieve;
    rec.p_ = p;
    return rec;
}

MembershipRecord MembershipRecord::unknown(std::uint64_t n, Method method, std::string note) {
    MembershipRecord r;
    r.n_ = n;
    r.status_ = MemberStatus::Unknown;
    r.method_ = method;
    r.note_ = std::move(note);
    return r;
}

namespace {

std::optional<std::pair<mpz_class, mpz_class>> witness(Preset preset, std::uint64_t n) {
    mpz_class u;
    switch (preset) {
        case Preset::Pow2PlusN:
            if (n % 2) return std::nullopt;
            mpz_ui_pow_ui(u.get_mpz_t(), 2, n / 2);
            return std::pair{u, mpz_class(1)};
        case Preset::SquarePow:
            mpz_ui_pow_ui(u.get_mpz_t(), 2, n);
            return std::pair{u + 1, mpz_class(0)};
        case Preset::FiveFibSqMinus4:
            if (n % 2 == 0) return std::nullopt;
            mpz_lucnum_ui(u.get_mpz_t(), n);
            return std::pair{u, mpz_class(0)};
        default: return std::nullopt;
    }
}

}  // namespace

MembershipRecord membership(const RecurrenceSpec& spec, std::uint64_t n, std::uint64_t n_exact,
                            const MembershipOptions& options) {
    if (n == 0) throw InvalidInput("membership needs n >= 1");
    if (const auto p = qr_obstruction(spec, n)) return MembershipRecord::obstructed(spec, n, *p);
    try {
        if (options.use_witness_formulas)
            if (const auto preset = identify_preset(spec))
                if (auto w = witness(*preset, n))
                    return MembershipRecord::member(n, term(spec, n, options.term_budget), std::move(w->first),
                                                    std::move(w->second), Method::WitnessFormula);
        if (n > n_exact) return MembershipRecord::unknown(n, Method::QrSieve, "beyond exact range");
        const mpz_class U = term(spec, n, options.term_budget);
        if (U < 0) return MembershipRecord::non_member(n, Method::Enumeration);
        Represented rep = represent(U, n, options.represent);
        switch (rep.kind) {
            case Represented::Kind::Member:
                return MembershipRecord::member(n, U, std::move(rep.u), std::move(rep.v), rep.method);
            case Represented::Kind::NonMember: return MembershipRecord::non_member(n, rep.method);
            case Represented::Kind::Unknown: return MembershipRecord::unknown(n, rep.method, rep.note);
        }
    } catch (const BudgetExceeded& e) {
        return MembershipRecord::unknown(n, Method::Enumeration, e.what());
    }
    return MembershipRecord::unknown(n, Method::QrSieve);
}

CountReport count_range(const RecurrenceSpec& spec, std::uint64_t x, std::uint64_t n_exact, unsigned threads,
                        const MembershipOptions& options) {
    if (x == 0) throw InvalidInput("count_range needs x >= 1");
    spec.validate();
    std::vector<std::optional<MembershipRecord>> slots(x);
    // Small chunks: the exact indices at the front cost far more than the rest.
    parallel_for(
        1, x + 1, threads, [&](std::uint64_t n) { slots[n - 1] = membership(spec, n, n_exact, options); }, 8);

    CountReport report;
    report.x = x;
    report.n_exact = n_exact;
    report.records.reserve(x);
    for (auto& slot : slots) {
        switch (slot->status()) {
            case MemberStatus::Member: ++report.members; break;
            case MemberStatus::NonMember: ++report.non_members; break;
            case MemberStatus::Obstructed: ++report.obstructed; break;
            case MemberStatus::Unknown: ++report.unknown; break;
        }
        report.records.push_back(std::move(*slot));
    }
    report.upper_bound = x - report.obstructed - report.non_members;
    report.lower_bound = report.members;
    report.upper_density = static_cast<double>(report.upper_bound) / static_cast<double>(x);
    report.lower_density = static_cast<double>(report.lower_bound) / static_cast<double>(x);
    if (x >= 3 && x <= kSieveLimit) {
        const SieveParameters s = sieve_parameters(static_cast<double>(x));
        report.m1_count = smooth_count(x, s.y1);
        report.m2_count = squarefull_multiple_count(x, std::pow(s.z1, s.kappa));
    }
    return report;
}

}  // namespace ternrec
