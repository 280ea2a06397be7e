#include "ternrec/modular.hpp"

#include <algorithm>
#include <deque>

#include "ternrec/charpoly.hpp"
#include "ternrec/errors.hpp"
#include "ternrec/fp2.hpp"

namespace ternrec {

Mat3 companion_matrix(const RecurrenceSpec& spec, u64 p) {
    // (U_n, U_{n+1}, U_{n+2}) -> (U_{n+1}, U_{n+2}, a3 U_n + a2 U_{n+1} + a1 U_{n+2})
    Mat3 c;
    c.m[0] = {0, 1 % p, 0};
    c.m[1] = {0, 0, 1 % p};
    c.m[2] = {reduce(spec.a3, p), reduce(spec.a2, p), reduce(spec.a1, p)};
    return c;
}

Mat3 mat_mul(const Mat3& x, const Mat3& y, u64 p) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            u128 acc = 0;
            for (int k = 0; k < 3; ++k) acc += static_cast<u128>(x.m[i][k]) * y.m[k][j];
            r.m[i][j] = static_cast<u64>(acc % p);
        }
    return r;
}

Mat3 mat_pow(Mat3 x, u64 e, u64 p) {
    Mat3 r;
    for (int i = 0; i < 3; ++i) r.m[i][i] = 1 % p;
    while (e) {
        if (e & 1) r = mat_mul(r, x, p);
        x = mat_mul(x, x, p);
        e >>= 1;
    }
    return r;
}

State apply(const Mat3& x, const State& s, u64 p) {
    State r;
    for (int i = 0; i < 3; ++i) {
        u128 acc = 0;
        for (int k = 0; k < 3; ++k) acc += static_cast<u128>(x.m[i][k]) * s[k];
        r[i] = static_cast<u64>(acc % p);
    }
    return r;
}

State initial_state(const RecurrenceSpec& spec, u64 p) {
    return {reduce(spec.u0, p), reduce(spec.u1, p), reduce(spec.u2, p)};
}

State state_mod(const RecurrenceSpec& spec, u64 n, u64 p) {
    return apply(mat_pow(companion_matrix(spec, p), n, p), initial_state(spec, p), p);
}

u64 term_mod(const RecurrenceSpec& spec, u64 n, u64 p) { return state_mod(spec, n, p)[0]; }

std::string to_string(RootCount rc) {
    switch (rc) {
        case RootCount::Zero: return "0";
        case RootCount::One: return "1";
        case RootCount::Three: return "3";
        case RootCount::Ramified: return "ramified";
    }
    return "?";
}

namespace {

// Polynomials over F_p, index = degree, kept trimmed.
using PolyP = std::vector<u64>;

void trim(PolyP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyP psi_mod(const RecurrenceSpec& spec, u64 p) {
    // X^3 - a1 X^2 - a2 X - a3
    PolyP f{sub_mod(0, reduce(spec.a3, p), p), sub_mod(0, reduce(spec.a2, p), p),
            sub_mod(0, reduce(spec.a1, p), p), 1 % p};
    trim(f);
    return f;
}

PolyP poly_mod(PolyP a, const PolyP& b, u64 p) {
    trim(a);
    const u64 lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        const u64 factor = mul_mod(a.back(), lead_inv, p);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] = sub_mod(a[i + shift], mul_mod(factor, b[i], p), p);
        trim(a);
    }
    return a;
}

PolyP poly_gcd(PolyP a, PolyP b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        PolyP r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const u64 inv = inv_mod(a.back(), p);
        for (auto& c : a) c = mul_mod(c, inv, p);
    }
    return a;
}

// X^e mod Psi in F_p[X], as a polynomial of degree < 3.
PolyP x_power_mod_psi(const RecurrenceSpec& spec, u64 e, u64 p) {
    const u64 a1 = reduce(spec.a1, p), a2 = reduce(spec.a2, p), a3 = reduce(spec.a3, p);
    auto mulmod = [&](const std::array<u64, 3>& x, const std::array<u64, 3>& y) {
        std::array<u64, 5> r{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r[i + j] = add_mod(r[i + j], mul_mod(x[i], y[j], p), p);
        // X^3 = a1 X^2 + a2 X + a3
        for (int d = 4; d >= 3; --d) {
            const u64 c = r[d];
            r[d] = 0;
            r[d - 1] = add_mod(r[d - 1], mul_mod(c, a1, p), p);
            r[d - 2] = add_mod(r[d - 2], mul_mod(c, a2, p), p);
            r[d - 3] = add_mod(r[d - 3], mul_mod(c, a3, p), p);
        }
        return std::array<u64, 3>{r[0], r[1], r[2]};
    };
    std::array<u64, 3> result{1 % p, 0, 0}, base{0, 1 % p, 0};
    while (e) {
        if (e & 1) result = mulmod(result, base);
        base = mulmod(base, base);
        e >>= 1;
    }
    PolyP out(result.begin(), result.end());
    trim(out);
    return out;
}

// gcd(X^p - X, Psi): product of the distinct linear factors of Psi over F_p.
PolyP split_part(const RecurrenceSpec& spec, u64 p) {
    PolyP xp = x_power_mod_psi(spec, p, p);
    xp.resize(std::max<std::size_t>(xp.size(), 2), 0);
    xp[1] = sub_mod(xp[1], 1 % p, p);
    return poly_gcd(psi_mod(spec, p), xp, p);
}

constexpr u64 kScanRootLimit = 1000;

u64 eval_psi(const RecurrenceSpec& spec, u64 x, u64 p) {
    const u64 a1 = reduce(spec.a1, p), a2 = reduce(spec.a2, p), a3 = reduce(spec.a3, p);
    u64 v = sub_mod(x, a1, p);
    v = sub_mod(mul_mod(v, x, p), a2, p);
    v = sub_mod(mul_mod(v, x, p), a3, p);
    return v;
}

bool divides_discriminant(const RecurrenceSpec& spec, u64 p) {
    return mpz_divisible_ui_p(discriminant(spec).get_mpz_t(), p) != 0;
}

}  // namespace

std::vector<u64> roots_mod_p(const RecurrenceSpec& spec, u64 p) {
    std::vector<u64> roots;
    if (p < kScanRootLimit) {
        for (u64 x = 0; x < p; ++x)
            if (eval_psi(spec, x, p) == 0) roots.push_back(x);
        return roots;
    }
    const PolyP g = split_part(spec, p);
    if (g.size() == 2) {
        roots.push_back(sub_mod(0, g[0], p));
    } else if (g.size() > 2) {
        // Two or three rational roots: peel them off with equal-degree splitting.
        // Desk-scale p makes a randomized split unnecessary: find one root by
        // gcd with (X + s)^((p-1)/2) - 1 for successive shifts s.
        std::vector<PolyP> pending{g};
        while (!pending.empty()) {
            PolyP f = pending.back();
            pending.pop_back();
            if (f.size() == 2) {
                roots.push_back(sub_mod(0, f[0], p));
                continue;
            }
            for (u64 s = 0;; ++s) {
                // (X + s)^((p-1)/2) mod f
                PolyP result{1}, base{s % p, 1};
                u64 e = (p - 1) / 2;
                auto mulm = [&](const PolyP& x, const PolyP& y) {
                    PolyP r(x.size() + y.size(), 0);
                    for (std::size_t i = 0; i < x.size(); ++i)
                        for (std::size_t j = 0; j < y.size(); ++j)
                            r[i + j] = add_mod(r[i + j], mul_mod(x[i], y[j], p), p);
                    return poly_mod(r, f, p);
                };
                base = poly_mod(base, f, p);
                while (e) {
                    if (e & 1) result = mulm(result, base);
                    base = mulm(base, base);
                    e >>= 1;
                }
                result.resize(std::max<std::size_t>(result.size(), 1), 0);
                result[0] = sub_mod(result[0], 1, p);
                PolyP h = poly_gcd(f, result, p);
                if (h.size() > 1 && h.size() < f.size()) {
                    pending.push_back(h);
                    // f / h by long division
                    PolyP q(f.size() - h.size() + 1, 0), rem = f;
                    for (std::size_t k = q.size(); k-- > 0;) {
                        q[k] = rem[k + h.size() - 1];
                        for (std::size_t i = 0; i < h.size(); ++i)
                            rem[k + i] = sub_mod(rem[k + i], mul_mod(q[k], h[i], p), p);
                    }
                    pending.push_back(q);
                    break;
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

RootCount count_roots_mod_p(const RecurrenceSpec& spec, u64 p) {
    if (divides_discriminant(spec, p)) return RootCount::Ramified;
    std::size_t n = 0;
    if (p < kScanRootLimit) {
        for (u64 x = 0; x < p; ++x)
            if (eval_psi(spec, x, p) == 0) ++n;
    } else {
        n = split_part(spec, p).size() - 1;
    }
    switch (n) {
        case 0: return RootCount::Zero;
        case 1: return RootCount::One;
        case 3: return RootCount::Three;
        default: throw std::logic_error("unramified cubic with two roots mod p");
    }
}

bool in_Z(const RecurrenceSpec& spec, u64 p) {
    if (p == 2 || spec.a3 % static_cast<std::int64_t>(p) == 0) return false;
    return count_roots_mod_p(spec, p) == RootCount::One;
}

namespace {

bool invertible_companion(const RecurrenceSpec& spec, u64 p) { return reduce(spec.a3, p) != 0; }

// Cycle length of the orbit of `start` under `step`. Invertible steps give a pure
// cycle; otherwise Brent's algorithm finds the eventual cycle.
u64 orbit_period(const State& start, const Mat3& step, bool invertible, u64 p, u64 max_states) {
    if (invertible) {
        State s = start;
        for (u64 k = 1; k <= max_states; ++k) {
            s = apply(step, s, p);
            if (s == start) return k;
        }
        throw BudgetExceeded("orbit scan exceeded " + std::to_string(max_states) + " states");
    }
    u64 power = 1, lambda = 1, visited = 0;
    State tortoise = start, hare = apply(step, start, p);
    while (tortoise != hare) {
        if (power == lambda) {
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        hare = apply(step, hare, p);
        ++lambda;
        if (++visited > max_states)
            throw BudgetExceeded("orbit scan exceeded " + std::to_string(max_states) + " states");
    }
    return lambda;
}

// A multiple of the period of an invertible companion matrix, with its factorization.
std::pair<u64, Factorization> period_multiple(const RecurrenceSpec& spec, u64 p) {
    const RootCount rc = count_roots_mod_p(spec, p);
    Factorization f;
    u128 value = 0;
    switch (rc) {
        case RootCount::Three:
            f = factor_u64(p - 1);
            value = p - 1;
            break;
        case RootCount::One:
            f = merge_factorizations(factor_u64(p - 1), factor_u64(p + 1));
            value = static_cast<u128>(p - 1) * (p + 1);
            break;
        case RootCount::Zero: {
            const u128 q = static_cast<u128>(p) * p + p + 1;
            if (static_cast<u128>(p - 1) * q >> 64) throw BudgetExceeded("period multiple exceeds 64 bits");
            f = merge_factorizations(factor_u64(p - 1), factor_u64(static_cast<u64>(q)));
            value = static_cast<u128>(p - 1) * q;
            break;
        }
        case RootCount::Ramified:
            // Repeated roots lie in F_p; Jordan blocks of size <= 3 have unipotent order p (p >= 3).
            f = merge_factorizations(factor_u64(p - 1), Factorization{{p, 1}});
            value = static_cast<u128>(p - 1) * p;
            break;
    }
    return {static_cast<u64>(value), f};
}

}  // namespace

u64 period_by_scan(const RecurrenceSpec& spec, u64 p, const ScanBudget& budget) {
    return orbit_period(initial_state(spec, p), companion_matrix(spec, p), invertible_companion(spec, p), p,
                        budget.max_states);
}

u64 period_mod_p(const RecurrenceSpec& spec, u64 p, const ScanBudget& budget) {
    if (p <= budget.direct_period_limit || !invertible_companion(spec, p) || p == 2)
        return period_by_scan(spec, p, budget);
    const Mat3 m = companion_matrix(spec, p);
    const State s0 = initial_state(spec, p);
    const auto [multiple, factors] = period_multiple(spec, p);
    return order_from_multiple(multiple, factors, [&](u64 k) { return apply(mat_pow(m, k, p), s0, p) == s0; });
}

PrimeProfile profile_any_prime(const RecurrenceSpec& spec, u64 p, const ScanBudget& budget) {
    if (p != 2 && spec.a3 % static_cast<std::int64_t>(p) != 0) return classify_prime(spec, p, budget);
    PrimeProfile prof;
    prof.p = p;
    prof.root_count = count_roots_mod_p(spec, p);
    prof.in_Z = false;
    prof.t_p = period_mod_p(spec, p, budget);
    return prof;
}

PrimeProfile classify_prime(const RecurrenceSpec& spec, u64 p, const ScanBudget& budget) {
    if (p == 2) throw InvalidInput("classify_prime requires an odd prime");
    if (spec.a3 % static_cast<std::int64_t>(p) == 0) throw InvalidInput("classify_prime requires p not dividing a3");
    PrimeProfile prof;
    prof.p = p;
    prof.root_count = count_roots_mod_p(spec, p);
    prof.in_Z = prof.root_count == RootCount::One;
    prof.t_p = period_mod_p(spec, p, budget);
    if (!prof.in_Z) return prof;

    const u64 alpha = roots_mod_p(spec, p).front();
    // Psi = (X - alpha)(X^2 + bX + c) mod p; beta = theta is a root of the cofactor.
    const u64 b = sub_mod(alpha, reduce(spec.a1, p), p);
    const u64 c = sub_mod(mul_mod(alpha, b, p), reduce(spec.a2, p), p);
    const Fp2Field field(p, b, c);
    const Fp2Element beta = field.theta();
    const Fp2Element gamma = field.conjugate(beta);
    const Fp2Element c_inv = field.embed(inv_mod(c, p));

    prof.alpha = alpha;
    prof.ord_alpha = order_from_multiple(p - 1, factor_u64(p - 1), [&](u64 k) { return pow_mod(alpha, k, p) == 1; });
    const u64 ord_beta = field.order(beta);
    prof.k_p = lcm_u64(*prof.ord_alpha, ord_beta);
    // beta/gamma = beta^2/c and alpha/beta = alpha*gamma/c, since beta*gamma = c.
    const Fp2Element ratio = field.mul(field.mul(beta, beta), c_inv);
    const Fp2Element alpha_over_beta = field.mul(field.mul(field.embed(alpha), gamma), c_inv);
    prof.ord_ratio = field.order(ratio);
    // alpha/gamma is the Frobenius image of alpha/beta, so it has the same order.
    prof.n0 = lcm_u64(field.order(alpha_over_beta), *prof.ord_ratio);
    prof.mult_order = *prof.k_p / *prof.n0;
    return prof;
}

void for_each_z_prime(const RecurrenceSpec& spec, u64 lo, u64 hi, const std::function<void(u64)>& fn) {
    const mpz_class disc = discriminant(spec);
    for_each_prime(std::max<u64>(lo, 3), hi, [&](u64 p) {
        if (spec.a3 % static_cast<std::int64_t>(p) == 0) return;
        if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) return;
        const std::size_t n = p < kScanRootLimit ? roots_mod_p(spec, p).size() : split_part(spec, p).size() - 1;
        if (n == 1) fn(p);
    });
}

std::vector<u64> z_primes(const RecurrenceSpec& spec, u64 x) {
    std::vector<u64> out;
    for_each_z_prime(spec, 3, x, [&](u64 p) { out.push_back(p); });
    return out;
}

u64 v_mod(const RecurrenceSpec& spec, const PrimeProfile& profile, u64 m) {
    if (!profile.in_Z) throw InvalidInput("v_mod requires p in Z");
    const u64 p = profile.p;
    const u64 index = static_cast<u64>(static_cast<u128>(p % profile.t_p) * (m % profile.t_p) % profile.t_p);
    return term_mod(spec, index, p);
}

u64 v_mod(const RecurrenceSpec& spec, u64 p, u64 m, const ScanBudget& budget) {
    if (!in_Z(spec, p)) throw InvalidInput("v_mod requires p in Z");
    return v_mod(spec, classify_prime(spec, p, budget), m);
}

CharSum char_sum(const RecurrenceSpec& spec, u64 p, u64 c, u64 d, const ScanBudget& budget) {
    if (d == 0 || c >= d) throw InvalidInput("char_sum requires 0 <= c < d");
    if (!in_Z(spec, p)) throw InvalidInput("char_sum requires p in Z");
    // V_{c+dk} = U_{p(c+dk)}: walk the U-state at index p*c in steps of p*d.
    const Mat3 m = companion_matrix(spec, p);
    const Mat3 step = mat_pow(mat_pow(m, p, p), d, p);
    const State s0 = apply(mat_pow(mat_pow(m, p, p), c, p), initial_state(spec, p), p);
    CharSum out;
    State s = s0;
    for (u64 k = 1;; ++k) {
        if (k > budget.max_states) throw BudgetExceeded("char_sum scan exceeded the state budget");
        s = apply(step, s, p);
        out.sum += legendre(s[0], p);
        if (s == s0) {
            out.period = k;
            break;
        }
    }
    return out;
}

ProgressionPeriod period_in_progression(const RecurrenceSpec& spec, u64 p, u64 c, u64 d, const ScanBudget& budget) {
    if (d == 0 || c >= d) throw InvalidInput("period_in_progression requires 0 <= c < d");
    const Mat3 step = mat_pow(companion_matrix(spec, p), d, p);
    ProgressionPeriod out;
    out.t_cdp = orbit_period(state_mod(spec, c, p), step, invertible_companion(spec, p), p, budget.max_states);
    const u64 t = period_mod_p(spec, p, budget);
    out.matches_formula = out.t_cdp == t / gcd_u64(d, t);
    return out;
}

bool in_K_y(const PrimeProfile& profile, double y) {
    if (!profile.in_Z || !profile.ord_alpha) throw InvalidInput("K_y membership is defined here only for p in Z");
    return static_cast<double>(*profile.ord_alpha) <= y;
}

bool in_L_y(const PrimeProfile& profile, double y) {
    if (!profile.in_Z || !profile.ord_ratio) throw InvalidInput("L_y membership is defined here only for p in Z");
    return static_cast<double>(*profile.ord_ratio) <= y;
}

PfuResult in_P_fU(const RecurrenceSpec& spec, u64 p, u64 f_p, const ScanBudget& budget) {
    if (p == 2) throw InvalidInput("P_{f,U} membership requires an odd prime");
    if (spec.a3 % static_cast<std::int64_t>(p) == 0) throw InvalidInput("P_{f,U} membership requires p not dividing a3");
    const u64 t = period_mod_p(spec, p, budget);
    // m -> U_{pm} mod p repeats with a period dividing t, so a window of 7 zeros with
    // span <= f_p can be shifted to start in [1, t]; with at least one zero per period
    // its span is also below 7t.
    const u128 limit = static_cast<u128>(t) + std::min<u128>(f_p, static_cast<u128>(t) * 7);
    if (limit > budget.max_states) throw BudgetExceeded("P_{f,U} scan exceeds the state budget");
    const Mat3 step = mat_pow(companion_matrix(spec, p), p, p);
    State s = initial_state(spec, p);
    std::deque<u64> window;
    PfuResult out;
    for (u64 m = 1; m <= static_cast<u64>(limit); ++m) {
        s = apply(step, s, p);
        if (s[0] != 0) continue;
        window.push_back(m);
        if (window.size() > 7) window.pop_front();
        if (window.size() == 7 && window.back() - window.front() <= f_p) {
            out.member = true;
            std::array<u64, 7> w{};
            std::copy(window.begin(), window.end(), w.begin());
            out.witness = w;
            return out;
        }
    }
    return out;
}

}  // namespace ternrec
