#include "ternrec/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ternrec/errors.hpp"
#include "ternrec/numtheory.hpp"

namespace ternrec {

std::string to_string(GaloisLabel label) {
    switch (label) {
        case GaloisLabel::S3: return "S3";
        case GaloisLabel::C3: return "C3";
        case GaloisLabel::C2: return "C2";
        case GaloisLabel::TrivialSplit: return "Trivial-split";
        case GaloisLabel::Degenerate: return "Degenerate";
    }
    return "?";
}

mpz_class discriminant(const RecurrenceSpec& spec) {
    const mpz_class a1 = spec.a1, a2 = spec.a2, a3 = spec.a3;
    return a1 * a1 * a2 * a2 + 4 * a2 * a2 * a2 - 4 * a1 * a1 * a1 * a3 - 18 * a1 * a2 * a3 -
           27 * a3 * a3;
}

namespace {

mpz_class eval_cubic(const RecurrenceSpec& s, const mpz_class& x) {
    return ((x - s.a1) * x - s.a2) * x - s.a3;
}

bool is_square(const mpz_class& n, mpz_class* root = nullptr) {
    if (n < 0) return false;
    if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
    if (root) mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
    return true;
}

std::vector<std::int64_t> integer_roots(const RecurrenceSpec& spec) {
    std::vector<std::int64_t> roots;
    const u64 m = static_cast<u64>(std::llabs(spec.a3));
    std::vector<u64> divisors{1};
    for (auto [q, e] : factor_u64(m)) {
        const std::size_t count = divisors.size();
        u64 pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= q;
            for (std::size_t j = 0; j < count; ++j) divisors.push_back(divisors[j] * pk);
        }
    }
    for (u64 d : divisors) {
        for (std::int64_t r : {static_cast<std::int64_t>(d), -static_cast<std::int64_t>(d)}) {
            if (eval_cubic(spec, r) == 0) roots.push_back(r);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::int64_t to_i64(const mpz_class& v) {
    if (!v.fits_slong_p()) throw InvalidInput("coefficient out of 64-bit range");
    return v.get_si();
}

}  // namespace

CubicFactorization factorize(const RecurrenceSpec& spec) {
    spec.validate();
    constexpr std::int64_t kLimit = std::int64_t{1} << 31;
    for (auto v : spec.coefficients())
        if (v >= kLimit || v <= -kLimit) throw InvalidInput("coefficients must satisfy |a_i| < 2^31");

    const auto roots = integer_roots(spec);
    if (roots.empty()) return Irreducible{};

    const std::int64_t a = roots.front();
    const std::int64_t b = a - spec.a1;
    const std::int64_t c = to_i64(mpz_class(a) * b - spec.a2);
    const mpz_class disc = mpz_class(b) * b - 4 * mpz_class(c);
    mpz_class s;
    if (!is_square(disc, &s)) return LinearTimesQuadratic{a, b, c};

    // Quadratic splits: roots (-b +- s)/2 are integers since the cofactor is monic.
    const std::int64_t r1 = to_i64((-b - s) / 2);
    const std::int64_t r2 = to_i64((-b + s) / 2);
    std::vector<std::int64_t> all{a, r1, r2};
    std::sort(all.begin(), all.end());
    if (all[0] != all[1] && all[1] != all[2]) return ThreeLinear{{all[0], all[1], all[2]}};
    RepeatedRoot rep;
    for (auto r : all) {
        if (!rep.roots.empty() && rep.roots.back().first == r)
            ++rep.roots.back().second;
        else
            rep.roots.emplace_back(r, 1);
    }
    return rep;
}

std::array<mpz_class, 3> expand_coefficients(const CubicFactorization& f) {
    // Returns (a1, a2, a3) for X^3 - a1 X^2 - a2 X - a3 = product of the factors.
    auto from_roots = [](mpz_class r1, mpz_class r2, mpz_class r3) {
        return std::array<mpz_class, 3>{r1 + r2 + r3, -(r1 * r2 + r1 * r3 + r2 * r3), r1 * r2 * r3};
    };
    return std::visit(
        [&](const auto& v) -> std::array<mpz_class, 3> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Irreducible>) {
                throw std::logic_error("an irreducible factorization carries no factors");
            } else if constexpr (std::is_same_v<T, LinearTimesQuadratic>) {
                // (X-a)(X^2+bX+c) = X^3 + (b-a)X^2 + (c-ab)X - ac
                const mpz_class a = v.a, b = v.b, c = v.c;
                return {a - b, a * b - c, a * c};
            } else if constexpr (std::is_same_v<T, ThreeLinear>) {
                return from_roots(v.roots[0], v.roots[1], v.roots[2]);
            } else {
                std::vector<mpz_class> r;
                for (auto [root, mult] : v.roots)
                    for (int i = 0; i < mult; ++i) r.emplace_back(root);
                if (r.size() != 3) throw std::logic_error("repeated-root multiplicities must sum to 3");
                return from_roots(r[0], r[1], r[2]);
            }
        },
        f);
}

namespace {

using Poly = std::vector<mpz_class>;   // index = degree
using QPoly = std::vector<mpq_class>;

// Fraction-free Gaussian elimination (Bareiss).
mpz_class determinant(std::vector<std::vector<mpz_class>> m) {
    const std::size_t n = m.size();
    mpz_class sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Sylvester determinant of two formal cubics given by coefficients (highest degree first).
mpz_class sylvester_resultant(const std::array<mpz_class, 4>& f, const std::array<mpz_class, 4>& g) {
    std::vector<std::vector<mpz_class>> m(6, std::vector<mpz_class>(6, 0));
    for (int r = 0; r < 3; ++r)
        for (int j = 0; j < 4; ++j) {
            m[r][r + j] = f[j];
            m[r + 3][r + j] = g[j];
        }
    return determinant(std::move(m));
}

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly q_mod(QPoly a, const QPoly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const mpq_class factor = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= factor * b[i];
        trim(a);
    }
    return a;
}

std::size_t q_gcd_degree(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = q_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? 0 : a.size() - 1;
}

QPoly to_q(const Poly& p) { return {p.begin(), p.end()}; }

// Exact division of integer polynomials; throws if not exact.
Poly divide_exact(Poly num, const Poly& den) {
    Poly quot(num.size() - den.size() + 1, 0);
    for (std::size_t k = quot.size(); k-- > 0;) {
        const mpz_class& lead = num[k + den.size() - 1];
        if (lead % den.back() != 0) throw std::logic_error("inexact polynomial division");
        quot[k] = lead / den.back();
        for (std::size_t i = 0; i < den.size(); ++i) num[k + i] -= quot[k] * den[i];
    }
    for (const auto& r : num)
        if (r != 0) throw std::logic_error("inexact polynomial division");
    return quot;
}

}  // namespace

std::vector<mpz_class> cyclotomic(unsigned n) {
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    Poly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0) p = divide_exact(p, cyclotomic(d));
    return p;
}

std::vector<mpz_class> ratio_polynomial(const RecurrenceSpec& spec) {
    // R(x) = Res_y(Psi(y), Psi(xy)) = a3^3 prod_{i,j} (x - r_j/r_i) has degree 9 in x.
    // Sample it at x = 0..9, interpolate exactly, then strip the diagonal factor (x-1)^3.
    const std::array<mpz_class, 4> f{1, -spec.a1, -spec.a2, -spec.a3};
    constexpr int kPoints = 10;
    std::vector<mpq_class> values(kPoints);
    for (int x = 0; x < kPoints; ++x) {
        const mpz_class X = x;
        const std::array<mpz_class, 4> g{X * X * X, -spec.a1 * X * X, -spec.a2 * X, mpz_class(-spec.a3)};
        values[x] = sylvester_resultant(f, g);
    }
    // Newton divided differences on nodes 0..9.
    std::vector<mpq_class> coef = values;
    for (int j = 1; j < kPoints; ++j)
        for (int i = kPoints - 1; i >= j; --i) coef[i] = (coef[i] - coef[i - 1]) / j;
    QPoly poly{coef[kPoints - 1]};
    for (int k = kPoints - 2; k >= 0; --k) {
        // poly = poly * (x - k) + coef[k]
        QPoly next(poly.size() + 1, 0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= poly[i] * k;
        }
        next[0] += coef[k];
        poly = std::move(next);
    }
    Poly integral(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        poly[i].canonicalize();
        if (poly[i].get_den() != 1) throw std::logic_error("resultant interpolation is not integral");
        integral[i] = poly[i].get_num();
    }
    integral.resize(10, 0);
    const Poly cube{-1, 3, -3, 1};  // (x-1)^3
    return divide_exact(integral, cube);
}

DegeneracyResult is_degenerate(const RecurrenceSpec& spec) {
    spec.validate();
    if (discriminant(spec) == 0) return {true, 1u, "repeated root (ratio 1)"};
    const QPoly ratio = to_q(ratio_polynomial(spec));
    // A root-of-unity ratio lies in a field of degree <= 6, so phi(n) <= 6.
    for (unsigned n : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u, 12u, 14u, 18u}) {
        if (q_gcd_degree(ratio, to_q(cyclotomic(n))) > 0)
            return {true, n, "ratio of two roots is a primitive " + std::to_string(n) + "-th root of unity"};
    }
    return {false, std::nullopt, ""};
}

std::array<std::complex<double>, 3> characteristic_roots(const RecurrenceSpec& spec) {
    using ld = long double;
    using cld = std::complex<ld>;
    const ld a1 = spec.a1, a2 = spec.a2, a3 = spec.a3;
    auto f = [&](ld x) { return ((x - a1) * x - a2) * x - a3; };
    auto fc = [&](cld x) { return ((x - a1) * x - a2) * x - a3; };
    auto dfc = [&](cld x) { return (ld(3) * x - ld(2) * a1) * x - a2; };

    // An integer root is taken exactly so that repeated roots stay exact; otherwise
    // bisect a real root inside the Cauchy bound.
    ld r = 0;
    if (const auto exact = integer_roots(spec); !exact.empty()) {
        r = static_cast<ld>(exact.front());
    } else {
        const ld bound = 1 + std::max({std::fabs(a1), std::fabs(a2), std::fabs(a3)});
        ld lo = -bound, hi = bound;
        for (int it = 0; it < 200 && hi - lo > 0; ++it) {
            const ld mid = (lo + hi) / 2;
            if (mid == lo || mid == hi) break;
            (f(mid) < 0 ? lo : hi) = mid;
        }
        r = (lo + hi) / 2;
    }
    // Deflate: Psi = (X - r)(X^2 + pX + q).
    const ld p = r - a1;
    const ld q = r * p - a2;
    const ld disc = p * p - 4 * q;
    std::array<cld, 3> roots;
    roots[0] = r;
    if (disc >= 0) {
        const ld s = std::sqrt(disc);
        const ld big = p >= 0 ? (-p - s) / 2 : (-p + s) / 2;
        roots[1] = big;
        roots[2] = big != 0 ? q / big : ld(0);
    } else {
        const ld s = std::sqrt(-disc);
        roots[1] = cld(-p / 2, s / 2);
        roots[2] = cld(-p / 2, -s / 2);
    }
    // Newton polish in the complex plane.
    for (auto& z : roots) {
        for (int it = 0; it < 8; ++it) {
            const cld d = dfc(z);
            if (std::abs(d) == 0) break;
            const cld step = fc(z) / d;
            z -= step;
            if (std::abs(step) <= std::numeric_limits<ld>::epsilon() * std::max<ld>(1, std::abs(z))) break;
        }
    }
    return {std::complex<double>(roots[0]), std::complex<double>(roots[1]),
            std::complex<double>(roots[2])};
}

double dominant_root_modulus(const RecurrenceSpec& spec) {
    double gamma = 0.0;
    for (const auto& z : characteristic_roots(spec)) gamma = std::max(gamma, std::abs(z));
    return gamma;
}

PolyAnalysis check_conditions(const RecurrenceSpec& spec) {
    PolyAnalysis out;
    out.discriminant = discriminant(spec);
    out.factorization = factorize(spec);
    out.gamma = dominant_root_modulus(spec);

    const bool unit_constant = spec.a3 == 1 || spec.a3 == -1;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Irreducible>) {
                const bool square = out.discriminant >= 0 && mpz_perfect_square_p(out.discriminant.get_mpz_t());
                out.galois_label = square ? GaloisLabel::C3 : GaloisLabel::S3;
                out.cond_i = square ? Verdict{false, "irreducible with square discriminant (Galois group C3)"}
                                    : Verdict{true, ""};
                out.cond_ii = unit_constant
                                  ? Verdict{true, ""}
                                  : Verdict{false, "irreducible but a3 = " + std::to_string(spec.a3) + " is not +-1"};
            } else if constexpr (std::is_same_v<T, LinearTimesQuadratic>) {
                out.galois_label = GaloisLabel::C2;
                out.cond_i = {true, ""};
                if (v.a == 1 || v.a == -1)
                    out.cond_ii = {false, "integer root a = " + std::to_string(v.a)};
                else if (v.c != 1 && v.c != -1)
                    out.cond_ii = {false, "quadratic cofactor constant c = " + std::to_string(v.c) + " is not +-1"};
                else
                    out.cond_ii = {true, ""};
            } else if constexpr (std::is_same_v<T, ThreeLinear>) {
                out.galois_label = GaloisLabel::TrivialSplit;
                out.cond_i = {false, "factors completely over Q (trivial Galois group)"};
                out.cond_ii = {false, "not irreducible and has no irreducible quadratic factor"};
            } else {
                out.galois_label = GaloisLabel::Degenerate;
                out.cond_i = {false, "repeated root; factors completely over Q"};
                out.cond_ii = {false, "not irreducible and has no irreducible quadratic factor"};
            }
        },
        out.factorization);

    const DegeneracyResult deg = is_degenerate(spec);
    out.degenerate = deg.degenerate;
    out.cond_iii = deg.degenerate ? Verdict{false, deg.witness} : Verdict{true, ""};
    return out;
}

double exponent_equation(double kappa, double delta) {
    const double ln2 = std::numbers::ln2;
    const double kd = kappa * delta;
    return kd - ((1 - kappa) / 2 - (kd / ln2) * std::log(std::numbers::e * (1 - kappa) * ln2 / (2 * kd)));
}

ExponentSolution solve_exponents() {
    const double ln2 = std::numbers::ln2;
    ExponentSolution s;
    s.delta = 1 - (1 + std::log(ln2)) / ln2;
    // lambda = kappa*delta/ln2 must stay below (1-kappa)/2; the equality point closes the bracket.
    s.kappa_upper = 1 / (1 + 2 * s.delta / ln2);
    double lo = 1e-12, hi = s.kappa_upper;
    double f_lo = exponent_equation(lo, s.delta), f_hi = exponent_equation(hi, s.delta);
    if (!(f_lo < 0 && f_hi > 0)) throw std::runtime_error("exponent equation is not bracketed");
    while (hi - lo > 1e-13) {
        const double mid = (lo + hi) / 2;
        (exponent_equation(mid, s.delta) < 0 ? lo : hi) = mid;
    }
    s.kappa = (lo + hi) / 2;
    s.exponent = s.kappa * s.delta;
    s.lambda = s.exponent / ln2;
    s.residual = exponent_equation(s.kappa, s.delta);
    s.lambda_below_bound = s.lambda < (1 - s.kappa) / 2;
    return s;
}

}  // namespace ternrec
