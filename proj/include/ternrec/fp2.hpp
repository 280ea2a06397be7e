#pragma once

#include "ternrec/numtheory.hpp"

namespace ternrec {

/// a + b*theta in F_p[theta]/(theta^2 + B*theta + C).
struct Fp2Element {
    u64 a = 0, b = 0;
    bool operator==(const Fp2Element&) const = default;
};

/// Quadratic extension built on a monic quadratic theta^2 + B theta + C that is
/// irreducible mod p, so theta is one of its two conjugate roots.
class Fp2Field {
public:
    /// Requires p odd prime < 2^31 and the quadratic irreducible mod p (not checked).
    Fp2Field(u64 p, u64 lin, u64 con);

    u64 modulus() const { return p_; }
    Fp2Element one() const { return {1, 0}; }
    Fp2Element theta() const { return {0, 1}; }
    Fp2Element embed(u64 x) const { return {x % p_, 0}; }

    Fp2Element add(Fp2Element x, Fp2Element y) const;
    Fp2Element sub(Fp2Element x, Fp2Element y) const;
    Fp2Element mul(Fp2Element x, Fp2Element y) const;
    Fp2Element pow(Fp2Element x, u64 e) const;
    /// The other root of the defining quadratic replaces theta.
    Fp2Element conjugate(Fp2Element x) const;
    u64 norm(Fp2Element x) const;
    Fp2Element inverse(Fp2Element x) const;
    /// x^p, computed by exponentiation (tests compare it against conjugate()).
    Fp2Element frobenius(Fp2Element x) const { return pow(x, p_); }

    /// Multiplicative order of a nonzero element (divides p^2 - 1).
    u64 order(Fp2Element x) const;
    u64 group_order() const { return p_ * p_ - 1; }

private:
    u64 p_, lin_, con_;
    Factorization group_factors_;
};

}  // namespace ternrec
