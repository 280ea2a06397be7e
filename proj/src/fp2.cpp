#include "ternrec/fp2.hpp"

#include "ternrec/errors.hpp"

namespace ternrec {

Fp2Field::Fp2Field(u64 p, u64 lin, u64 con) : p_(p), lin_(lin % p), con_(con % p) {
    if (p < 3 || p >= (u64{1} << 31)) throw InvalidInput("F_p^2 arithmetic needs an odd prime p < 2^31");
    group_factors_ = merge_factorizations(factor_u64(p - 1), factor_u64(p + 1));
}

Fp2Element Fp2Field::add(Fp2Element x, Fp2Element y) const {
    return {add_mod(x.a, y.a, p_), add_mod(x.b, y.b, p_)};
}

Fp2Element Fp2Field::sub(Fp2Element x, Fp2Element y) const {
    return {sub_mod(x.a, y.a, p_), sub_mod(x.b, y.b, p_)};
}

Fp2Element Fp2Field::mul(Fp2Element x, Fp2Element y) const {
    // theta^2 = -lin*theta - con
    const u64 bb = mul_mod(x.b, y.b, p_);
    const u64 re = sub_mod(mul_mod(x.a, y.a, p_), mul_mod(con_, bb, p_), p_);
    const u64 im = sub_mod(add_mod(mul_mod(x.a, y.b, p_), mul_mod(x.b, y.a, p_), p_), mul_mod(lin_, bb, p_), p_);
    return {re, im};
}

Fp2Element Fp2Field::pow(Fp2Element x, u64 e) const {
    Fp2Element r = one();
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

Fp2Element Fp2Field::conjugate(Fp2Element x) const {
    // conj(theta) = -lin - theta
    return {sub_mod(x.a, mul_mod(x.b, lin_, p_), p_), sub_mod(0, x.b, p_)};
}

u64 Fp2Field::norm(Fp2Element x) const {
    const Fp2Element n = mul(x, conjugate(x));
    return n.a;
}

Fp2Element Fp2Field::inverse(Fp2Element x) const {
    const u64 n = norm(x);
    if (n == 0) throw InvalidInput("zero has no inverse in F_p^2");
    const Fp2Element c = conjugate(x);
    const u64 ni = inv_mod(n, p_);
    return {mul_mod(c.a, ni, p_), mul_mod(c.b, ni, p_)};
}

u64 Fp2Field::order(Fp2Element x) const {
    if (x == Fp2Element{}) throw InvalidInput("zero has no multiplicative order");
    return order_from_multiple(group_order(), group_factors_, [&](u64 k) { return pow(x, k) == one(); });
}

}  // namespace ternrec
