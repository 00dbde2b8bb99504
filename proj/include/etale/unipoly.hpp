#pragma once

#include "etale/numeric.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace etale {

// Dense univariate polynomial over a ring R, lowest degree first.
// Invariant: the leading stored coefficient is nonzero (zero poly = empty vector).
template <class R>
struct UniPoly {
    std::vector<typename R::Elem> c;

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
};

template <class R>
UniPoly<R> poly_trim(const R& ring, UniPoly<R> f)
{
    while (!f.c.empty() && ring.is_zero(f.c.back())) f.c.pop_back();
    return f;
}

template <class R>
UniPoly<R> poly_zero(const R&)
{
    return {};
}

template <class R>
UniPoly<R> poly_const(const R& ring, const typename R::Elem& a)
{
    if (ring.is_zero(a)) return {};
    return {{a}};
}

template <class R>
UniPoly<R> poly_one(const R& ring)
{
    return poly_const(ring, ring.one());
}

// c0 + c1 X + ... from a coefficient list (trimmed).
template <class R>
UniPoly<R> poly_of(const R& ring, std::vector<typename R::Elem> cs)
{
    UniPoly<R> f{std::move(cs)};
    return poly_trim(ring, std::move(f));
}

template <class R>
UniPoly<R> poly_monomial(const R& ring, const typename R::Elem& a, int deg)
{
    if (ring.is_zero(a)) return {};
    UniPoly<R> f;
    f.c.assign(deg + 1, ring.zero());
    f.c[deg] = a;
    return f;
}

template <class R>
typename R::Elem poly_coeff(const R& ring, const UniPoly<R>& f, int i)
{
    if (i < 0 || i >= static_cast<int>(f.c.size())) return ring.zero();
    return f.c[i];
}

template <class R>
typename R::Elem poly_lead(const R& ring, const UniPoly<R>& f)
{
    return f.is_zero() ? ring.zero() : f.c.back();
}

template <class R>
bool poly_is_monic(const R& ring, const UniPoly<R>& f)
{
    return !f.is_zero() && ring.is_one(f.c.back());
}

template <class R>
UniPoly<R> poly_add(const R& ring, const UniPoly<R>& f, const UniPoly<R>& g)
{
    UniPoly<R> r;
    r.c.resize(std::max(f.c.size(), g.c.size()), ring.zero());
    for (size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = ring.add(poly_coeff(ring, f, static_cast<int>(i)), poly_coeff(ring, g, static_cast<int>(i)));
    return poly_trim(ring, std::move(r));
}

template <class R>
UniPoly<R> poly_neg(const R& ring, const UniPoly<R>& f)
{
    UniPoly<R> r = f;
    for (auto& x : r.c) x = ring.neg(x);
    return r;
}

template <class R>
UniPoly<R> poly_sub(const R& ring, const UniPoly<R>& f, const UniPoly<R>& g)
{
    return poly_add(ring, f, poly_neg(ring, g));
}

template <class R>
UniPoly<R> poly_scale(const R& ring, const typename R::Elem& a, const UniPoly<R>& f)
{
    if (ring.is_zero(a)) return {};
    UniPoly<R> r = f;
    for (auto& x : r.c) x = ring.mul(a, x);
    return poly_trim(ring, std::move(r));
}

template <class R>
UniPoly<R> poly_mul(const R& ring, const UniPoly<R>& f, const UniPoly<R>& g)
{
    if (f.is_zero() || g.is_zero()) return {};
    UniPoly<R> r;
    r.c.assign(f.c.size() + g.c.size() - 1, ring.zero());
    for (size_t i = 0; i < f.c.size(); ++i)
        for (size_t j = 0; j < g.c.size(); ++j)
            r.c[i + j] = ring.add(r.c[i + j], ring.mul(f.c[i], g.c[j]));
    return poly_trim(ring, std::move(r));
}

template <class R>
UniPoly<R> poly_pow(const R& ring, const UniPoly<R>& f, unsigned e)
{
    UniPoly<R> r = poly_one(ring), b = f;
    while (e) {
        if (e & 1) r = poly_mul(ring, r, b);
        b = poly_mul(ring, b, b);
        e >>= 1;
    }
    return r;
}

template <class R>
bool poly_eq(const R& ring, const UniPoly<R>& f, const UniPoly<R>& g)
{
    return poly_sub(ring, f, g).is_zero();
}

template <class R>
typename R::Elem poly_eval(const R& ring, const UniPoly<R>& f, const typename R::Elem& x)
{
    auto acc = ring.zero();
    for (size_t i = f.c.size(); i-- > 0;) acc = ring.add(ring.mul(acc, x), f.c[i]);
    return acc;
}

template <class R>
UniPoly<R> poly_derivative(const R& ring, const UniPoly<R>& f)
{
    UniPoly<R> r;
    for (size_t i = 1; i < f.c.size(); ++i)
        r.c.push_back(ring.mul(ring.from_int(static_cast<long long>(i)), f.c[i]));
    return poly_trim(ring, std::move(r));
}

// Substitute g for X in f (coefficients stay in R).
template <class R>
UniPoly<R> poly_compose(const R& ring, const UniPoly<R>& f, const UniPoly<R>& g)
{
    UniPoly<R> acc = poly_zero(ring);
    for (size_t i = f.c.size(); i-- > 0;)
        acc = poly_add(ring, poly_mul(ring, acc, g), poly_const(ring, f.c[i]));
    return acc;
}

// Division by a monic divisor: exact over any commutative ring.
template <class R>
struct PolyDivMod {
    UniPoly<R> quot, rem;
};

template <class R>
PolyDivMod<R> divmod_monic(const R& ring, const UniPoly<R>& f, const UniPoly<R>& q)
{
    check(poly_is_monic(ring, q), ErrKind::Unsupported, "divmod_monic: divisor is not monic");
    UniPoly<R> rem = f;
    UniPoly<R> quot;
    int dq = q.degree();
    if (rem.degree() >= dq) quot.c.assign(rem.degree() - dq + 1, ring.zero());
    while (rem.degree() >= dq) {
        int shift = rem.degree() - dq;
        auto lead = poly_lead(ring, rem);
        quot.c[shift] = ring.add(quot.c[shift], lead);
        rem = poly_sub(ring, rem, poly_mul(ring, poly_monomial(ring, lead, shift), q));
    }
    return {poly_trim(ring, std::move(quot)), std::move(rem)};
}

// Field-only division (general divisor).
template <class F>
PolyDivMod<F> poly_divmod(const F& field, const UniPoly<F>& f, const UniPoly<F>& g)
{
    check(!g.is_zero(), ErrKind::Internal, "poly_divmod: division by zero polynomial");
    auto lg = poly_lead(field, g);
    auto monic = poly_scale(field, field.inv(lg), g);
    auto dm = divmod_monic(field, f, monic);
    dm.quot = poly_scale(field, field.inv(lg), dm.quot);
    return dm;
}

template <class F>
UniPoly<F> poly_make_monic(const F& field, const UniPoly<F>& f)
{
    if (f.is_zero()) return f;
    return poly_scale(field, field.inv(poly_lead(field, f)), f);
}

// Monic gcd over a field by the Euclidean algorithm.
template <class F>
UniPoly<F> gcd_monic(const F& field, UniPoly<F> f, UniPoly<F> g)
{
    check(!(f.is_zero() && g.is_zero()), ErrKind::Unsupported, "gcd of two zero polynomials");
    while (!g.is_zero()) {
        auto r = poly_divmod(field, f, g).rem;
        f = std::move(g);
        g = std::move(r);
    }
    return poly_make_monic(field, f);
}

// Extended Euclid over a field: g = gcd (monic), with a*f0 + b*g0 = g.
template <class F>
struct PolyExtGcd {
    UniPoly<F> g, a, b;
};

template <class F>
PolyExtGcd<F> poly_ext_gcd(const F& field, const UniPoly<F>& f0, const UniPoly<F>& g0)
{
    UniPoly<F> r0 = f0, r1 = g0;
    UniPoly<F> s0 = poly_one(field), s1 = poly_zero(field);
    UniPoly<F> t0 = poly_zero(field), t1 = poly_one(field);
    while (!r1.is_zero()) {
        auto dm = poly_divmod(field, r0, r1);
        auto r2 = dm.rem;
        auto s2 = poly_sub(field, s0, poly_mul(field, dm.quot, s1));
        auto t2 = poly_sub(field, t0, poly_mul(field, dm.quot, t1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    check(!r0.is_zero(), ErrKind::Unsupported, "poly_ext_gcd of zero polynomials");
    auto u = field.inv(poly_lead(field, r0));
    auto ue = poly_const(field, u);
    return {poly_scale(field, u, r0), poly_mul(field, ue, s0), poly_mul(field, ue, t0)};
}

// Separability test: gcd(p, p') = 1, with Bezout cofactors when separable.
template <class F>
struct Separability {
    bool separable;
    UniPoly<F> bezout_a, bezout_b; // a*p + b*p' = 1 when separable
};

template <class F>
Separability<F> is_separable(const F& field, const UniPoly<F>& p)
{
    check(p.degree() >= 1, ErrKind::Unsupported, "is_separable: input must be nonconstant");
    auto dp = poly_derivative(field, p);
    if (dp.is_zero()) return {false, {}, {}};
    auto e = poly_ext_gcd(field, p, dp);
    if (e.g.degree() != 0) return {false, {}, {}};
    return {true, e.a, e.b};
}

// Exact division; fails if the remainder is nonzero.
template <class F>
UniPoly<F> poly_div_exact(const F& field, const UniPoly<F>& f, const UniPoly<F>& g)
{
    auto dm = poly_divmod(field, f, g);
    check(dm.rem.is_zero(), ErrKind::Internal, "poly_div_exact: division not exact");
    return dm.quot;
}

template <class R>
std::string poly_show(const R& ring, const UniPoly<R>& f, const std::string& var = "X")
{
    if (f.is_zero()) return "0";
    std::string out;
    for (size_t i = f.c.size(); i-- > 0;) {
        if (ring.is_zero(f.c[i])) continue;
        if (!out.empty()) out += " + ";
        std::string cs = ring.show(f.c[i]);
        if (i == 0) {
            out += cs;
        } else {
            if (cs != "1") out += cs + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace etale
