#pragma once

#include "etale/rings.hpp"

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

namespace etale {

template <class F>
struct FactorList {
    typename F::Elem unit; // input = unit * prod factors^mult, factors monic irreducible
    std::vector<std::pair<UniPoly<F>, unsigned>> factors;
};

namespace detail {

template <class F>
void factor_push(const F& field, FactorList<F>& out, const UniPoly<F>& g, unsigned mult)
{
    for (auto& [f, m] : out.factors)
        if (poly_eq(field, f, g)) {
            m += mult;
            return;
        }
    out.factors.push_back({g, mult});
}

template <class F>
void factor_sort(const F& field, FactorList<F>& out)
{
    auto key = [&](const UniPoly<F>& f) {
        std::string s = std::to_string(f.degree()) + "|";
        for (size_t i = f.c.size(); i-- > 0;) s += field.encode(f.c[i]) + ",";
        return s;
    };
    std::stable_sort(out.factors.begin(), out.factors.end(),
                     [&](const auto& a, const auto& b) { return key(a.first) < key(b.first); });
}

template <class F>
void factor_verify(const F& field, const FactorList<F>& out, const UniPoly<F>& input)
{
    auto prod = poly_const(field, out.unit);
    for (auto& [f, m] : out.factors) prod = poly_mul(field, prod, poly_pow(field, f, m));
    check(poly_eq(field, prod, input), ErrKind::Internal, "factorization does not re-multiply to input");
}

} // namespace detail

template <class F>
UniPoly<F> poly_powmod(const F& field, UniPoly<F> base, BigInt e, const UniPoly<F>& mod)
{
    auto r = poly_one(field);
    base = poly_divmod(field, base, mod).rem;
    while (e > 0) {
        if ((e & 1) != 0) r = poly_divmod(field, poly_mul(field, r, base), mod).rem;
        base = poly_divmod(field, poly_mul(field, base, base), mod).rem;
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// F_p factorization: squarefree decomposition, distinct-degree splitting,
// Cantor-Zassenhaus equal-degree splitting (fixed-seed randomness).
// ---------------------------------------------------------------------------
namespace detail {

inline UniPoly<Fp> pth_root(const Fp& fp, const UniPoly<Fp>& f)
{
    // Over F_p a derivative-zero polynomial is w(X^p) = w(X)^p.
    size_t p = static_cast<size_t>(fp.p.convert_to<long long>());
    std::vector<Fp::Elem> cs;
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (i % p == 0) {
            cs.push_back(f.c[i]);
        } else {
            check(fp.is_zero(f.c[i]), ErrKind::Internal, "pth_root: polynomial is not a p-th power");
        }
    }
    return poly_of(fp, std::move(cs));
}

inline void squarefree_fp(const Fp& fp, const UniPoly<Fp>& f,
                          std::vector<std::pair<UniPoly<Fp>, unsigned>>& out, unsigned mult_scale)
{
    auto df = poly_derivative(fp, f);
    if (df.is_zero()) {
        squarefree_fp(fp, pth_root(fp, f), out, mult_scale * static_cast<unsigned>(fp.p.convert_to<long long>()));
        return;
    }
    auto c = gcd_monic(fp, f, df);
    auto w = poly_div_exact(fp, f, c);
    unsigned i = 1;
    while (w.degree() > 0) {
        auto y = gcd_monic(fp, w, c);
        auto z = poly_div_exact(fp, w, y);
        if (z.degree() > 0) out.push_back({z, i * mult_scale});
        w = y;
        c = poly_div_exact(fp, c, y);
        ++i;
    }
    if (c.degree() > 0) squarefree_fp(fp, pth_root(fp, c), out, mult_scale * static_cast<unsigned>(fp.p.convert_to<long long>()));
}

inline void equal_degree_split(const Fp& fp, const UniPoly<Fp>& f, int d,
                               std::vector<UniPoly<Fp>>& out, std::mt19937_64& rng)
{
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    const BigInt pd = pow_int(fp.p, static_cast<unsigned>(d));
    while (true) {
        std::vector<Fp::Elem> cs;
        for (int i = 0; i < f.degree(); ++i)
            cs.push_back(fp.from_bigint(BigInt(rng() % 1000003)));
        auto r = poly_of(fp, std::move(cs));
        if (r.degree() < 1) continue;
        UniPoly<Fp> g;
        if (fp.p == 2) {
            auto s = poly_zero(fp);
            auto acc = r;
            for (int i = 0; i < d; ++i) {
                s = poly_add(fp, s, acc);
                acc = poly_divmod(fp, poly_mul(fp, acc, acc), f).rem;
            }
            g = gcd_monic(fp, s, f);
        } else {
            auto s = poly_powmod(fp, r, (pd - 1) / 2, f);
            g = gcd_monic(fp, poly_sub(fp, s, poly_one(fp)), f);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(fp, g, d, out, rng);
            equal_degree_split(fp, poly_div_exact(fp, f, g), d, out, rng);
            return;
        }
    }
}

} // namespace detail

inline FactorList<Fp> field_factor(const Fp& fp, const UniPoly<Fp>& input)
{
    check(!input.is_zero(), ErrKind::Unsupported, "factor: zero polynomial");
    FactorList<Fp> out;
    out.unit = poly_lead(fp, input);
    if (input.degree() == 0) return out;
    auto f = poly_make_monic(fp, input);

    std::vector<std::pair<UniPoly<Fp>, unsigned>> sqf;
    detail::squarefree_fp(fp, f, sqf, 1);

    std::mt19937_64 rng(0x5eed5eedULL); // deterministic output
    for (auto& [part, mult] : sqf) {
        // distinct-degree splitting
        auto rest = part;
        auto h = poly_monomial(fp, fp.one(), 1); // X^(p^d) mod rest, incrementally
        for (int d = 1; rest.degree() > 0 && 2 * d <= rest.degree(); ++d) {
            h = poly_powmod(fp, h, fp.p, rest);
            auto g = gcd_monic(fp, poly_sub(fp, h, poly_monomial(fp, fp.one(), 1)), rest);
            if (g.degree() > 0) {
                std::vector<UniPoly<Fp>> irr;
                detail::equal_degree_split(fp, g, d, irr, rng);
                for (auto& q : irr) detail::factor_push(fp, out, q, mult);
                rest = poly_div_exact(fp, rest, g);
                h = poly_divmod(fp, h, rest).rem;
            }
        }
        if (rest.degree() > 0) detail::factor_push(fp, out, rest, mult);
    }
    detail::factor_sort(fp, out);
    detail::factor_verify(fp, out, input);
    return out;
}

// ---------------------------------------------------------------------------
// Q factorization: rational roots plus Kronecker interpolation, for inputs
// within a small degree bound (the pipeline's residual polynomials are small).
// ---------------------------------------------------------------------------
inline constexpr int kQFactorDegreeBound = 6;
inline constexpr long kKroneckerBudget = 400000;

namespace detail {

inline std::vector<BigInt> divisors_of(const BigInt& n0)
{
    BigInt n = abs_int(n0);
    std::vector<std::pair<BigInt, unsigned>> pf;
    for (BigInt d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            unsigned e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            pf.push_back({d, e});
        }
    }
    if (n > 1) pf.push_back({n, 1});
    std::vector<BigInt> divs{1};
    for (auto& [q, e] : pf) {
        size_t sz = divs.size();
        BigInt qe = 1;
        for (unsigned i = 1; i <= e; ++i) {
            qe *= q;
            for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * qe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

inline std::optional<UniPoly<QRing>> kronecker_find_factor(const QRing& q, const UniPoly<QRing>& f)
{
    const int n = f.degree();
    for (int k = 2; 2 * k <= n; ++k) {
        // evaluation points 0, 1, -1, 2, -2, ...
        std::vector<Rat> xs;
        for (int i = 0; i <= k; ++i) {
            long long v = (i % 2 == 1) ? (i + 1) / 2 : -(i / 2);
            xs.push_back(Rat(v));
        }
        std::vector<std::vector<BigInt>> cand(k + 1);
        long combos = 1;
        bool ok = true;
        for (int i = 0; i <= k; ++i) {
            Rat v = poly_eval(q, f, xs[i]);
            check(den(v) == 1, ErrKind::Internal, "kronecker: non-integral value of primitive polynomial");
            if (num(v) == 0) { ok = false; break; } // rational root missed upstream
            auto divs = divisors_of(num(v));
            for (auto& d : divs) {
                cand[i].push_back(d);
                if (i > 0) cand[i].push_back(-d); // fix sign of the first point
            }
            combos *= static_cast<long>(cand[i].size());
            if (combos > kKroneckerBudget)
                fail_unsupported("kronecker factorization budget exceeded");
        }
        if (!ok) continue;
        std::vector<size_t> idx(k + 1, 0);
        while (true) {
            // Lagrange interpolation of the candidate values
            UniPoly<QRing> g = poly_zero(q);
            for (int i = 0; i <= k; ++i) {
                auto li = poly_one(q);
                Rat denom = 1;
                for (int j = 0; j <= k; ++j) {
                    if (j == i) continue;
                    li = poly_mul(q, li, poly_of(q, {Rat(-xs[j]), Rat(1)}));
                    denom *= xs[i] - xs[j];
                }
                g = poly_add(q, g, poly_scale(q, Rat(cand[i][idx[i]]) / denom, li));
            }
            if (g.degree() == k) {
                auto dm = poly_divmod(q, f, g);
                if (dm.rem.is_zero()) return poly_make_monic(q, g);
            }
            int pos = 0;
            while (pos <= k && ++idx[pos] == cand[pos].size()) {
                idx[pos] = 0;
                ++pos;
            }
            if (pos > k) break;
        }
    }
    return std::nullopt;
}

inline void factor_q_squarefree(const QRing& q, UniPoly<QRing> f, unsigned mult, FactorList<QRing>& out)
{
    // strip roots at 0
    while (!f.is_zero() && q.is_zero(f.c[0])) {
        detail::factor_push(q, out, poly_monomial(q, q.one(), 1), mult);
        f.c.erase(f.c.begin());
    }
    // rational roots: make primitive integer polynomial first
    bool progress = true;
    while (progress && f.degree() >= 1) {
        progress = false;
        BigInt l = 1;
        for (auto& c : f.c) l = l / gcd_int(l, den(c)) * den(c);
        std::vector<BigInt> ic;
        for (auto& c : f.c) ic.push_back(num(c) * (l / den(c)));
        BigInt g = 0;
        for (auto& c : ic) g = gcd_int(g, c);
        for (auto& c : ic) c /= g;
        auto u_divs = divisors_of(ic.front());
        auto v_divs = divisors_of(ic.back());
        for (auto& u : u_divs) {
            for (auto& v : v_divs) {
                if (gcd_int(u, v) != 1) continue;
                for (int sign = 1; sign >= -1; sign -= 2) {
                    Rat r = Rat(sign * u) / Rat(v);
                    if (poly_eval(q, f, r) == 0) {
                        auto lin = poly_of(q, {-r, Rat(1)});
                        detail::factor_push(q, out, lin, mult);
                        f = poly_div_exact(q, f, lin);
                        progress = true;
                    }
                    if (progress) break;
                }
                if (progress) break;
            }
            if (progress) break;
        }
    }
    if (f.degree() <= 0) return;
    if (f.degree() <= 3) { // no rational root and degree <= 3: irreducible
        detail::factor_push(q, out, poly_make_monic(q, f), mult);
        return;
    }
    // primitive integer form for Kronecker
    BigInt l = 1;
    for (auto& c : f.c) l = l / gcd_int(l, den(c)) * den(c);
    UniPoly<QRing> fi;
    for (auto& c : f.c) fi.c.push_back(Rat(num(c) * (l / den(c))));
    BigInt g = 0;
    for (auto& c : fi.c) g = gcd_int(g, num(c));
    for (auto& c : fi.c) c /= Rat(g);
    auto factor = kronecker_find_factor(q, fi);
    if (!factor) {
        detail::factor_push(q, out, poly_make_monic(q, f), mult);
        return;
    }
    factor_q_squarefree(q, *factor, mult, out);
    factor_q_squarefree(q, poly_div_exact(q, f, *factor), mult, out);
}

} // namespace detail

inline FactorList<QRing> field_factor(const QRing& q, const UniPoly<QRing>& input)
{
    check(!input.is_zero(), ErrKind::Unsupported, "factor: zero polynomial");
    check(input.degree() <= kQFactorDegreeBound,
          ErrKind::Unsupported, "factor over Q: degree bound exceeded");
    FactorList<QRing> out;
    out.unit = poly_lead(q, input);
    if (input.degree() == 0) return out;
    auto f = poly_make_monic(q, input);

    // squarefree decomposition (characteristic zero)
    auto df = poly_derivative(q, f);
    auto c = gcd_monic(q, f, df);
    auto w = poly_div_exact(q, f, c);
    unsigned i = 1;
    while (w.degree() > 0) {
        auto y = gcd_monic(q, w, c);
        auto z = poly_div_exact(q, w, y);
        if (z.degree() > 0) detail::factor_q_squarefree(q, z, i, out);
        w = y;
        c = poly_div_exact(q, c, y);
        ++i;
    }
    detail::factor_sort(q, out);
    detail::factor_verify(q, out, input);
    return out;
}

} // namespace etale
