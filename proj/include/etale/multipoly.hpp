#pragma once

#include "etale/rings.hpp"

#include <cctype>
#include <map>
#include <string>
#include <vector>

namespace etale {

using Mono = std::vector<unsigned>; // exponent per variable

// Sparse multivariate polynomial; no zero coefficients stored.
template <class R>
struct MultiPoly {
    int nvars = 0;
    std::map<Mono, typename R::Elem> terms;

    bool is_zero() const { return terms.empty(); }
};

template <class R>
MultiPoly<R> mp_zero(const R&, int nvars)
{
    return {nvars, {}};
}

template <class R>
MultiPoly<R> mp_const(const R& ring, int nvars, const typename R::Elem& c)
{
    MultiPoly<R> p{nvars, {}};
    if (!ring.is_zero(c)) p.terms[Mono(nvars, 0)] = c;
    return p;
}

template <class R>
MultiPoly<R> mp_one(const R& ring, int nvars)
{
    return mp_const(ring, nvars, ring.one());
}

template <class R>
MultiPoly<R> mp_var(const R& ring, int nvars, int i, unsigned e = 1)
{
    MultiPoly<R> p{nvars, {}};
    Mono m(nvars, 0);
    m[i] = e;
    p.terms[m] = ring.one();
    return p;
}

template <class R>
void mp_add_term(const R& ring, MultiPoly<R>& p, const Mono& m, const typename R::Elem& c)
{
    auto it = p.terms.find(m);
    if (it == p.terms.end()) {
        if (!ring.is_zero(c)) p.terms[m] = c;
        return;
    }
    it->second = ring.add(it->second, c);
    if (ring.is_zero(it->second)) p.terms.erase(it);
}

template <class R>
MultiPoly<R> mp_add(const R& ring, const MultiPoly<R>& a, const MultiPoly<R>& b)
{
    MultiPoly<R> r = a;
    for (auto& [m, c] : b.terms) mp_add_term(ring, r, m, c);
    return r;
}

template <class R>
MultiPoly<R> mp_neg(const R& ring, const MultiPoly<R>& a)
{
    MultiPoly<R> r = a;
    for (auto& [m, c] : r.terms) c = ring.neg(c);
    return r;
}

template <class R>
MultiPoly<R> mp_sub(const R& ring, const MultiPoly<R>& a, const MultiPoly<R>& b)
{
    return mp_add(ring, a, mp_neg(ring, b));
}

template <class R>
MultiPoly<R> mp_scale(const R& ring, const typename R::Elem& c, const MultiPoly<R>& a)
{
    MultiPoly<R> r{a.nvars, {}};
    if (ring.is_zero(c)) return r;
    for (auto& [m, x] : a.terms) {
        auto y = ring.mul(c, x);
        if (!ring.is_zero(y)) r.terms[m] = y;
    }
    return r;
}

template <class R>
MultiPoly<R> mp_mul(const R& ring, const MultiPoly<R>& a, const MultiPoly<R>& b)
{
    MultiPoly<R> r{a.nvars, {}};
    for (auto& [ma, ca] : a.terms)
        for (auto& [mb, cb] : b.terms) {
            Mono m(a.nvars);
            for (int i = 0; i < a.nvars; ++i) m[i] = ma[i] + mb[i];
            mp_add_term(ring, r, m, ring.mul(ca, cb));
        }
    return r;
}

template <class R>
MultiPoly<R> mp_pow(const R& ring, const MultiPoly<R>& a, unsigned e)
{
    auto r = mp_one(ring, a.nvars);
    auto b = a;
    while (e) {
        if (e & 1) r = mp_mul(ring, r, b);
        b = mp_mul(ring, b, b);
        e >>= 1;
    }
    return r;
}

template <class R>
bool mp_eq(const R& ring, const MultiPoly<R>& a, const MultiPoly<R>& b)
{
    return mp_sub(ring, a, b).is_zero();
}

template <class R>
MultiPoly<R> mp_derivative(const R& ring, const MultiPoly<R>& a, int var)
{
    MultiPoly<R> r{a.nvars, {}};
    for (auto& [m, c] : a.terms) {
        if (m[var] == 0) continue;
        Mono d = m;
        d[var] -= 1;
        mp_add_term(ring, r, d, ring.mul(ring.from_int(m[var]), c));
    }
    return r;
}

template <class R>
unsigned mp_degree_in(const MultiPoly<R>& a, int var)
{
    unsigned d = 0;
    for (auto& [m, c] : a.terms) d = std::max(d, m[var]);
    return d;
}

template <class R>
unsigned mp_total_degree(const MultiPoly<R>& a)
{
    unsigned d = 0;
    for (auto& [m, c] : a.terms) {
        unsigned t = 0;
        for (auto e : m) t += e;
        d = std::max(d, t);
    }
    return d;
}

template <class R>
bool mp_uses_var(const MultiPoly<R>& a, int var)
{
    for (auto& [m, c] : a.terms)
        if (m[var] > 0) return true;
    return false;
}

// Generic evaluation into any domain with zero/add/mul/scalar.
template <class R, class Dom>
typename Dom::Value mp_eval(const R&, const Dom& dom, const MultiPoly<R>& a,
                            const std::vector<typename Dom::Value>& xs)
{
    auto acc = dom.zero();
    for (auto& [m, c] : a.terms) {
        auto term = dom.scalar(c);
        for (int i = 0; i < a.nvars; ++i)
            for (unsigned e = 0; e < m[i]; ++e) term = dom.mul(term, xs[i]);
        acc = dom.add(acc, term);
    }
    return acc;
}

template <class R>
struct RingEvalDomain {
    const R& ring;
    using Value = typename R::Elem;
    Value zero() const { return ring.zero(); }
    Value add(const Value& a, const Value& b) const { return ring.add(a, b); }
    Value mul(const Value& a, const Value& b) const { return ring.mul(a, b); }
    Value scalar(const typename R::Elem& c) const { return c; }
};

template <class R>
struct MpEvalDomain { // evaluation producing MultiPoly (substitution)
    const R& ring;
    int nvars;
    using Value = MultiPoly<R>;
    Value zero() const { return mp_zero(ring, nvars); }
    Value add(const Value& a, const Value& b) const { return mp_add(ring, a, b); }
    Value mul(const Value& a, const Value& b) const { return mp_mul(ring, a, b); }
    Value scalar(const typename R::Elem& c) const { return mp_const(ring, nvars, c); }
};

template <class R>
typename R::Elem mp_eval_ring(const R& ring, const MultiPoly<R>& a, const Vec<R>& xs)
{
    return mp_eval(ring, RingEvalDomain<R>{ring}, a, xs);
}

template <class R>
MultiPoly<R> mp_subst(const R& ring, const MultiPoly<R>& a, const std::vector<MultiPoly<R>>& xs)
{
    check(!xs.empty() || a.nvars == 0, ErrKind::Internal, "mp_subst: no substitution images");
    int nv = xs.empty() ? 0 : xs[0].nvars;
    return mp_eval(ring, MpEvalDomain<R>{ring, nv}, a, xs);
}

// Ring adapter so matrices of multivariate polynomials work with det_cofactor.
template <class R>
struct MpRingOf {
    R base;
    int nvars;
    using Elem = MultiPoly<R>;
    Elem zero() const { return mp_zero(base, nvars); }
    Elem one() const { return mp_one(base, nvars); }
    Elem from_int(long long v) const { return mp_const(base, nvars, base.from_int(v)); }
    Elem add(const Elem& a, const Elem& b) const { return mp_add(base, a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return mp_sub(base, a, b); }
    Elem mul(const Elem& a, const Elem& b) const { return mp_mul(base, a, b); }
    Elem neg(const Elem& a) const { return mp_neg(base, a); }
    bool eq(const Elem& a, const Elem& b) const { return mp_eq(base, a, b); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool is_one(const Elem& a) const { return mp_eq(base, a, one()); }
};

template <class R>
MultiPoly<R> uni_to_multi(const R& ring, const UniPoly<R>& f, int nvars, int var)
{
    MultiPoly<R> p{nvars, {}};
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (ring.is_zero(f.c[i])) continue;
        Mono m(nvars, 0);
        m[var] = static_cast<unsigned>(i);
        p.terms[m] = f.c[i];
    }
    return p;
}

// ---------------------------------------------------------------------------
// Textual polynomial syntax: +, -, *, ^, parentheses, integer or rational
// literals, identifiers for variables (and base-ring constants such as t).
// ---------------------------------------------------------------------------
namespace detail {

template <class R>
struct MpParser {
    const R& ring;
    const std::vector<std::string>& vars;
    const std::string& src;
    size_t pos = 0;

    void skip()
    {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool peek(char c)
    {
        skip();
        return pos < src.size() && src[pos] == c;
    }
    bool take(char c)
    {
        if (!peek(c)) return false;
        ++pos;
        return true;
    }

    MultiPoly<R> parse()
    {
        auto r = expr();
        skip();
        if (pos != src.size()) fail_parse("unexpected trailing input in polynomial: " + src);
        return r;
    }

    MultiPoly<R> expr()
    {
        bool negate = false;
        skip();
        if (take('-')) negate = true;
        else take('+');
        auto acc = term();
        if (negate) acc = mp_neg(ring, acc);
        while (true) {
            skip();
            if (take('+')) acc = mp_add(ring, acc, term());
            else if (take('-')) acc = mp_sub(ring, acc, term());
            else break;
        }
        return acc;
    }

    MultiPoly<R> term()
    {
        auto acc = factor();
        while (true) {
            skip();
            if (take('*')) acc = mp_mul(ring, acc, factor());
            else break;
        }
        return acc;
    }

    MultiPoly<R> factor()
    {
        auto base = atom();
        skip();
        if (take('^')) {
            skip();
            size_t start = pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            if (start == pos) fail_parse("expected exponent in polynomial: " + src);
            unsigned e = static_cast<unsigned>(std::stoul(src.substr(start, pos - start)));
            return mp_pow(ring, base, e);
        }
        return base;
    }

    MultiPoly<R> atom()
    {
        skip();
        if (take('(')) {
            auto r = expr();
            if (!take(')')) fail_parse("missing ')' in polynomial: " + src);
            return r;
        }
        if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
            size_t start = pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            BigInt n(src.substr(start, pos - start));
            if (take('/')) {
                skip();
                size_t ds = pos;
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
                if (ds == pos) fail_parse("expected denominator in polynomial: " + src);
                BigInt d(src.substr(ds, pos - ds));
                return mp_const(ring, static_cast<int>(vars.size()), ring.from_rat(Rat(n) / Rat(d)));
            }
            return mp_const(ring, static_cast<int>(vars.size()), ring.from_bigint(n));
        }
        if (pos < src.size() &&
            (std::isalpha(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
            size_t start = pos;
            while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                ++pos;
            std::string name = src.substr(start, pos - start);
            for (size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == name) return mp_var(ring, static_cast<int>(vars.size()), static_cast<int>(i));
            if (auto c = ring.parse_const(name))
                return mp_const(ring, static_cast<int>(vars.size()), *c);
            fail_parse("unknown identifier '" + name + "' in polynomial: " + src);
        }
        fail_parse("cannot parse polynomial at position " + std::to_string(pos) + ": " + src);
    }
};

} // namespace detail

template <class R>
MultiPoly<R> parse_poly(const R& ring, const std::vector<std::string>& vars, const std::string& s)
{
    detail::MpParser<R> p{ring, vars, s};
    return p.parse();
}

template <class R>
std::string mp_show(const R& ring, const MultiPoly<R>& a, const std::vector<std::string>& vars)
{
    if (a.is_zero()) return "0";
    std::string out;
    for (auto& [m, c] : a.terms) {
        std::string t;
        bool allzero = true;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            allzero = false;
            if (!t.empty()) t += "*";
            t += vars[i];
            if (m[i] > 1) t += "^" + std::to_string(m[i]);
        }
        std::string cs = ring.show(c);
        std::string piece;
        if (allzero) piece = cs;
        else if (cs == "1") piece = t;
        else piece = cs.find_first_of("+-", 1) != std::string::npos && cs[0] != '-'
                         ? "(" + cs + ")*" + t
                         : cs + "*" + t;
        if (out.empty()) out = piece;
        else out += " + " + piece;
    }
    return out;
}

} // namespace etale
