#pragma once

#include "etale/numeric.hpp"
#include "etale/unipoly.hpp"

#include <optional>
#include <sstream>
#include <string>

namespace etale {

// Solver dispatch tags (see linalg.hpp).
struct FieldSolve {};         // Gaussian elimination
struct LocalizedEuclSolve {}; // clear denominators, Smith over the PID, re-localize
struct GlobalEuclSolve {};    // Smith over the PID, exact solutions
struct LocalGaussSolve {};    // pivot on units of a local ring

// ---------------------------------------------------------------------------
// Prime field F_p. Elements are BigInt in [0, p).
// ---------------------------------------------------------------------------
struct Fp {
    BigInt p;

    using Elem = BigInt;
    using Residue = Fp;
    using solver_tag = FieldSolve;
    static constexpr bool is_field = true;
    static constexpr const char* kind = "Fp";

    explicit Fp(BigInt prime = 2) : p(std::move(prime))
    {
        check(is_prime_small(p), ErrKind::Parse, "Fp: modulus must be prime");
    }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long v) const { return mod_norm(BigInt(v), p); }
    Elem from_bigint(const BigInt& v) const { return mod_norm(v, p); }
    Elem from_rat(const Rat& r) const { return mul(from_bigint(num(r)), inv(from_bigint(den(r)))); }

    Elem add(const Elem& a, const Elem& b) const { return mod_norm(a + b, p); }
    Elem sub(const Elem& a, const Elem& b) const { return mod_norm(a - b, p); }
    Elem mul(const Elem& a, const Elem& b) const { return mod_norm(a * b, p); }
    Elem neg(const Elem& a) const { return mod_norm(-a, p); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool is_one(const Elem& a) const { return a == 1; }

    std::optional<Elem> try_inv(const Elem& a) const
    {
        if (a == 0) return std::nullopt;
        return mod_inverse(a, p);
    }
    Elem inv(const Elem& a) const { return mod_inverse(a, p); }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    Fp residue_field() const { return *this; }
    Elem residue(const Elem& a) const { return a; }
    Elem lift(const Elem& a) const { return a; }
    bool in_maximal(const Elem& a) const { return a == 0; }

    std::optional<Elem> parse_const(const std::string&) const { return std::nullopt; }
    std::string show(const Elem& a) const { return a.str(); }
    std::string encode(const Elem& a) const { return a.str(); }
    Elem decode(const std::string& s) const { return from_bigint(BigInt(s)); }
    std::string describe() const { return "F_" + p.str(); }
};

// ---------------------------------------------------------------------------
// The rational field Q.
// ---------------------------------------------------------------------------
struct QRing {
    using Elem = Rat;
    using Residue = QRing;
    using solver_tag = FieldSolve;
    static constexpr bool is_field = true;
    static constexpr const char* kind = "Q";

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long v) const { return Rat(v); }
    Elem from_bigint(const BigInt& v) const { return Rat(v); }
    Elem from_rat(const Rat& r) const { return r; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool is_one(const Elem& a) const { return a == 1; }

    std::optional<Elem> try_inv(const Elem& a) const
    {
        if (a == 0) return std::nullopt;
        return Elem(1) / a;
    }
    Elem inv(const Elem& a) const
    {
        check(a != 0, ErrKind::Internal, "division by zero in Q");
        return Elem(1) / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    QRing residue_field() const { return {}; }
    Elem residue(const Elem& a) const { return a; }
    Elem lift(const Elem& a) const { return a; }
    bool in_maximal(const Elem& a) const { return a == 0; }

    std::optional<Elem> parse_const(const std::string&) const { return std::nullopt; }
    std::string show(const Elem& a) const
    {
        std::ostringstream os;
        os << a;
        return os.str();
    }
    std::string encode(const Elem& a) const { return show(a); }
    Elem decode(const std::string& s) const { return Rat(s); }
    std::string describe() const { return "Q"; }
};

// ---------------------------------------------------------------------------
// Z localized at a prime p: reduced fractions with denominator coprime to p.
// ---------------------------------------------------------------------------
struct ZLocal {
    BigInt p;

    using Elem = Rat;
    using Residue = Fp;
    using solver_tag = LocalizedEuclSolve;
    static constexpr bool is_field = false;
    static constexpr const char* kind = "Zloc";

    explicit ZLocal(BigInt prime = 2) : p(std::move(prime))
    {
        check(is_prime_small(p), ErrKind::Parse, "Z_(p): modulus must be prime");
    }

    bool valid(const Elem& a) const { return den(a) % p != 0; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long v) const { return Rat(v); }
    Elem from_bigint(const BigInt& v) const { return Rat(v); }
    Elem from_rat(const Rat& r) const
    {
        check(den(r) % p != 0, ErrKind::Parse, "denominator not invertible in Z_(p)");
        return r;
    }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool is_one(const Elem& a) const { return a == 1; }

    std::optional<Elem> try_inv(const Elem& a) const
    {
        if (a == 0 || num(a) % p == 0) return std::nullopt;
        return Elem(1) / a;
    }
    Elem inv(const Elem& a) const
    {
        auto r = try_inv(a);
        check(r.has_value(), ErrKind::Internal, "element of Z_(p) not invertible");
        return *r;
    }

    Fp residue_field() const { return Fp(p); }
    Fp::Elem residue(const Elem& a) const
    {
        BigInt n = mod_norm(num(a), p);
        BigInt d = mod_norm(den(a), p);
        return mod_norm(n * mod_inverse(d, p), p);
    }
    // Section: the integer representative in [0, p).
    Elem lift(const Fp::Elem& a) const { return Rat(mod_norm(a, p)); }
    bool in_maximal(const Elem& a) const { return a == 0 || num(a) % p == 0; }

    std::optional<Elem> parse_const(const std::string&) const { return std::nullopt; }
    std::string show(const Elem& a) const
    {
        std::ostringstream os;
        os << a;
        return os.str();
    }
    std::string encode(const Elem& a) const { return show(a); }
    Elem decode(const std::string& s) const { return from_rat(Rat(s)); }
    std::string describe() const { return "Z_(" + p.str() + ")"; }
};

// ---------------------------------------------------------------------------
// Fractions of F_p[t], shared element type of the k[t]-flavoured rings.
// Normal form: denominator monic, gcd(num, den) = 1; zero is 0/1.
// ---------------------------------------------------------------------------
struct FpFrac {
    UniPoly<Fp> n, d;
};

inline FpFrac fpfrac_normalize(const Fp& fp, UniPoly<Fp> n, UniPoly<Fp> d)
{
    check(!d.is_zero(), ErrKind::Internal, "zero denominator in F_p(t)");
    if (n.is_zero()) return {poly_zero(fp), poly_one(fp)};
    auto g = gcd_monic(fp, n, d);
    if (g.degree() > 0) {
        n = poly_div_exact(fp, n, g);
        d = poly_div_exact(fp, d, g);
    }
    auto lead = poly_lead(fp, d);
    if (!fp.is_one(lead)) {
        auto u = fp.inv(lead);
        n = poly_scale(fp, u, n);
        d = poly_scale(fp, u, d);
    }
    return {std::move(n), std::move(d)};
}

namespace detail {

// Polynomial-in-t arithmetic shared by KtLocal / KtGlobal / KtInv.
struct KtFracOps {
    Fp fp;

    using Elem = FpFrac;

    Elem make(UniPoly<Fp> n, UniPoly<Fp> d) const { return fpfrac_normalize(fp, std::move(n), std::move(d)); }
    Elem zero() const { return {poly_zero(fp), poly_one(fp)}; }
    Elem one() const { return {poly_one(fp), poly_one(fp)}; }
    Elem from_int(long long v) const { return {poly_const(fp, fp.from_int(v)), poly_one(fp)}; }
    Elem from_bigint(const BigInt& v) const { return {poly_const(fp, fp.from_bigint(v)), poly_one(fp)}; }
    Elem from_rat(const Rat& r) const
    {
        auto x = fp.from_rat(r);
        return {poly_const(fp, x), poly_one(fp)};
    }
    Elem t() const { return {poly_monomial(fp, fp.one(), 1), poly_one(fp)}; }

    Elem add(const Elem& a, const Elem& b) const
    {
        auto n = poly_add(fp, poly_mul(fp, a.n, b.d), poly_mul(fp, b.n, a.d));
        return make(std::move(n), poly_mul(fp, a.d, b.d));
    }
    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
    Elem mul(const Elem& a, const Elem& b) const
    {
        return make(poly_mul(fp, a.n, b.n), poly_mul(fp, a.d, b.d));
    }
    Elem neg(const Elem& a) const { return {poly_neg(fp, a.n), a.d}; }
    bool is_zero(const Elem& a) const { return a.n.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const
    {
        return poly_eq(fp, poly_mul(fp, a.n, b.d), poly_mul(fp, b.n, a.d));
    }
    bool is_one(const Elem& a) const { return poly_is_monic(fp, a.n) && a.n.degree() == 0 && a.d.degree() == 0; }

    std::string show(const Elem& a) const
    {
        if (a.d.degree() == 0) return poly_show(fp, a.n, "t");
        return "(" + poly_show(fp, a.n, "t") + ")/(" + poly_show(fp, a.d, "t") + ")";
    }

    // Canonical machine form: coefficient lists "[c0,c1,...]" or "[..]/[..]".
    std::string encode_poly(const UniPoly<Fp>& f) const
    {
        std::string s = "[";
        for (size_t i = 0; i < f.c.size(); ++i) {
            if (i) s += ",";
            s += f.c[i].str();
        }
        return s + "]";
    }
    UniPoly<Fp> decode_poly(const std::string& s) const
    {
        check(s.size() >= 2 && s.front() == '[' && s.back() == ']', ErrKind::Parse,
              "bad k[t] coefficient list: " + s);
        std::vector<Fp::Elem> cs;
        std::string body = s.substr(1, s.size() - 2);
        if (!body.empty()) {
            std::istringstream is(body);
            std::string tok;
            while (std::getline(is, tok, ',')) cs.push_back(fp.from_bigint(BigInt(tok)));
        }
        return poly_of(fp, std::move(cs));
    }
    std::string encode(const Elem& a) const
    {
        if (a.d.degree() == 0) return encode_poly(a.n);
        return encode_poly(a.n) + "/" + encode_poly(a.d);
    }
    Elem decode(const std::string& s) const
    {
        auto slash = s.find("]/[");
        if (slash == std::string::npos) return make(decode_poly(s), poly_one(fp));
        return make(decode_poly(s.substr(0, slash + 1)), decode_poly(s.substr(slash + 2)));
    }
};

} // namespace detail

// ---------------------------------------------------------------------------
// k[t] localized at (t), k = F_p: fractions u/v with v(0) != 0.
// ---------------------------------------------------------------------------
struct KtLocal : detail::KtFracOps {
    using Elem = FpFrac;
    using Residue = Fp;
    using solver_tag = LocalizedEuclSolve;
    static constexpr bool is_field = false;
    static constexpr const char* kind = "ktloc";

    explicit KtLocal(BigInt prime = 2) : detail::KtFracOps{Fp(std::move(prime))} {}

    bool valid(const Elem& a) const { return !fp.is_zero(poly_eval(fp, a.d, fp.zero())); }

    std::optional<Elem> try_inv(const Elem& a) const
    {
        if (a.n.is_zero() || fp.is_zero(poly_eval(fp, a.n, fp.zero()))) return std::nullopt;
        return make(a.d, a.n);
    }
    Elem inv(const Elem& a) const
    {
        auto r = try_inv(a);
        check(r.has_value(), ErrKind::Internal, "element of k[t]_(t) not invertible");
        return *r;
    }

    Fp residue_field() const { return fp; }
    Fp::Elem residue(const Elem& a) const
    {
        auto n0 = poly_eval(fp, a.n, fp.zero());
        auto d0 = poly_eval(fp, a.d, fp.zero());
        return fp.mul(n0, fp.inv(d0));
    }
    Elem lift(const Fp::Elem& a) const { return {poly_const(fp, a), poly_one(fp)}; }
    bool in_maximal(const Elem& a) const { return a.n.is_zero() || fp.is_zero(poly_eval(fp, a.n, fp.zero())); }

    std::optional<Elem> parse_const(const std::string& name) const
    {
        if (name == "t") return t();
        return std::nullopt;
    }
    Elem from_rat(const Rat& r) const { return detail::KtFracOps::from_rat(r); }
    std::string describe() const { return "F_" + fp.p.str() + "[t] localized at (t)"; }
};

// ---------------------------------------------------------------------------
// Global base Z: plain ring with extended-gcd ideal membership.
// ---------------------------------------------------------------------------
struct ZGlobal {
    using Elem = BigInt;
    using solver_tag = GlobalEuclSolve;
    static constexpr bool is_field = false;
    static constexpr const char* kind = "Z";

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long v) const { return BigInt(v); }
    Elem from_bigint(const BigInt& v) const { return v; }
    Elem from_rat(const Rat& r) const
    {
        check(den(r) == 1, ErrKind::Parse, "non-integer coefficient over Z");
        return num(r);
    }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool is_one(const Elem& a) const { return a == 1; }

    std::optional<Elem> try_inv(const Elem& a) const
    {
        if (a == 1 || a == -1) return a;
        return std::nullopt;
    }
    Elem inv(const Elem& a) const
    {
        auto r = try_inv(a);
        check(r.has_value(), ErrKind::Internal, "element of Z not invertible");
        return *r;
    }

    std::optional<Elem> parse_const(const std::string&) const { return std::nullopt; }
    std::string show(const Elem& a) const { return a.str(); }
    std::string encode(const Elem& a) const { return a.str(); }
    Elem decode(const std::string& s) const { return BigInt(s); }
    std::string describe() const { return "Z"; }

    // 1 in (g_1..g_n)? Returns Bezout coefficients when so.
    std::optional<std::vector<Elem>> one_in_ideal(const std::vector<Elem>& gens) const
    {
        if (gens.empty()) return std::nullopt;
        BigInt g = gens[0];
        std::vector<BigInt> cs{1};
        for (size_t i = 1; i < gens.size(); ++i) {
            auto e = ext_gcd(g, gens[i]);
            for (auto& c : cs) c *= e.s;
            cs.push_back(e.t);
            g = e.g;
        }
        if (abs_int(g) != 1) return std::nullopt;
        if (g == -1)
            for (auto& c : cs) c = -c;
        return cs;
    }
};

// ---------------------------------------------------------------------------
// Global base k[t], k = F_p.
// ---------------------------------------------------------------------------
struct KtGlobal {
    Fp fp;

    using Elem = UniPoly<Fp>;
    using solver_tag = GlobalEuclSolve;
    static constexpr bool is_field = false;
    static constexpr const char* kind = "kt";

    explicit KtGlobal(BigInt prime = 2) : fp(std::move(prime)) {}

    Elem zero() const { return poly_zero(fp); }
    Elem one() const { return poly_one(fp); }
    Elem from_int(long long v) const { return poly_const(fp, fp.from_int(v)); }
    Elem from_bigint(const BigInt& v) const { return poly_const(fp, fp.from_bigint(v)); }
    Elem from_rat(const Rat& r) const { return poly_const(fp, fp.from_rat(r)); }

    Elem add(const Elem& a, const Elem& b) const { return poly_add(fp, a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return poly_sub(fp, a, b); }
    Elem mul(const Elem& a, const Elem& b) const { return poly_mul(fp, a, b); }
    Elem neg(const Elem& a) const { return poly_neg(fp, a); }
    bool eq(const Elem& a, const Elem& b) const { return poly_eq(fp, a, b); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool is_one(const Elem& a) const { return poly_is_monic(fp, a) && a.degree() == 0; }

    std::optional<Elem> try_inv(const Elem& a) const
    {
        if (a.degree() != 0) return std::nullopt;
        return poly_const(fp, fp.inv(a.c[0]));
    }
    Elem inv(const Elem& a) const
    {
        auto r = try_inv(a);
        check(r.has_value(), ErrKind::Internal, "element of k[t] not invertible");
        return *r;
    }

    std::optional<Elem> parse_const(const std::string& name) const
    {
        if (name == "t") return poly_monomial(fp, fp.one(), 1);
        return std::nullopt;
    }
    std::string show(const Elem& a) const { return poly_show(fp, a, "t"); }
    std::string encode(const Elem& a) const { return detail::KtFracOps{fp}.encode_poly(a); }
    Elem decode(const std::string& s) const { return detail::KtFracOps{fp}.decode_poly(s); }
    std::string describe() const { return "F_" + fp.p.str() + "[t]"; }

    std::optional<std::vector<Elem>> one_in_ideal(const std::vector<Elem>& gens) const
    {
        if (gens.empty()) return std::nullopt;
        Elem g = gens[0];
        std::vector<Elem> cs{one()};
        for (size_t i = 1; i < gens.size(); ++i) {
            if (g.is_zero()) {
                g = gens[i];
                for (auto& c : cs) c = zero();
                cs.push_back(one());
                continue;
            }
            auto e = poly_ext_gcd(fp, g, gens[i]);
            for (auto& c : cs) c = poly_mul(fp, c, e.a);
            cs.push_back(e.b);
            g = e.g;
        }
        if (g.degree() != 0) return std::nullopt;
        auto u = poly_const(fp, fp.inv(g.c[0]));
        for (auto& c : cs) c = poly_mul(fp, c, u);
        return cs;
    }
};

// ---------------------------------------------------------------------------
// Z[1/f]: certificate-checking ring for global covers (arithmetic + equality).
// Elements are rationals whose denominator divides a power of f.
// ---------------------------------------------------------------------------
struct ZInv {
    BigInt f;

    using Elem = Rat;
    using solver_tag = GlobalEuclSolve; // solves happen on cleared numerators
    static constexpr bool is_field = false;
    static constexpr const char* kind = "Zinv";

    explicit ZInv(BigInt f_ = 1) : f(std::move(f_))
    {
        check(f != 0, ErrKind::Parse, "Z[1/f]: f must be nonzero");
    }

    bool valid(const Elem& a) const
    {
        BigInt d = den(a);
        BigInt g = gcd_int(d, abs_int(f));
        while (g > 1) {
            while (d % g == 0) d /= g;
            g = gcd_int(d, g);
        }
        return d == 1;
    }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long long v) const { return Rat(v); }
    Elem from_bigint(const BigInt& v) const { return Rat(v); }
    Elem from_rat(const Rat& r) const
    {
        check(valid(r), ErrKind::Parse, "denominator is not a power of f in Z[1/f]");
        return r;
    }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool is_one(const Elem& a) const { return a == 1; }

    std::optional<Elem> try_inv(const Elem& a) const
    {
        if (a == 0) return std::nullopt;
        Rat r = Rat(1) / a;
        if (!valid(r)) return std::nullopt;
        return r;
    }
    Elem inv(const Elem& a) const
    {
        auto r = try_inv(a);
        check(r.has_value(), ErrKind::Internal, "element of Z[1/f] not invertible");
        return *r;
    }

    std::optional<Elem> parse_const(const std::string&) const { return std::nullopt; }
    std::string show(const Elem& a) const
    {
        std::ostringstream os;
        os << a;
        return os.str();
    }
    std::string encode(const Elem& a) const { return show(a); }
    Elem decode(const std::string& s) const { return from_rat(Rat(s)); }
    std::string describe() const { return "Z[1/" + f.str() + "]"; }
};

// ---------------------------------------------------------------------------
// k[t][1/f]: same role as ZInv over the polynomial base.
// ---------------------------------------------------------------------------
struct KtInv : detail::KtFracOps {
    UniPoly<Fp> f;

    using Elem = FpFrac;
    using solver_tag = GlobalEuclSolve;
    static constexpr bool is_field = false;
    static constexpr const char* kind = "ktinv";

    KtInv(Fp fp_, UniPoly<Fp> f_) : detail::KtFracOps{fp_}, f(std::move(f_))
    {
        check(!f.is_zero(), ErrKind::Parse, "k[t][1/f]: f must be nonzero");
    }

    bool valid(const Elem& a) const
    {
        auto d = a.d;
        auto g = gcd_monic(fp, d, f);
        while (g.degree() > 0) {
            while (poly_divmod(fp, d, g).rem.is_zero()) d = poly_div_exact(fp, d, g);
            g = gcd_monic(fp, d, g);
        }
        return d.degree() == 0;
    }

    std::optional<Elem> try_inv(const Elem& a) const
    {
        if (a.n.is_zero()) return std::nullopt;
        Elem r = make(a.d, a.n);
        if (!valid(r)) return std::nullopt;
        return r;
    }
    Elem inv(const Elem& a) const
    {
        auto r = try_inv(a);
        check(r.has_value(), ErrKind::Internal, "element of k[t][1/f] not invertible");
        return *r;
    }

    std::optional<Elem> parse_const(const std::string& name) const
    {
        if (name == "t") return t();
        return std::nullopt;
    }
    Elem from_rat(const Rat& r) const { return detail::KtFracOps::from_rat(r); }
    std::string describe() const { return "F_" + fp.p.str() + "[t][1/" + poly_show(fp, f, "t") + "]"; }
};

} // namespace etale
