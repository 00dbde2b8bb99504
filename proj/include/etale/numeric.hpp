#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace etale {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline BigInt abs_int(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

inline BigInt gcd_int(const BigInt& a, const BigInt& b)
{
    return boost::multiprecision::gcd(a, b);
}

inline BigInt pow_int(const BigInt& base, unsigned e)
{
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// x = u * p^v with p not dividing u; returns v (x must be nonzero).
inline unsigned valuation(const BigInt& x, const BigInt& p)
{
    if (x == 0) throw std::invalid_argument("valuation of zero");
    BigInt r = x;
    unsigned v = 0;
    while (r % p == 0) {
        r /= p;
        ++v;
    }
    return v;
}

// Extended gcd: returns g = gcd(a,b) >= 0 and s,t with s*a + t*b = g.
struct ExtGcd {
    BigInt g, s, t;
};
inline ExtGcd ext_gcd(BigInt a, BigInt b)
{
    BigInt s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        BigInt q = a / b;
        BigInt r = a - q * b;
        a = b;
        b = r;
        BigInt s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (a < 0) {
        a = -a;
        s0 = -s0;
        t0 = -t0;
    }
    return {a, s0, t0};
}

inline BigInt mod_norm(const BigInt& a, const BigInt& p)
{
    BigInt r = a % p;
    if (r < 0) r += p;
    return r;
}

inline BigInt mod_inverse(const BigInt& a, const BigInt& p)
{
    auto e = ext_gcd(mod_norm(a, p), p);
    if (e.g != 1) throw std::domain_error("element not invertible modulo p");
    return mod_norm(e.s, p);
}

inline bool is_prime_small(const BigInt& n)
{
    if (n < 2) return false;
    for (BigInt d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Error taxonomy shared by the library and the CLI (exit codes 2/3/4).
enum class ErrKind { Parse, Unsupported, Pipeline, Internal };

class Error : public std::runtime_error {
public:
    Error(ErrKind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    ErrKind kind() const { return kind_; }

private:
    ErrKind kind_;
};

[[noreturn]] inline void fail_parse(const std::string& m) { throw Error(ErrKind::Parse, m); }
[[noreturn]] inline void fail_unsupported(const std::string& m) { throw Error(ErrKind::Unsupported, m); }
[[noreturn]] inline void fail_pipeline(const std::string& m) { throw Error(ErrKind::Pipeline, m); }
[[noreturn]] inline void fail_internal(const std::string& m) { throw Error(ErrKind::Internal, m); }

inline void check(bool ok, ErrKind k, const std::string& m)
{
    if (!ok) throw Error(k, m);
}

} // namespace etale
