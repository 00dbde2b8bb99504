#pragma once

#include "etale/factor.hpp"
#include "etale/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace etale {

class NotUnramifiedError : public Error {
public:
    explicit NotUnramifiedError(const std::string& msg) : Error(ErrKind::Pipeline, msg) {}
};

// Finite-dimensional commutative algebra over a field, given by a basis and
// structure constants. Elements are coordinate vectors.
template <class F>
struct FiniteKAlgebra {
    F field;
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<Vec<F>>> sc; // sc[i][j] = coords of basis_i * basis_j
    Vec<F> unit;

    Vec<F> zero_elem() const { return Vec<F>(dim, field.zero()); }
    Vec<F> basis_elem(int i) const
    {
        auto v = zero_elem();
        v[i] = field.one();
        return v;
    }
    Vec<F> scalar(const typename F::Elem& c) const { return vec_scale(field, c, unit); }

    Vec<F> mul(const Vec<F>& x, const Vec<F>& y) const
    {
        auto r = zero_elem();
        for (int i = 0; i < dim; ++i) {
            if (field.is_zero(x[i])) continue;
            for (int j = 0; j < dim; ++j) {
                if (field.is_zero(y[j])) continue;
                auto c = field.mul(x[i], y[j]);
                for (int l = 0; l < dim; ++l) r[l] = field.add(r[l], field.mul(c, sc[i][j][l]));
            }
        }
        return r;
    }
    Vec<F> add(const Vec<F>& x, const Vec<F>& y) const { return vec_add(field, x, y); }
    Vec<F> sub(const Vec<F>& x, const Vec<F>& y) const { return vec_sub(field, x, y); }
    bool is_zero_elem(const Vec<F>& x) const { return vec_is_zero(field, x); }
    bool eq(const Vec<F>& x, const Vec<F>& y) const { return is_zero_elem(sub(x, y)); }

    Vec<F> power(Vec<F> x, unsigned n) const
    {
        auto r = unit;
        while (n) {
            if (n & 1) r = mul(r, x);
            x = mul(x, x);
            n >>= 1;
        }
        return r;
    }

    // Matrix of multiplication by x on the basis.
    Mat<F> mult_matrix(const Vec<F>& x) const
    {
        auto m = mat_zero(field, dim, dim);
        for (int j = 0; j < dim; ++j) {
            auto col = mul(x, basis_elem(j));
            for (int i = 0; i < dim; ++i) m.at(i, j) = col[i];
        }
        return m;
    }

    // Unit, commutativity and associativity laws on basis triples.
    void validate() const
    {
        for (int i = 0; i < dim; ++i) {
            check(eq(mul(unit, basis_elem(i)), basis_elem(i)), ErrKind::Parse,
                  "algebra: unit law fails on basis element");
            for (int j = 0; j < dim; ++j) {
                check(eq(mul(basis_elem(i), basis_elem(j)), mul(basis_elem(j), basis_elem(i))),
                      ErrKind::Parse, "algebra: commutativity fails on basis pair");
                for (int l = 0; l < dim; ++l) {
                    auto lhs = mul(mul(basis_elem(i), basis_elem(j)), basis_elem(l));
                    auto rhs = mul(basis_elem(i), mul(basis_elem(j), basis_elem(l)));
                    check(eq(lhs, rhs), ErrKind::Parse, "algebra: associativity fails on basis triple");
                }
            }
        }
    }
};

template <class F>
Vec<F> alg_eval(const FiniteKAlgebra<F>& A, const UniPoly<F>& f, const Vec<F>& x)
{
    auto acc = A.zero_elem();
    for (size_t i = f.c.size(); i-- > 0;)
        acc = A.add(A.mul(acc, x), vec_scale(A.field, f.c[i], A.unit));
    return acc;
}

// k[X]/(f) with the power basis, f monic of degree >= 1.
template <class F>
FiniteKAlgebra<F> quotient_algebra(const F& field, const UniPoly<F>& f, const std::string& var = "x")
{
    check(poly_is_monic(field, f) && f.degree() >= 1, ErrKind::Parse,
          "quotient algebra needs a monic nonconstant modulus");
    int d = f.degree();
    FiniteKAlgebra<F> A{field, d, {}, {}, {}};
    for (int i = 0; i < d; ++i)
        A.labels.push_back(i == 0 ? "1" : (i == 1 ? var : var + "^" + std::to_string(i)));
    A.sc.assign(d, std::vector<Vec<F>>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            auto prod = poly_monomial(field, field.one(), i + j);
            auto rem = divmod_monic(field, prod, f).rem;
            Vec<F> v(d, field.zero());
            for (int l = 0; l <= rem.degree(); ++l) v[l] = rem.c[l];
            A.sc[i][j] = std::move(v);
        }
    A.unit = A.basis_elem(0);
    return A;
}

template <class F>
FiniteKAlgebra<F> product_algebra(const FiniteKAlgebra<F>& A, const FiniteKAlgebra<F>& B)
{
    const F& field = A.field;
    FiniteKAlgebra<F> P{field, A.dim + B.dim, {}, {}, {}};
    for (auto& l : A.labels) P.labels.push_back("(" + l + ",0)");
    for (auto& l : B.labels) P.labels.push_back("(0," + l + ")");
    P.sc.assign(P.dim, std::vector<Vec<F>>(P.dim, Vec<F>(P.dim, field.zero())));
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (int l = 0; l < A.dim; ++l) P.sc[i][j][l] = A.sc[i][j][l];
    for (int i = 0; i < B.dim; ++i)
        for (int j = 0; j < B.dim; ++j)
            for (int l = 0; l < B.dim; ++l) P.sc[A.dim + i][A.dim + j][A.dim + l] = B.sc[i][j][l];
    P.unit = Vec<F>(P.dim, field.zero());
    for (int i = 0; i < A.dim; ++i) P.unit[i] = A.unit[i];
    for (int i = 0; i < B.dim; ++i) P.unit[A.dim + i] = B.unit[i];
    return P;
}

// Least-degree monic m with m(s) = 0, via the first linear dependence among
// the powers of s.
template <class F>
UniPoly<F> minimal_polynomial(const FiniteKAlgebra<F>& A, const Vec<F>& s)
{
    std::vector<Vec<F>> powers{A.unit};
    for (int k = 1; k <= A.dim; ++k) {
        powers.push_back(A.mul(powers.back(), s));
        auto M = mat_zero(A.field, A.dim, k);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < A.dim; ++i) M.at(i, j) = powers[j][i];
        auto res = gauss_solve(A.field, M, powers[k]);
        if (res.solution) {
            std::vector<typename F::Elem> cs;
            for (int j = 0; j < k; ++j) cs.push_back(A.field.neg((*res.solution)[j]));
            cs.push_back(A.field.one());
            return poly_of(A.field, std::move(cs));
        }
    }
    fail_internal("minimal_polynomial: no dependence within the dimension bound");
}

// Certificate for the localization-by-idempotent lemma: s^N (1 - s u) = 0 and
// e = (s u)^N idempotent with A[1/e] = A[1/s].
template <class F>
struct IdempotentCertificate {
    Vec<F> s;
    unsigned N = 0;
    Vec<F> u;
    Vec<F> e;
    UniPoly<F> minpoly;
};

// nullopt encodes the discarded branch: s nilpotent, A[1/s] trivial.
template <class F>
std::optional<IdempotentCertificate<F>> idempotent_of(const FiniteKAlgebra<F>& A, const Vec<F>& s)
{
    const F& k = A.field;
    auto m = minimal_polynomial(A, s);
    unsigned N = 0;
    while (static_cast<int>(N) <= m.degree() && k.is_zero(poly_coeff(k, m, N))) ++N;
    UniPoly<F> r; // m = X^N * r with r(0) != 0
    for (size_t i = N; i < m.c.size(); ++i) r.c.push_back(m.c[i]);
    if (r.degree() == 0) return std::nullopt; // m = X^N: s nilpotent
    // r = r(0) (1 - X * u_poly)
    auto r0inv = k.inv(r.c[0]);
    UniPoly<F> u_poly;
    for (size_t i = 1; i < r.c.size(); ++i) u_poly.c.push_back(k.neg(k.mul(r0inv, r.c[i])));
    u_poly = poly_trim(k, std::move(u_poly));
    auto u = alg_eval(A, u_poly, s);
    auto su = A.mul(s, u);
    auto e = A.power(su, N);
    // defining equations, checked exactly
    auto lhs = A.mul(A.power(s, N), A.sub(A.unit, su));
    check(A.is_zero_elem(lhs), ErrKind::Internal, "idempotent_of: s^N (1 - s u) != 0");
    check(A.eq(A.mul(e, e), e), ErrKind::Internal, "idempotent_of: e is not idempotent");
    return IdempotentCertificate<F>{s, N, u, e, m};
}

// Basis of the ideal A e (with unit e) plus the embedding into A.
template <class F>
struct SubAlgebra {
    FiniteKAlgebra<F> alg;
    std::vector<Vec<F>> basis; // A-coordinates of the sub-basis
};

template <class F>
Vec<F> sub_coords(const FiniteKAlgebra<F>& A, const SubAlgebra<F>& S, const Vec<F>& x)
{
    auto M = mat_zero(A.field, A.dim, S.alg.dim);
    for (int j = 0; j < S.alg.dim; ++j)
        for (int i = 0; i < A.dim; ++i) M.at(i, j) = S.basis[j][i];
    auto res = gauss_solve(A.field, M, x);
    check(res.solution.has_value(), ErrKind::Internal, "sub_coords: element not in the ideal");
    return *res.solution;
}

template <class F>
Vec<F> sub_embed(const FiniteKAlgebra<F>& A, const SubAlgebra<F>& S, const Vec<F>& xs)
{
    auto r = A.zero_elem();
    for (int j = 0; j < S.alg.dim; ++j) r = A.add(r, vec_scale(A.field, xs[j], S.basis[j]));
    return r;
}

template <class F>
SubAlgebra<F> ideal_subalgebra(const FiniteKAlgebra<F>& A, const Vec<F>& e)
{
    const F& k = A.field;
    SubAlgebra<F> S;
    // independent columns of multiplication by e
    std::vector<Vec<F>> cols;
    for (int j = 0; j < A.dim; ++j) cols.push_back(A.mul(e, A.basis_elem(j)));
    std::vector<Vec<F>> chosen;
    for (auto& c : cols) {
        auto M = mat_zero(k, A.dim, static_cast<int>(chosen.size()));
        for (size_t j = 0; j < chosen.size(); ++j)
            for (int i = 0; i < A.dim; ++i) M.at(i, static_cast<int>(j)) = chosen[j][i];
        if (!gauss_solve(k, M, c).solution) chosen.push_back(c);
    }
    S.basis = chosen;
    int d = static_cast<int>(chosen.size());
    S.alg = FiniteKAlgebra<F>{k, d, {}, {}, {}};
    for (int i = 0; i < d; ++i) S.alg.labels.push_back("e" + std::to_string(i));
    S.alg.sc.assign(d, std::vector<Vec<F>>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            S.alg.sc[i][j] = sub_coords(A, S, A.mul(S.basis[i], S.basis[j]));
    S.alg.unit = sub_coords(A, S, e);
    return S;
}

template <class F>
int localization_dim(const FiniteKAlgebra<F>& A, const Vec<F>& e)
{
    return static_cast<int>(ideal_subalgebra(A, e).basis.size());
}

// Trace form Gram determinant: nonzero iff the algebra is a product of
// separable field extensions.
template <class F>
bool trace_form_nondegenerate(const FiniteKAlgebra<F>& A)
{
    const F& k = A.field;
    auto G = mat_zero(k, A.dim, A.dim);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            auto M = A.mult_matrix(A.mul(A.basis_elem(i), A.basis_elem(j)));
            auto tr = k.zero();
            for (int l = 0; l < A.dim; ++l) tr = k.add(tr, M.at(l, l));
            G.at(i, j) = tr;
        }
    return !k.is_zero(mat_det(k, G));
}

// One monogene separable factor of an unramified finite k-algebra:
// eps idempotent, y = x*eps, p separable with p(0) != 0 and p(y) eps = 0,
// eps = eps_in_y(y) with zero constant term, and {eps, y, .., y^{d-1}}
// spanning A eps.
template <class F>
struct MonogeneComponent {
    Vec<F> eps;
    Vec<F> y;
    UniPoly<F> p;
    UniPoly<F> eps_in_y;
    Separability<F> sep;
};

// Constant-term adjustment: only p = X needs fixing, replaced following the
// shift y -> y + eps, p -> X - 1.
template <class F>
std::pair<Vec<F>, UniPoly<F>> adjust_constant_term(const FiniteKAlgebra<F>& A, const Vec<F>& eps,
                                                   const Vec<F>& y, const UniPoly<F>& p)
{
    const F& k = A.field;
    if (!k.is_zero(poly_coeff(k, p, 0))) return {y, p};
    check(p.degree() == 1 && k.is_one(p.c[1]), ErrKind::Internal,
          "adjust_constant_term: separable irreducible with zero constant term must be X");
    auto y2 = A.add(y, eps);
    auto p2 = poly_of(k, {k.neg(k.one()), k.one()}); // X - 1
    check(A.is_zero_elem(A.mul(alg_eval(A, p2, y2), eps)), ErrKind::Internal,
          "adjust_constant_term: adjusted relation fails");
    return {y2, p2};
}

namespace detail {

// Deterministic candidate enumeration: basis vectors first, then small
// combinations (exhaustive over F_p, height-bounded otherwise).
template <class F, class Fn>
void enumerate_candidates(const F& field, int dim, long cap, Fn&& fn)
{
    std::vector<typename F::Elem> pool;
    if constexpr (std::is_same_v<F, Fp>) {
        for (BigInt v = 0; v < field.p; ++v) pool.push_back(v);
    } else {
        for (long long h : {0, 1, -1, 2, -2, 3, -3}) pool.push_back(field.from_int(h));
    }
    for (int i = 0; i < dim; ++i) {
        Vec<F> v(dim, field.zero());
        v[i] = field.one();
        if (fn(v)) return;
    }
    std::vector<size_t> idx(dim, 0);
    long seen = 0;
    while (seen++ < cap) {
        int pos = 0;
        while (pos < dim && ++idx[pos] == pool.size()) {
            idx[pos] = 0;
            ++pos;
        }
        if (pos >= dim) return; // odometer exhausted
        Vec<F> v(dim);
        for (int i = 0; i < dim; ++i) v[i] = pool[idx[i]];
        if (fn(v)) return;
    }
    fail_unsupported("generator search exceeded its candidate budget");
}

} // namespace detail

// Decomposition of an unramified finite k-algebra into monogene separable
// components: pairwise orthogonal idempotents summing to 1. Throws
// NotUnramifiedError when an inseparable minimal polynomial shows up
// (detected up front by the trace form).
template <class F>
std::vector<MonogeneComponent<F>> monogene_components(const FiniteKAlgebra<F>& A)
{
    const F& k = A.field;
    if (!trace_form_nondegenerate(A))
        throw NotUnramifiedError("residual algebra is not unramified: trace form is degenerate");

    std::vector<MonogeneComponent<F>> out;
    std::vector<Vec<F>> queue{A.unit};
    while (!queue.empty()) {
        auto eps = queue.front();
        queue.erase(queue.begin());
        auto S = ideal_subalgebra(A, eps);
        const int d = S.alg.dim;
        if (d == 1) {
            MonogeneComponent<F> c;
            c.eps = eps;
            c.y = eps;
            c.p = poly_of(k, {k.neg(k.one()), k.one()}); // X - 1
            c.eps_in_y = poly_of(k, {k.zero(), k.one()}); // eps = y
            c.sep = is_separable(k, c.p);
            out.push_back(std::move(c));
            continue;
        }
        bool done = false;
        detail::enumerate_candidates(k, d, 200000, [&](const Vec<F>& cand) {
            if (vec_is_zero(k, cand)) return false;
            auto m = minimal_polynomial(S.alg, cand);
            if (m.degree() < 1) return false;
            auto fl = field_factor(k, m);
            if (fl.factors.size() >= 2) {
                // CRT split along the pairwise coprime primary factors
                std::vector<Vec<F>> parts;
                auto sum = A.zero_elem();
                for (auto& [q, mult] : fl.factors) {
                    auto Qi = poly_pow(k, q, mult);
                    auto rest = poly_div_exact(k, m, Qi);
                    auto eg = poly_ext_gcd(k, rest, Qi);
                    check(eg.g.degree() == 0, ErrKind::Internal, "CRT split: factors not coprime");
                    // eta = (a * rest)(cand) with a*rest + b*Qi = 1
                    auto eta_s = alg_eval(S.alg, poly_mul(k, eg.a, rest), cand);
                    auto eta = sub_embed(A, S, eta_s);
                    check(A.eq(A.mul(eta, eta), eta), ErrKind::Internal, "CRT split: eta not idempotent");
                    parts.push_back(eta);
                    sum = A.add(sum, eta);
                }
                check(A.eq(sum, eps), ErrKind::Internal, "CRT split: idempotents do not sum to eps");
                for (size_t a = 0; a < parts.size(); ++a)
                    for (size_t b = a + 1; b < parts.size(); ++b)
                        check(A.is_zero_elem(A.mul(parts[a], parts[b])), ErrKind::Internal,
                              "CRT split: idempotents not orthogonal");
                for (auto& piece : parts) queue.push_back(piece);
                done = true;
                return true;
            }
            auto& [q, mult] = fl.factors[0];
            if (mult >= 2)
                throw NotUnramifiedError("inseparable minimal polynomial " + poly_show(k, m) +
                                         " in residual component");
            if (q.degree() != d) return false; // not a generator, keep searching
            auto sep = is_separable(k, q);
            if (!sep.separable)
                throw NotUnramifiedError("inseparable irreducible factor " + poly_show(k, q));
            // found a monogene generator
            auto x = sub_embed(A, S, cand);
            auto y = A.mul(x, eps);
            auto [y2, p2] = adjust_constant_term(A, eps, y, q);
            MonogeneComponent<F> c;
            c.eps = eps;
            c.y = y2;
            c.p = p2;
            c.sep = is_separable(k, c.p);
            // eps = -p(0)^{-1} (p(y) - p(0)) as a polynomial in y
            auto c0inv = k.inv(poly_coeff(k, c.p, 0));
            UniPoly<F> h;
            h.c.push_back(k.zero());
            for (size_t i = 1; i < c.p.c.size(); ++i) h.c.push_back(k.neg(k.mul(c0inv, c.p.c[i])));
            c.eps_in_y = poly_trim(k, std::move(h));
            check(A.eq(alg_eval(A, c.eps_in_y, c.y), eps), ErrKind::Internal,
                  "component: eps is not the expected polynomial in y");
            check(A.is_zero_elem(A.mul(alg_eval(A, c.p, c.y), eps)), ErrKind::Internal,
                  "component: p(y) eps != 0");
            out.push_back(std::move(c));
            done = true;
            return true;
        });
        check(done, ErrKind::Unsupported, "monogene decomposition: no generator or splitter found");
    }

    // global consistency: partition of unity by orthogonal idempotents
    auto total = A.zero_elem();
    int dims = 0;
    for (auto& c : out) {
        total = A.add(total, c.eps);
        dims += localization_dim(A, c.eps);
    }
    check(A.eq(total, A.unit), ErrKind::Internal, "components do not sum to 1");
    check(dims == A.dim, ErrKind::Internal, "component dimensions do not add up");
    for (size_t a = 0; a < out.size(); ++a)
        for (size_t b = a + 1; b < out.size(); ++b)
            check(A.is_zero_elem(A.mul(out[a].eps, out[b].eps)), ErrKind::Internal,
                  "components not orthogonal");
    return out;
}

} // namespace etale
