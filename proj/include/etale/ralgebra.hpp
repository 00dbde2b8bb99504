#pragma once

#include "etale/kalgebra.hpp"

namespace etale {

// Finite R-algebras share the structure-constant representation with the
// residual k-algebras; only the available operations differ.
template <class R>
using FiniteRAlgebra = FiniteKAlgebra<R>;

// UniPoly<R> viewed as a ring, for determinants of polynomial matrices.
template <class R>
struct PolyRingOf {
    R base;
    using Elem = UniPoly<R>;
    Elem zero() const { return {}; }
    Elem one() const { return poly_one(base); }
    Elem from_int(long long v) const { return poly_const(base, base.from_int(v)); }
    Elem add(const Elem& a, const Elem& b) const { return poly_add(base, a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return poly_sub(base, a, b); }
    Elem mul(const Elem& a, const Elem& b) const { return poly_mul(base, a, b); }
    Elem neg(const Elem& a) const { return poly_neg(base, a); }
    bool eq(const Elem& a, const Elem& b) const { return poly_eq(base, a, b); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool is_one(const Elem& a) const { return poly_is_monic(base, a) && a.degree() == 0; }
};

// Reduction mod m of everything in sight: B/mB as a finite k-algebra.
template <class R>
FiniteKAlgebra<typename R::Residue> residue_of_algebra(const R& ring, const FiniteRAlgebra<R>& B)
{
    auto k = ring.residue_field();
    FiniteKAlgebra<typename R::Residue> A{k, B.dim, B.labels, {}, {}};
    A.sc.assign(B.dim, std::vector<Vec<typename R::Residue>>(B.dim));
    for (int i = 0; i < B.dim; ++i)
        for (int j = 0; j < B.dim; ++j) {
            Vec<typename R::Residue> v;
            for (auto& x : B.sc[i][j]) v.push_back(ring.residue(x));
            A.sc[i][j] = std::move(v);
        }
    for (auto& x : B.unit) A.unit.push_back(ring.residue(x));
    return A;
}

template <class R>
Vec<typename R::Residue> residue_elem(const R& ring, const Vec<R>& x)
{
    Vec<typename R::Residue> v;
    for (auto& c : x) v.push_back(ring.residue(c));
    return v;
}

template <class R>
Vec<R> lift_elem(const R& ring, const Vec<typename R::Residue>& x)
{
    Vec<R> v;
    for (auto& c : x) v.push_back(ring.lift(c));
    return v;
}

template <class R>
UniPoly<R> lift_poly(const R& ring, const UniPoly<typename R::Residue>& f)
{
    UniPoly<R> g;
    for (auto& c : f.c) g.c.push_back(ring.lift(c));
    return poly_trim(ring, std::move(g));
}

template <class R>
UniPoly<typename R::Residue> residue_poly(const R& ring, const UniPoly<R>& f)
{
    UniPoly<typename R::Residue> g;
    for (auto& c : f.c) g.c.push_back(ring.residue(c));
    return poly_trim(ring.residue_field(), std::move(g));
}

// Monic annihilator of x: characteristic polynomial of multiplication by x
// (Cayley-Hamilton), computed as det(X I - M) over R[X].
template <class R>
UniPoly<R> charpoly_mult(const R& ring, const FiniteRAlgebra<R>& B, const Vec<R>& x)
{
    PolyRingOf<R> pr{ring};
    auto M = B.mult_matrix(x);
    auto P = mat_zero(pr, B.dim, B.dim);
    for (int i = 0; i < B.dim; ++i)
        for (int j = 0; j < B.dim; ++j) {
            auto entry = poly_const(ring, ring.neg(M.at(i, j)));
            if (i == j) entry = poly_add(ring, entry, poly_monomial(ring, ring.one(), 1));
            P.at(i, j) = entry;
        }
    auto cp = det_cofactor(pr, P);
    check(poly_is_monic(ring, cp) && cp.degree() == B.dim, ErrKind::Internal,
          "charpoly: expected monic of degree dim");
    check(B.is_zero_elem(alg_eval(B, cp, x)), ErrKind::Internal,
          "charpoly does not annihilate its element");
    return cp;
}

// Exact decomposition e b_j = q_j(y) + sum_l mu_jl b_l with all mu_jl in the
// maximal ideal; h records e = h(y).
template <class R>
struct NakayamaWitness {
    Vec<R> e, y;
    UniPoly<R> h;                 // e = h(y) in B
    std::vector<UniPoly<R>> q;    // one per generator
    Mat<R> mu;                    // entries in m
};

template <class R>
NakayamaWitness<R> nakayama_witness(const R& ring, const FiniteRAlgebra<R>& B, const Vec<R>& e,
                                    const Vec<R>& y, const UniPoly<R>& h)
{
    check(B.eq(alg_eval(B, h, y), e), ErrKind::Internal, "nakayama_witness: e != h(y)");
    auto k = ring.residue_field();
    auto A = residue_of_algebra(ring, B);
    auto ebar = residue_elem(ring, e);
    auto ybar = residue_elem(ring, y);
    // residual solve: ebar * b_j in k[ybar], coefficients on powers 0..dim-1
    auto P = mat_zero(k, A.dim, A.dim);
    {
        auto pw = A.unit;
        for (int c = 0; c < A.dim; ++c) {
            for (int i = 0; i < A.dim; ++i) P.at(i, c) = pw[i];
            pw = A.mul(pw, ybar);
        }
    }
    NakayamaWitness<R> w{e, y, h, {}, mat_zero(ring, B.dim, B.dim)};
    for (int j = 0; j < B.dim; ++j) {
        auto target = A.mul(ebar, A.basis_elem(j));
        auto res = gauss_solve(k, P, target);
        check(res.solution.has_value(), ErrKind::Pipeline,
              "nakayama_witness: residual generation fails (e.B not inside k[y])");
        UniPoly<typename R::Residue> qbar;
        qbar.c = *res.solution;
        auto qj = lift_poly(ring, poly_trim(k, std::move(qbar)));
        auto discrepancy = B.sub(B.mul(e, B.basis_elem(j)), alg_eval(B, qj, y));
        for (int l = 0; l < B.dim; ++l) {
            check(ring.in_maximal(discrepancy[l]), ErrKind::Internal,
                  "nakayama_witness: discrepancy not in the maximal ideal");
            w.mu.at(j, l) = discrepancy[l];
        }
        w.q.push_back(std::move(qj));
    }
    return w;
}

// Determinant trick: p = det(h(X) d_jl - mu_jl) gives p(y) B inside R[y],
// with the adjugate providing the explicit expressions.
template <class R>
struct NakayamaLocalizer {
    UniPoly<R> D;                      // p = D(y)
    Vec<R> p;                          // D(y) as an element of B
    std::vector<UniPoly<R>> pb_exprs;  // p * b_j = pb_exprs[j](y)
};

template <class R>
NakayamaLocalizer<R> nakayama_localizer(const R& ring, const FiniteRAlgebra<R>& B,
                                        const NakayamaWitness<R>& w)
{
    PolyRingOf<R> pr{ring};
    const int m = B.dim;
    auto M = mat_zero(pr, m, m);
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) {
            auto entry = poly_const(ring, ring.neg(w.mu.at(j, l)));
            if (j == l) entry = poly_add(ring, entry, w.h);
            M.at(j, l) = entry;
        }
    NakayamaLocalizer<R> out;
    out.D = det_cofactor(pr, M);
    out.p = alg_eval(B, out.D, w.y);
    auto adj = adjugate(pr, M);
    for (int j = 0; j < m; ++j) {
        UniPoly<R> pj;
        for (int l = 0; l < m; ++l) pj = poly_add(ring, pj, poly_mul(ring, adj.at(j, l), w.q[l]));
        // exactness of the adjugate identity on the generators
        check(B.eq(B.mul(out.p, B.basis_elem(j)), alg_eval(B, pj, w.y)), ErrKind::Internal,
              "nakayama_localizer: p b_j != adjugate expression");
        out.pb_exprs.push_back(std::move(pj));
    }
    // residually p = e^m
    auto k = ring.residue_field();
    auto A = residue_of_algebra(ring, B);
    auto lhs = residue_elem(ring, out.p);
    auto rhs = A.power(residue_elem(ring, w.e), static_cast<unsigned>(m));
    check(A.eq(lhs, rhs), ErrKind::Internal, "nakayama_localizer: residue(p) != residue(e)^m");
    return out;
}

// Monic degree-d relation for y from residual generation by 1, y, .., y^{d-1}
// (solved exactly over R; Nakayama guarantees solvability).
template <class R>
UniPoly<R> monic_from_generation(const R& ring, const FiniteRAlgebra<R>& B, const Vec<R>& y, int d)
{
    auto M = mat_zero(ring, B.dim, d);
    auto pw = B.unit;
    for (int c = 0; c < d; ++c) {
        for (int i = 0; i < B.dim; ++i) M.at(i, c) = pw[i];
        pw = B.mul(pw, y);
    }
    // pw is now y^d
    auto res = solve_and_syzygies(ring, M, pw);
    check(res.solution.has_value(), ErrKind::Pipeline,
          "monic_from_generation: residual generation fails over R");
    std::vector<typename R::Elem> cs;
    for (int c = 0; c < d; ++c) cs.push_back(ring.neg((*res.solution)[c]));
    cs.push_back(ring.one());
    auto Q = poly_of(ring, std::move(cs));
    check(Q.degree() == d, ErrKind::Internal, "monic_from_generation: wrong degree");
    check(B.is_zero_elem(alg_eval(B, Q, y)), ErrKind::Internal,
          "monic_from_generation: Q(y) != 0");
    return Q;
}

} // namespace etale
