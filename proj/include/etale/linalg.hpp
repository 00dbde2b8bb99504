#pragma once

#include "etale/rings.hpp"

#include <optional>
#include <vector>

namespace etale {

template <class R>
using Vec = std::vector<typename R::Elem>;

template <class R>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<typename R::Elem> a;

    typename R::Elem& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const typename R::Elem& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

template <class R>
Mat<R> mat_zero(const R& ring, int rows, int cols)
{
    Mat<R> m{rows, cols, {}};
    m.a.assign(static_cast<size_t>(rows) * cols, ring.zero());
    return m;
}

template <class R>
Mat<R> mat_identity(const R& ring, int n)
{
    auto m = mat_zero(ring, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ring.one();
    return m;
}

template <class R>
Vec<R> mat_vec(const R& ring, const Mat<R>& m, const Vec<R>& v)
{
    Vec<R> r(m.rows, ring.zero());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r[i] = ring.add(r[i], ring.mul(m.at(i, j), v[j]));
    return r;
}

template <class R>
Mat<R> mat_mul(const R& ring, const Mat<R>& x, const Mat<R>& y)
{
    auto r = mat_zero(ring, x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (ring.is_zero(x.at(i, k))) continue;
            for (int j = 0; j < y.cols; ++j)
                r.at(i, j) = ring.add(r.at(i, j), ring.mul(x.at(i, k), y.at(k, j)));
        }
    return r;
}

template <class R>
Vec<R> vec_add(const R& ring, const Vec<R>& x, const Vec<R>& y)
{
    Vec<R> r(x.size(), ring.zero());
    for (size_t i = 0; i < x.size(); ++i) r[i] = ring.add(x[i], y[i]);
    return r;
}

template <class R>
Vec<R> vec_sub(const R& ring, const Vec<R>& x, const Vec<R>& y)
{
    Vec<R> r(x.size(), ring.zero());
    for (size_t i = 0; i < x.size(); ++i) r[i] = ring.sub(x[i], y[i]);
    return r;
}

template <class R>
Vec<R> vec_scale(const R& ring, const typename R::Elem& c, const Vec<R>& x)
{
    Vec<R> r = x;
    for (auto& v : r) v = ring.mul(c, v);
    return r;
}

template <class R>
bool vec_is_zero(const R& ring, const Vec<R>& x)
{
    for (auto& v : x)
        if (!ring.is_zero(v)) return false;
    return true;
}

// Solution of A x = b plus a generating set of syzygies of A.
template <class R>
struct SolveResult {
    std::optional<Vec<R>> solution;
    std::vector<Vec<R>> syzygies;
};

// ---------------------------------------------------------------------------
// Gaussian elimination pivoting on units; complete for fields and, whenever
// enough unit pivots exist, for local rings (fails loudly otherwise).
// ---------------------------------------------------------------------------
template <class R>
SolveResult<R> gauss_solve(const R& ring, Mat<R> A, Vec<R> b)
{
    const int m = A.rows, n = A.cols;
    std::vector<int> pivot_col;            // per pivot row
    std::vector<int> col_pivot(n, -1);     // column -> pivot row
    int rank = 0;
    for (int j = 0; j < n && rank < m; ++j) {
        int pr = -1;
        std::optional<typename R::Elem> pin;
        for (int i = rank; i < m; ++i) {
            if (ring.is_zero(A.at(i, j))) continue;
            pin = ring.try_inv(A.at(i, j));
            if (pin) {
                pr = i;
                break;
            }
        }
        if (pr < 0) continue;
        // swap, normalize, eliminate everywhere else
        for (int jj = 0; jj < n; ++jj) std::swap(A.at(rank, jj), A.at(pr, jj));
        std::swap(b[rank], b[pr]);
        for (int jj = 0; jj < n; ++jj) A.at(rank, jj) = ring.mul(*pin, A.at(rank, jj));
        b[rank] = ring.mul(*pin, b[rank]);
        for (int i = 0; i < m; ++i) {
            if (i == rank || ring.is_zero(A.at(i, j))) continue;
            auto c = A.at(i, j);
            for (int jj = 0; jj < n; ++jj)
                A.at(i, jj) = ring.sub(A.at(i, jj), ring.mul(c, A.at(rank, jj)));
            b[i] = ring.sub(b[i], ring.mul(c, b[rank]));
        }
        pivot_col.push_back(j);
        col_pivot[j] = rank;
        ++rank;
    }
    // Leftover nonzero matrix entries cannot be handled with unit pivots.
    for (int i = rank; i < m; ++i)
        for (int j = 0; j < n; ++j)
            check(ring.is_zero(A.at(i, j)), ErrKind::Unsupported,
                  "linear solve over local ring: no invertible pivot available");

    SolveResult<R> res;
    bool ok = true;
    for (int i = rank; i < m; ++i)
        if (!ring.is_zero(b[i])) ok = false;
    if (ok) {
        Vec<R> x(n, ring.zero());
        for (int r = 0; r < rank; ++r) x[pivot_col[r]] = b[r];
        res.solution = std::move(x);
    }
    for (int j = 0; j < n; ++j) {
        if (col_pivot[j] >= 0) continue;
        Vec<R> s(n, ring.zero());
        s[j] = ring.one();
        for (int r = 0; r < rank; ++r) s[pivot_col[r]] = ring.neg(A.at(r, j));
        res.syzygies.push_back(std::move(s));
    }
    return res;
}

template <class F>
int mat_rank(const F& field, const Mat<F>& A)
{
    auto r = gauss_solve(field, A, Vec<F>(A.rows, field.zero()));
    return A.cols - static_cast<int>(r.syzygies.size());
}

template <class F>
typename F::Elem mat_det(const F& field, Mat<F> A)
{
    check(A.rows == A.cols, ErrKind::Internal, "determinant of non-square matrix");
    const int n = A.rows;
    auto det = field.one();
    for (int j = 0; j < n; ++j) {
        int pr = -1;
        for (int i = j; i < n; ++i)
            if (!field.is_zero(A.at(i, j))) {
                pr = i;
                break;
            }
        if (pr < 0) return field.zero();
        if (pr != j) {
            for (int jj = 0; jj < n; ++jj) std::swap(A.at(j, jj), A.at(pr, jj));
            det = field.neg(det);
        }
        det = field.mul(det, A.at(j, j));
        auto inv = field.inv(A.at(j, j));
        for (int i = j + 1; i < n; ++i) {
            if (field.is_zero(A.at(i, j))) continue;
            auto c = field.mul(inv, A.at(i, j));
            for (int jj = j; jj < n; ++jj)
                A.at(i, jj) = field.sub(A.at(i, jj), field.mul(c, A.at(j, jj)));
        }
    }
    return det;
}

// Cofactor determinant and adjugate over any commutative ring (small n only).
template <class R>
typename R::Elem det_cofactor(const R& ring, const Mat<R>& A)
{
    check(A.rows == A.cols, ErrKind::Internal, "determinant of non-square matrix");
    const int n = A.rows;
    if (n == 0) return ring.one();
    if (n == 1) return A.at(0, 0);
    auto acc = ring.zero();
    for (int j = 0; j < n; ++j) {
        if (ring.is_zero(A.at(0, j))) continue;
        Mat<R> minor = mat_zero(ring, n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int jj = 0; jj < n; ++jj) {
                if (jj == j) continue;
                minor.at(i - 1, cc++) = A.at(i, jj);
            }
        }
        auto term = ring.mul(A.at(0, j), det_cofactor(ring, minor));
        acc = (j % 2 == 0) ? ring.add(acc, term) : ring.sub(acc, term);
    }
    return acc;
}

template <class R>
Mat<R> adjugate(const R& ring, const Mat<R>& A)
{
    const int n = A.rows;
    auto adj = mat_zero(ring, n, n);
    if (n == 1) {
        adj.at(0, 0) = ring.one();
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat<R> minor = mat_zero(ring, n - 1, n - 1);
            int rr = 0;
            for (int ii = 0; ii < n; ++ii) {
                if (ii == i) continue;
                int cc = 0;
                for (int jj = 0; jj < n; ++jj) {
                    if (jj == j) continue;
                    minor.at(rr, cc++) = A.at(ii, jj);
                }
                ++rr;
            }
            auto c = det_cofactor(ring, minor);
            if ((i + j) % 2 == 1) c = ring.neg(c);
            adj.at(j, i) = c; // transpose of cofactors
        }
    return adj;
}

// ---------------------------------------------------------------------------
// Euclidean domains backing the Smith diagonalization (Z and k[t]).
// ---------------------------------------------------------------------------
struct ZDom {
    using El = BigInt;
    El zero() const { return 0; }
    El one() const { return 1; }
    bool is_zero(const El& a) const { return a == 0; }
    El add(const El& a, const El& b) const { return a + b; }
    El sub(const El& a, const El& b) const { return a - b; }
    El mul(const El& a, const El& b) const { return a * b; }
    El neg(const El& a) const { return -a; }
    El quot(const El& a, const El& b) const { return a / b; } // truncated
    El rem(const El& a, const El& b) const { return a % b; }
    bool divides(const El& a, const El& b) const { return b % a == 0; }
    El exact_div(const El& a, const El& b) const { return a / b; }
    unsigned val(const El& a, const El& p) const { return valuation(a, p); }
};

struct FpTDom {
    Fp fp;
    using El = UniPoly<Fp>;
    El zero() const { return {}; }
    El one() const { return poly_one(fp); }
    bool is_zero(const El& a) const { return a.is_zero(); }
    El add(const El& a, const El& b) const { return poly_add(fp, a, b); }
    El sub(const El& a, const El& b) const { return poly_sub(fp, a, b); }
    El mul(const El& a, const El& b) const { return poly_mul(fp, a, b); }
    El neg(const El& a) const { return poly_neg(fp, a); }
    El quot(const El& a, const El& b) const { return poly_divmod(fp, a, b).quot; }
    El rem(const El& a, const El& b) const { return poly_divmod(fp, a, b).rem; }
    bool divides(const El& a, const El& b) const { return poly_divmod(fp, b, a).rem.is_zero(); }
    El exact_div(const El& b, const El& a) const { return poly_div_exact(fp, b, a); }
    // t-adic valuation: index of the lowest nonzero coefficient.
    unsigned val(const El& a, const El&) const
    {
        for (size_t i = 0; i < a.c.size(); ++i)
            if (!fp.is_zero(a.c[i])) return static_cast<unsigned>(i);
        fail_internal("t-valuation of zero polynomial");
    }
};

// Diagonalization D = U * A * V over a Euclidean domain (not full Smith form:
// no divisibility chain, which solving does not need).
template <class Dom>
struct Diagonalization {
    std::vector<std::vector<typename Dom::El>> U, V; // square, invertible
    std::vector<typename Dom::El> diag;              // entries d_0..d_{k-1}, k = min(m,n)
    int rank = 0;                                    // nonzero diagonal entries come first
};

template <class Dom>
Diagonalization<Dom> diagonalize(const Dom& dom, std::vector<std::vector<typename Dom::El>> A)
{
    const int m = static_cast<int>(A.size());
    const int n = m ? static_cast<int>(A[0].size()) : 0;
    auto ident = [&](int k) {
        std::vector<std::vector<typename Dom::El>> I(k, std::vector<typename Dom::El>(k, dom.zero()));
        for (int i = 0; i < k; ++i) I[i][i] = dom.one();
        return I;
    };
    Diagonalization<Dom> out;
    out.U = ident(m);
    out.V = ident(n);
    auto row_sub = [&](int i, int k, const typename Dom::El& q) { // row_i -= q*row_k
        for (int j = 0; j < n; ++j) A[i][j] = dom.sub(A[i][j], dom.mul(q, A[k][j]));
        for (int j = 0; j < m; ++j) out.U[i][j] = dom.sub(out.U[i][j], dom.mul(q, out.U[k][j]));
    };
    auto col_sub = [&](int j, int k, const typename Dom::El& q) { // col_j -= q*col_k
        for (int i = 0; i < m; ++i) A[i][j] = dom.sub(A[i][j], dom.mul(q, A[i][k]));
        for (int i = 0; i < n; ++i) out.V[i][j] = dom.sub(out.V[i][j], dom.mul(q, out.V[i][k]));
    };
    auto row_swap = [&](int i, int k) {
        std::swap(A[i], A[k]);
        std::swap(out.U[i], out.U[k]);
    };
    auto col_swap = [&](int j, int k) {
        for (int i = 0; i < m; ++i) std::swap(A[i][j], A[i][k]);
        for (int i = 0; i < n; ++i) std::swap(out.V[i][j], out.V[i][k]);
    };

    int k = 0;
    while (k < m && k < n) {
        int pi = -1, pj = -1;
        for (int i = k; i < m && pi < 0; ++i)
            for (int j = k; j < n; ++j)
                if (!dom.is_zero(A[i][j])) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        if (pi != k) row_swap(pi, k);
        if (pj != k) col_swap(pj, k);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = k + 1; i < m; ++i) {
                if (dom.is_zero(A[i][k])) continue;
                auto q = dom.quot(A[i][k], A[k][k]);
                row_sub(i, k, q);
                if (!dom.is_zero(A[i][k])) { // remainder became the smaller pivot
                    row_swap(i, k);
                    clean = false;
                }
            }
            for (int j = k + 1; j < n; ++j) {
                if (dom.is_zero(A[k][j])) continue;
                auto q = dom.quot(A[k][j], A[k][k]);
                col_sub(j, k, q);
                if (!dom.is_zero(A[k][j])) {
                    col_swap(j, k);
                    clean = false;
                }
            }
        }
        ++k;
    }
    out.rank = k;
    for (int i = 0; i < std::min(m, n); ++i) out.diag.push_back(A[i][i]);
    return out;
}

namespace detail {

// Glue between a concrete ring and the Euclidean domain under it.
template <class R>
struct EuclGlue;

template <>
struct EuclGlue<ZGlobal> {
    using Dom = ZDom;
    static Dom dom(const ZGlobal&) { return {}; }
    static BigInt row_clear(const ZGlobal&, std::vector<BigInt>&) { return 1; } // already integral
    static BigInt to_dom(const ZGlobal&, const BigInt& x) { return x; }
    static BigInt from_dom(const ZGlobal&, const BigInt& x) { return x; }
};

template <>
struct EuclGlue<KtGlobal> {
    using Dom = FpTDom;
    static Dom dom(const KtGlobal& r) { return {r.fp}; }
    static UniPoly<Fp> to_dom(const KtGlobal&, const UniPoly<Fp>& x) { return x; }
    static UniPoly<Fp> from_dom(const KtGlobal&, const UniPoly<Fp>& x) { return x; }
};

template <>
struct EuclGlue<ZLocal> {
    using Dom = ZDom;
    static Dom dom(const ZLocal&) { return {}; }
    static BigInt prime(const ZLocal& r) { return r.p; }
    // Scale a row of fractions by a unit of the localization to make it integral.
    static void make_integral(const ZLocal&, std::vector<Rat>& row, std::vector<BigInt>& out)
    {
        BigInt l = 1;
        for (auto& x : row) l = l / gcd_int(l, den(x)) * den(x);
        out.clear();
        for (auto& x : row) out.push_back(num(x) * (l / den(x)));
    }
    static Rat fraction(const ZLocal&, const BigInt& n, const BigInt& d) { return Rat(n) / Rat(d); }
    static Rat from_dom(const ZLocal&, const BigInt& x) { return Rat(x); }
};

template <>
struct EuclGlue<KtLocal> {
    using Dom = FpTDom;
    static Dom dom(const KtLocal& r) { return {r.fp}; }
    static UniPoly<Fp> prime(const KtLocal& r) { return poly_monomial(r.fp, r.fp.one(), 1); }
    static void make_integral(const KtLocal& r, std::vector<FpFrac>& row, std::vector<UniPoly<Fp>>& out)
    {
        auto l = poly_one(r.fp);
        for (auto& x : row) {
            auto g = gcd_monic(r.fp, l, x.d);
            l = poly_mul(r.fp, poly_div_exact(r.fp, l, g), x.d);
        }
        out.clear();
        for (auto& x : row) out.push_back(poly_mul(r.fp, x.n, poly_div_exact(r.fp, l, x.d)));
    }
    static FpFrac fraction(const KtLocal& r, const UniPoly<Fp>& n, const UniPoly<Fp>& d)
    {
        return fpfrac_normalize(r.fp, n, d);
    }
    static FpFrac from_dom(const KtLocal& r, const UniPoly<Fp>& x) { return {x, poly_one(r.fp)}; }
};

} // namespace detail

// Exact solve over the global bases Z and k[t].
template <class R>
SolveResult<R> solve_euclidean(const R& ring, const Mat<R>& A, const Vec<R>& b, GlobalEuclSolve)
{
    using Glue = detail::EuclGlue<R>;
    auto dom = Glue::dom(ring);
    const int m = A.rows, n = A.cols;
    std::vector<std::vector<typename Glue::Dom::El>> rows(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) rows[i].push_back(Glue::to_dom(ring, A.at(i, j)));
    auto d = diagonalize(dom, rows);

    std::vector<typename Glue::Dom::El> ub(m, dom.zero());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            ub[i] = dom.add(ub[i], dom.mul(d.U[i][j], Glue::to_dom(ring, b[j])));

    SolveResult<R> res;
    bool ok = true;
    std::vector<typename Glue::Dom::El> y(n, dom.zero());
    for (int i = 0; i < m && ok; ++i) {
        if (i < d.rank) {
            if (dom.is_zero(ub[i])) continue;
            if (!dom.divides(d.diag[i], ub[i])) {
                ok = false;
                break;
            }
            y[i] = dom.exact_div(ub[i], d.diag[i]);
        } else if (!dom.is_zero(ub[i])) {
            ok = false;
        }
    }
    if (ok) {
        Vec<R> x(n, ring.zero());
        for (int i = 0; i < n; ++i) {
            auto acc = dom.zero();
            for (int j = 0; j < n; ++j) acc = dom.add(acc, dom.mul(d.V[i][j], y[j]));
            x[i] = Glue::from_dom(ring, acc);
        }
        res.solution = std::move(x);
    }
    for (int j = d.rank; j < n; ++j) {
        Vec<R> s(n, ring.zero());
        for (int i = 0; i < n; ++i) s[i] = Glue::from_dom(ring, d.V[i][j]);
        res.syzygies.push_back(std::move(s));
    }
    return res;
}

// Solve over Z_(p) / k[t]_(t): clear denominators, diagonalize over the PID,
// and decide divisibility by p-valuation only.
template <class R>
SolveResult<R> solve_euclidean(const R& ring, const Mat<R>& A, const Vec<R>& b, LocalizedEuclSolve)
{
    using Glue = detail::EuclGlue<R>;
    auto dom = Glue::dom(ring);
    auto prime = Glue::prime(ring);
    const int m = A.rows, n = A.cols;
    std::vector<std::vector<typename Glue::Dom::El>> rows(m);
    std::vector<typename Glue::Dom::El> bi(m);
    for (int i = 0; i < m; ++i) {
        std::vector<typename R::Elem> row;
        for (int j = 0; j < n; ++j) row.push_back(A.at(i, j));
        row.push_back(b[i]);
        std::vector<typename Glue::Dom::El> cleared;
        Glue::make_integral(ring, row, cleared);
        bi[i] = cleared.back();
        cleared.pop_back();
        rows[i] = std::move(cleared);
    }
    auto d = diagonalize(dom, rows);

    std::vector<typename Glue::Dom::El> ub(m, dom.zero());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) ub[i] = dom.add(ub[i], dom.mul(d.U[i][j], bi[j]));

    SolveResult<R> res;
    bool ok = true;
    Vec<R> y(n, ring.zero());
    for (int i = 0; i < m && ok; ++i) {
        if (i < d.rank) {
            if (dom.is_zero(ub[i])) continue;
            if (dom.val(d.diag[i], prime) > dom.val(ub[i], prime)) {
                ok = false; // p-adic obstruction
                break;
            }
            y[i] = Glue::fraction(ring, ub[i], d.diag[i]);
        } else if (!dom.is_zero(ub[i])) {
            ok = false;
        }
    }
    if (ok) {
        Vec<R> x(n, ring.zero());
        for (int i = 0; i < n; ++i) {
            auto acc = ring.zero();
            for (int j = 0; j < n; ++j)
                acc = ring.add(acc, ring.mul(Glue::from_dom(ring, d.V[i][j]), y[j]));
            x[i] = acc;
        }
        res.solution = std::move(x);
    }
    // Syzygies of the cleared system generate the solution module of the
    // localized one (localization is flat).
    for (int j = d.rank; j < n; ++j) {
        Vec<R> s(n, ring.zero());
        for (int i = 0; i < n; ++i) s[i] = Glue::from_dom(ring, d.V[i][j]);
        res.syzygies.push_back(std::move(s));
    }
    return res;
}

template <class R>
SolveResult<R> solve_euclidean(const R& ring, const Mat<R>& A, const Vec<R>& b, FieldSolve)
{
    return gauss_solve(ring, A, b);
}

template <class R>
SolveResult<R> solve_euclidean(const R& ring, const Mat<R>& A, const Vec<R>& b, LocalGaussSolve)
{
    return gauss_solve(ring, A, b);
}

// Entry point: exact solution + syzygy generators over any supported instance.
template <class R>
SolveResult<R> solve_and_syzygies(const R& ring, const Mat<R>& A, const Vec<R>& b)
{
    return solve_euclidean(ring, A, b, typename R::solver_tag{});
}

} // namespace etale
