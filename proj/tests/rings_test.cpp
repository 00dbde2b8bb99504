#include "etale/factor.hpp"
#include "etale/linalg.hpp"
#include "etale/rings.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace etale;

TEST(ZLocalRing, InvertibilityDecider)
{
    ZLocal r(5);
    EXPECT_FALSE(r.try_inv(Rat(10)).has_value()); // 5 divides 10
    auto inv = r.try_inv(Rat(7) / 3);
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(*inv, Rat(3) / 7);
    EXPECT_TRUE(r.eq(r.mul(Rat(7) / 3, *inv), r.one()));
}

TEST(FieldRings, EveryNonzeroInvertible)
{
    Fp f5(5);
    for (BigInt x = 1; x < 5; ++x) {
        auto inv = f5.try_inv(x);
        ASSERT_TRUE(inv.has_value());
        EXPECT_TRUE(f5.is_one(f5.mul(x, *inv)));
    }
    QRing q;
    auto inv = q.try_inv(Rat(-22) / 7);
    ASSERT_TRUE(inv.has_value());
    EXPECT_TRUE(q.is_one(q.mul(Rat(-22) / 7, *inv)));
}

TEST(ZLocalRing, ResidueMap)
{
    ZLocal r(5);
    // oracle: brute-force inverse of 3 mod 5
    BigInt inv3 = 0;
    for (BigInt c = 1; c < 5; ++c)
        if ((3 * c) % 5 == 1) inv3 = c;
    EXPECT_EQ(r.residue(Rat(7) / 3), mod_norm(7 * inv3, 5));
    EXPECT_EQ(r.residue(Rat(5)), 0);
    // homomorphism + section on random samples
    std::mt19937 rng(7);
    Fp k = r.residue_field();
    for (int i = 0; i < 1000; ++i) {
        long long a = static_cast<long long>(rng() % 2001) - 1000;
        long long b = static_cast<long long>(rng() % 50) + 1;
        if (b % 5 == 0) ++b;
        Rat x = Rat(a) / b;
        Rat y = Rat(static_cast<long long>(rng() % 2001) - 1000) / 7;
        EXPECT_EQ(r.residue(r.add(x, y)), k.add(r.residue(x), r.residue(y)));
        EXPECT_EQ(r.residue(r.mul(x, y)), k.mul(r.residue(x), r.residue(y)));
        bool invertible = r.try_inv(x).has_value();
        EXPECT_EQ(invertible, !k.is_zero(r.residue(x)));
        if (invertible) EXPECT_TRUE(r.eq(r.mul(x, *r.try_inv(x)), r.one()));
    }
    for (BigInt a = 0; a < 5; ++a) EXPECT_EQ(r.residue(r.lift(a)), a);
}

TEST(KtLocalRing, ResidueAndInverse)
{
    KtLocal r(5);
    auto t = *r.parse_const("t");
    auto x = r.add(t, r.from_int(2)); // t + 2, invertible
    auto inv = r.try_inv(x);
    ASSERT_TRUE(inv.has_value());
    EXPECT_TRUE(r.eq(r.mul(x, *inv), r.one()));
    EXPECT_EQ(r.residue(x), 2);
    EXPECT_FALSE(r.try_inv(r.mul(t, x)).has_value());
    EXPECT_EQ(r.residue(r.lift(3)), 3);
    // denominators with nonzero constant term stay valid
    auto y = r.mul(x, *r.try_inv(r.add(t, r.from_int(1))));
    EXPECT_TRUE(r.valid(y));
}

TEST(LinearSolver, FieldInstance)
{
    Fp f5(5);
    auto A = mat_zero(f5, 2, 2);
    A.at(0, 0) = 1;
    A.at(0, 1) = 2;
    A.at(1, 1) = 1;
    auto res = solve_and_syzygies(f5, A, Vec<Fp>{0, 0});
    ASSERT_TRUE(res.solution.has_value());
    EXPECT_TRUE(vec_is_zero(f5, *res.solution));
    EXPECT_TRUE(res.syzygies.empty());
}

TEST(LinearSolver, ZLocalScalar)
{
    ZLocal r(5);
    auto A = mat_zero(r, 1, 1);
    A.at(0, 0) = Rat(5);
    auto res = solve_and_syzygies(r, A, Vec<ZLocal>{Rat(10)});
    ASSERT_TRUE(res.solution.has_value());
    EXPECT_EQ((*res.solution)[0], Rat(2));
    EXPECT_TRUE(res.syzygies.empty());
    // 3x = 1 is solvable in Z_(5)
    A.at(0, 0) = Rat(3);
    res = solve_and_syzygies(r, A, Vec<ZLocal>{Rat(1)});
    ASSERT_TRUE(res.solution.has_value());
    EXPECT_EQ((*res.solution)[0], Rat(1) / 3);
    // 5x = 1 is not
    A.at(0, 0) = Rat(5);
    res = solve_and_syzygies(r, A, Vec<ZLocal>{Rat(1)});
    EXPECT_FALSE(res.solution.has_value());
}

TEST(LinearSolver, ZLocalSyzygy)
{
    ZLocal r(5);
    auto A = mat_zero(r, 1, 2);
    A.at(0, 0) = Rat(1);
    A.at(0, 1) = Rat(1);
    auto res = solve_and_syzygies(r, A, Vec<ZLocal>{Rat(1)});
    ASSERT_TRUE(res.solution.has_value());
    EXPECT_EQ(r.add((*res.solution)[0], (*res.solution)[1]), Rat(1));
    ASSERT_EQ(res.syzygies.size(), 1u);
    auto& s = res.syzygies[0];
    EXPECT_EQ(r.add(s[0], s[1]), Rat(0)); // multiple of (1,-1)
    EXPECT_FALSE(r.is_zero(s[0]));
}

TEST(LinearSolver, RandomizedEquationCheck)
{
    std::mt19937 rng(11);
    ZLocal zloc(5);
    Fp f7(7);
    for (int iter = 0; iter < 50; ++iter) {
        int m = 1 + static_cast<int>(rng() % 3), n = 1 + static_cast<int>(rng() % 3);
        auto A = mat_zero(zloc, m, n);
        Vec<ZLocal> x0(n);
        for (auto& v : x0) v = Rat(static_cast<long long>(rng() % 11) - 5);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) A.at(i, j) = Rat(static_cast<long long>(rng() % 11) - 5);
        auto b = mat_vec(zloc, A, x0);
        auto res = solve_and_syzygies(zloc, A, b);
        ASSERT_TRUE(res.solution.has_value());
        EXPECT_TRUE(vec_is_zero(zloc, vec_sub(zloc, mat_vec(zloc, A, *res.solution), b)));
        for (auto& s : res.syzygies)
            EXPECT_TRUE(vec_is_zero(zloc, mat_vec(zloc, A, s)));

        auto B = mat_zero(f7, m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) B.at(i, j) = f7.from_bigint(BigInt(rng() % 7));
        Vec<Fp> y0(n);
        for (auto& v : y0) v = f7.from_bigint(BigInt(rng() % 7));
        auto c = mat_vec(f7, B, y0);
        auto resf = solve_and_syzygies(f7, B, c);
        ASSERT_TRUE(resf.solution.has_value());
        EXPECT_TRUE(vec_is_zero(f7, vec_sub(f7, mat_vec(f7, B, *resf.solution), c)));
        for (auto& s : resf.syzygies)
            EXPECT_TRUE(vec_is_zero(f7, mat_vec(f7, B, s)));
    }
}

TEST(UniPolyOps, DivmodMonic)
{
    ZLocal r(5);
    auto X3 = poly_monomial(r, r.one(), 3);
    auto q = poly_of(r, {Rat(0), Rat(-1), Rat(1)}); // X^2 - X
    auto dm = divmod_monic(r, X3, q);
    EXPECT_TRUE(poly_eq(r, dm.quot, poly_of(r, {Rat(1), Rat(1)}))); // X + 1
    EXPECT_TRUE(poly_eq(r, dm.rem, poly_of(r, {Rat(0), Rat(1)})));  // X
    // reconstruction oracle
    EXPECT_TRUE(poly_eq(r, X3, poly_add(r, poly_mul(r, dm.quot, q), dm.rem)));

    auto same = divmod_monic(r, q, q);
    EXPECT_TRUE(poly_eq(r, same.quot, poly_one(r)));
    EXPECT_TRUE(same.rem.is_zero());

    auto c = divmod_monic(r, poly_const(r, Rat(3)), q);
    EXPECT_TRUE(c.quot.is_zero());
    EXPECT_TRUE(poly_eq(r, c.rem, poly_const(r, Rat(3))));
}

TEST(UniPolyOps, DivmodRoundTripRandom)
{
    std::mt19937 rng(3);
    ZLocal r(5);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<Rat> fc, qc;
        int df = static_cast<int>(rng() % 6), dq = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i <= df; ++i) fc.push_back(Rat(static_cast<long long>(rng() % 19) - 9));
        for (int i = 0; i < dq; ++i) qc.push_back(Rat(static_cast<long long>(rng() % 19) - 9));
        qc.push_back(Rat(1));
        auto f = poly_of(r, fc), q = poly_of(r, qc);
        auto dm = divmod_monic(r, f, q);
        EXPECT_LT(dm.rem.degree(), q.degree());
        EXPECT_TRUE(poly_eq(r, f, poly_add(r, poly_mul(r, dm.quot, q), dm.rem)));
    }
}

TEST(UniPolyOps, GcdMonic)
{
    Fp f5(5);
    auto a = poly_of(f5, {f5.from_int(-1), f5.zero(), f5.one()}); // X^2 - 1
    auto b = poly_of(f5, {f5.zero(), f5.from_int(-1), f5.one()}); // X^2 - X
    auto g = gcd_monic(f5, a, b);
    EXPECT_TRUE(poly_eq(f5, g, poly_of(f5, {f5.from_int(-1), f5.one()}))); // X - 1

    auto f = poly_of(f5, {f5.from_int(2), f5.from_int(4)});
    EXPECT_TRUE(poly_eq(f5, gcd_monic(f5, f, f), poly_make_monic(f5, f)));

    auto c = poly_of(f5, {f5.zero(), f5.from_int(-1), f5.zero(), f5.one()}); // X^3 - X
    auto d = poly_of(f5, {f5.zero(), f5.from_int(-1), f5.one()});            // X(X-1)
    EXPECT_TRUE(poly_eq(f5, gcd_monic(f5, c, d), d));

    // gcd divides both, Bezout identity holds for coprime pair
    auto e = poly_ext_gcd(f5, a, d);
    auto lhs = poly_add(f5, poly_mul(f5, e.a, a), poly_mul(f5, e.b, d));
    EXPECT_TRUE(poly_eq(f5, lhs, e.g));
}

TEST(UniPolyOps, Separability)
{
    Fp f5(5);
    auto p1 = poly_of(f5, {f5.from_int(-2), f5.zero(), f5.one()}); // X^2 - 2
    auto s1 = is_separable(f5, p1);
    ASSERT_TRUE(s1.separable);
    auto id = poly_add(f5, poly_mul(f5, s1.bezout_a, p1),
                       poly_mul(f5, s1.bezout_b, poly_derivative(f5, p1)));
    EXPECT_TRUE(poly_eq(f5, id, poly_one(f5)));

    auto p2 = poly_monomial(f5, f5.one(), 2); // X^2
    EXPECT_FALSE(is_separable(f5, p2).separable);

    auto p3 = poly_monomial(f5, f5.one(), 1); // X
    EXPECT_TRUE(is_separable(f5, p3).separable);
}

TEST(Factorization, OverFp)
{
    Fp f7(7);
    auto p = poly_of(f7, {f7.from_int(-2), f7.zero(), f7.one()}); // X^2 - 2
    auto fl = field_factor(f7, p);
    ASSERT_EQ(fl.factors.size(), 2u);
    // oracle: quadratic residues mod 7 -> roots 3 and 4
    std::vector<BigInt> roots;
    for (BigInt x = 0; x < 7; ++x)
        if ((x * x - 2) % 7 == 0) roots.push_back(x);
    ASSERT_EQ(roots.size(), 2u);
    for (auto& [fac, m] : fl.factors) {
        EXPECT_EQ(m, 1u);
        ASSERT_EQ(fac.degree(), 1);
        auto root = f7.neg(fac.c[0]);
        EXPECT_TRUE(root == roots[0] || root == roots[1]);
    }

    Fp f5(5);
    auto q = poly_of(f5, {f5.from_int(-2), f5.zero(), f5.one()});
    auto fl5 = field_factor(f5, q);
    ASSERT_EQ(fl5.factors.size(), 1u); // irreducible: squares mod 5 are {0,1,4}
    EXPECT_EQ(fl5.factors[0].first.degree(), 2);

    auto r = poly_of(f5, {f5.zero(), f5.from_int(-1), f5.one()}); // X^2 - X
    auto flr = field_factor(f5, r);
    ASSERT_EQ(flr.factors.size(), 2u);
    EXPECT_EQ(flr.factors[0].first.degree(), 1);
}

TEST(Factorization, RandomFpRemultiplies)
{
    std::mt19937 rng(23);
    for (BigInt p : {2, 3, 5, 7}) {
        Fp fp(p);
        for (int iter = 0; iter < 40; ++iter) {
            std::vector<Fp::Elem> cs;
            int d = 1 + static_cast<int>(rng() % 6);
            for (int i = 0; i < d; ++i) cs.push_back(fp.from_bigint(BigInt(rng() % 97)));
            cs.push_back(fp.one());
            auto f = poly_of(fp, std::move(cs));
            auto fl = field_factor(fp, f); // includes internal re-multiplication check
            for (auto& [fac, m] : fl.factors) {
                EXPECT_TRUE(poly_is_monic(fp, fac));
                if (fac.degree() == 1) {
                    auto root = fp.neg(fac.c[0]);
                    EXPECT_TRUE(fp.is_zero(poly_eval(fp, f, root)));
                }
            }
        }
    }
}

TEST(Factorization, OverQ)
{
    QRing q;
    // (X^2 - 2)(X - 1/2), rational root plus irreducible quadratic
    auto f = poly_mul(q, poly_of(q, {Rat(-2), Rat(0), Rat(1)}), poly_of(q, {Rat(-1) / 2, Rat(1)}));
    auto fl = field_factor(q, f);
    ASSERT_EQ(fl.factors.size(), 2u);
    // quartic that splits into two irreducible quadratics (needs Kronecker)
    auto g = poly_mul(q, poly_of(q, {Rat(1), Rat(0), Rat(1)}), poly_of(q, {Rat(2), Rat(2), Rat(1)}));
    auto fg = field_factor(q, g);
    ASSERT_EQ(fg.factors.size(), 2u);
    EXPECT_EQ(fg.factors[0].first.degree(), 2);
    EXPECT_EQ(fg.factors[1].first.degree(), 2);
}

TEST(GlobalBases, IdealMembership)
{
    ZGlobal z;
    auto c = z.one_in_ideal({BigInt(6), BigInt(10), BigInt(15)});
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ((*c)[0] * 6 + (*c)[1] * 10 + (*c)[2] * 15, 1);
    EXPECT_FALSE(z.one_in_ideal({BigInt(6), BigInt(10)}).has_value());

    KtGlobal kt(5);
    auto t = *kt.parse_const("t");
    auto c2 = kt.one_in_ideal({t, kt.add(t, kt.one())}); // (t, t+1) = 1
    ASSERT_TRUE(c2.has_value());
    auto sum = kt.add(kt.mul((*c2)[0], t), kt.mul((*c2)[1], kt.add(t, kt.one())));
    EXPECT_TRUE(kt.is_one(sum));
}

TEST(GlobalBases, ExactIntegerSolve)
{
    ZGlobal z;
    auto A = mat_zero(z, 2, 3);
    A.at(0, 0) = 2;
    A.at(0, 1) = 4;
    A.at(0, 2) = 6;
    A.at(1, 0) = 0;
    A.at(1, 1) = 2;
    A.at(1, 2) = 2;
    auto res = solve_and_syzygies(z, A, Vec<ZGlobal>{BigInt(10), BigInt(4)});
    ASSERT_TRUE(res.solution.has_value());
    EXPECT_TRUE(vec_is_zero(z, vec_sub(z, mat_vec(z, A, *res.solution), Vec<ZGlobal>{BigInt(10), BigInt(4)})));
    ASSERT_EQ(res.syzygies.size(), 1u);
    EXPECT_TRUE(vec_is_zero(z, mat_vec(z, A, res.syzygies[0])));
    // 2x = 1 has no integer solution
    auto B = mat_zero(z, 1, 1);
    B.at(0, 0) = 2;
    EXPECT_FALSE(solve_and_syzygies(z, B, Vec<ZGlobal>{BigInt(1)}).solution.has_value());
}
