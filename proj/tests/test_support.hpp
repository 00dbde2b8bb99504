#pragma once

#include "etale/kalgebra.hpp"

#include <random>

namespace etale::testing {

// Random finite F_p-algebra: k[X]/(f) or a small product of two such.
inline FiniteKAlgebra<Fp> random_fp_algebra(std::mt19937& rng, const Fp& fp, int max_dim = 5)
{
    auto random_quotient = [&](int dmax) {
        int d = 1 + static_cast<int>(rng() % dmax);
        std::vector<Fp::Elem> cs;
        for (int i = 0; i < d; ++i) cs.push_back(fp.from_bigint(BigInt(rng() % 23)));
        cs.push_back(fp.one());
        return quotient_algebra(fp, poly_of(fp, std::move(cs)));
    };
    if (rng() % 3 == 0 && max_dim >= 2) {
        auto A = random_quotient(max_dim - 1);
        auto B = random_quotient(std::max(1, max_dim - A.dim));
        return product_algebra(A, B);
    }
    return random_quotient(max_dim);
}

inline Vec<Fp> random_element(std::mt19937& rng, const FiniteKAlgebra<Fp>& A)
{
    Vec<Fp> v;
    for (int i = 0; i < A.dim; ++i) v.push_back(A.field.from_bigint(BigInt(rng() % 97)));
    return v;
}

// Independent oracle for dim A[1/s]: the rank of multiplication by s^dim
// (the image of s^dim A is the stable part where s acts invertibly).
template <class F>
int saturation_dim(const FiniteKAlgebra<F>& A, const Vec<F>& s)
{
    auto M = A.mult_matrix(A.power(s, static_cast<unsigned>(A.dim)));
    return mat_rank(A.field, M);
}

} // namespace etale::testing
