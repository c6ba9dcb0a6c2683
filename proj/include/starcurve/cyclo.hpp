#pragma once

#include "starcurve/arith.hpp"
#include "starcurve/cusps.hpp"

#include <gmpxx.h>
#include <map>
#include <string>
#include <vector>

namespace starcurve {

using IntPoly = std::vector<mpz_class>;

/* coefficients from the constant term upward */
IntPoly cyclotomic_poly(i64 n);

/* an element of Z[zeta_L] modulo Phi_L, power basis coefficients */
struct CyclotomicElement {
    i64 L = 1;
    std::vector<mpz_class> coeffs;

    static CyclotomicElement zero(i64 L);
    static CyclotomicElement from_exponents(i64 L, const std::vector<std::pair<i64, i64>> &terms);
    bool is_zero() const;
    std::string str() const;
};

mpz_class cyclo_norm(const CyclotomicElement &S);
std::vector<mpq_class> cyclo_inverse(const CyclotomicElement &S);
i64 smallest_integer_multiple(const CyclotomicElement &S);
CyclotomicElement galois_conjugate(const CyclotomicElement &S, i64 u);

struct SignVector {
    i64 M = 1;
    std::map<i64, int> eps;

    int sign_of(i64 d_M) const;
};

enum class RootConvention { Coherent, CuspMatrix, Exhaustive };

/* (sign, n, k): sign * exp(2 pi i k / n) */
struct RootTerm {
    i64 d;
    int sign;
    i64 n;
    i64 k;
};

std::vector<RootTerm> root_terms(i64 N, i64 M, const Cusp &c, const SignVector &signs, RootConvention conv);
CyclotomicElement assemble(const std::vector<RootTerm> &terms);
CyclotomicElement root_sum(i64 N, i64 M, const Cusp &c, const SignVector &signs);

struct CuspIntegrality {
    Cusp cusp;
    std::vector<i64> hall_set;
    std::vector<RootTerm> terms;
    CyclotomicElement sum;
    i64 multiple;
};

struct IntegralityReport {
    i64 N = 0, M = 0;
    RootConvention convention = RootConvention::CuspMatrix;
    std::vector<CuspIntegrality> cusps;
    i64 m = 1;
    i64 m_prime = 2;
};

i64 extended_factor(i64 m);
IntegralityReport integrality_factor(i64 N, i64 M, const SignVector &signs, RootConvention conv = RootConvention::CuspMatrix);
i64 integrality_factor_gcd(i64 N, i64 M, const std::vector<SignVector> &records, RootConvention conv = RootConvention::CuspMatrix);

}
