#include "starcurve/cyclo.hpp"
#include "starcurve/exceptional.hpp"

#include <sstream>
#include <stdexcept>

namespace starcurve {

namespace {

IntPoly poly_divexact(const IntPoly &num, const IntPoly &den)
{
    IntPoly r = num;
    size_t dn = den.size() - 1;
    IntPoly q(num.size() - dn, 0);
    for (size_t i = q.size(); i-- > 0;) {
        mpz_class c = r[i + dn] / den[dn];
        q[i] = c;
        for (size_t j = 0; j <= dn; ++j)
            r[i + j] -= c * den[j];
    }
    for (auto &x : r)
        if (x != 0)
            throw std::logic_error("cyclotomic_poly: inexact division");
    return q;
}

/* reduce a polynomial modulo a monic polynomial */
std::vector<mpz_class> reduce_mod(std::vector<mpz_class> f, const IntPoly &phi)
{
    size_t n = phi.size() - 1;
    for (size_t i = f.size(); i-- > n;) {
        mpz_class c = f[i];
        if (c == 0)
            continue;
        for (size_t j = 0; j <= n; ++j)
            f[i - n + j] -= c * phi[j];
    }
    f.resize(n, 0);
    return f;
}

std::vector<std::vector<mpq_class>> mult_matrix(const CyclotomicElement &S)
{
    IntPoly phi = cyclotomic_poly(S.L);
    size_t n = phi.size() - 1;
    std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(n));
    std::vector<mpz_class> col = S.coeffs;
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < n; ++i)
            A[i][j] = col[i];
        col.insert(col.begin(), mpz_class(0));
        col = reduce_mod(col, phi);
    }
    return A;
}

/* Gaussian elimination; returns det and solves A u = rhs in place */
mpq_class eliminate(std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> *rhs)
{
    size_t n = A.size();
    mpq_class det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && A[piv][c] == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != c) {
            std::swap(A[piv], A[c]);
            if (rhs)
                std::swap((*rhs)[piv], (*rhs)[c]);
            det = -det;
        }
        det *= A[c][c];
        for (size_t r = 0; r < n; ++r) {
            if (r == c || A[r][c] == 0)
                continue;
            mpq_class f = A[r][c] / A[c][c];
            for (size_t k = c; k < n; ++k)
                A[r][k] -= f * A[c][k];
            if (rhs)
                (*rhs)[r] -= f * (*rhs)[c];
        }
    }
    if (rhs)
        for (size_t r = 0; r < n; ++r)
            (*rhs)[r] /= A[r][r];
    return det;
}

}

IntPoly cyclotomic_poly(i64 n)
{
    if (n < 1)
        throw std::invalid_argument("cyclotomic_poly: n must be positive");
    IntPoly f(n + 1, 0);
    f[0] = -1;
    f[n] = 1;
    for (i64 d : divisors(n))
        if (d < n)
            f = poly_divexact(f, cyclotomic_poly(d));
    return f;
}

CyclotomicElement CyclotomicElement::zero(i64 L)
{
    CyclotomicElement z;
    z.L = L;
    z.coeffs.assign(euler_phi(L), 0);
    return z;
}

CyclotomicElement CyclotomicElement::from_exponents(i64 L, const std::vector<std::pair<i64, i64>> &terms)
{
    std::vector<mpz_class> full(L, 0);
    for (auto [c, k] : terms)
        full[mod(k, L)] += c;
    CyclotomicElement e;
    e.L = L;
    e.coeffs = reduce_mod(full, cyclotomic_poly(L));
    return e;
}

bool CyclotomicElement::is_zero() const
{
    for (auto &c : coeffs)
        if (c != 0)
            return false;
    return true;
}

std::string CyclotomicElement::str() const
{
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0)
            continue;
        if (!first)
            os << (coeffs[k] > 0 ? " + " : " - ");
        else if (coeffs[k] < 0)
            os << "-";
        mpz_class a = abs(coeffs[k]);
        if (k == 0)
            os << a;
        else {
            if (a != 1)
                os << a << "*";
            os << "z" << L;
            if (k > 1)
                os << "^" << k;
        }
        first = false;
    }
    return first ? "0" : os.str();
}

mpz_class cyclo_norm(const CyclotomicElement &S)
{
    mpq_class d = eliminate(mult_matrix(S), nullptr);
    return d.get_num();
}

std::vector<mpq_class> cyclo_inverse(const CyclotomicElement &S)
{
    if (S.is_zero())
        throw std::domain_error("cyclo_inverse: zero element");
    size_t n = S.coeffs.size();
    std::vector<mpq_class> rhs(n, 0);
    rhs[0] = 1;
    eliminate(mult_matrix(S), &rhs);
    return rhs;
}

i64 smallest_integer_multiple(const CyclotomicElement &S)
{
    if (S.is_zero())
        throw std::domain_error("smallest_integer_multiple: zero element has no finite multiple");
    mpz_class m = 1;
    for (auto &c : cyclo_inverse(S))
        mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), c.get_den_mpz_t());
    mpz_class nm = abs(cyclo_norm(S));
    if (nm % m != 0)
        throw std::logic_error("smallest_integer_multiple: multiple does not divide the norm");
    if (!m.fits_slong_p())
        throw std::overflow_error("smallest_integer_multiple: result exceeds 64 bits");
    return m.get_si();
}

CyclotomicElement galois_conjugate(const CyclotomicElement &S, i64 u)
{
    if (gcd(u, S.L) != 1)
        throw std::invalid_argument("galois_conjugate: exponent not coprime to L");
    std::vector<mpz_class> full(S.L, 0);
    for (size_t k = 0; k < S.coeffs.size(); ++k)
        full[mod(static_cast<i64>(k) * u, S.L)] += S.coeffs[k];
    CyclotomicElement e;
    e.L = S.L;
    e.coeffs = reduce_mod(full, cyclotomic_poly(S.L));
    return e;
}

int SignVector::sign_of(i64 d_M) const
{
    int s = 1;
    if (d_M == 1)
        return s;
    for (auto [p, e] : factorize(d_M).factors) {
        auto it = eps.find(p);
        if (it == eps.end())
            throw std::invalid_argument("SignVector: missing sign for prime " + std::to_string(p));
        s *= it->second;
    }
    return s;
}

namespace {

i64 hall_part(i64 n, i64 d)
{
    i64 r = 1;
    if (d == 1)
        return r;
    for (auto [p, e] : factorize(d).factors)
        r *= ipow(p, valuation(n, p));
    return r;
}

i64 lcm_checked(i64 a, i64 b)
{
    i128 r = static_cast<i128>(a / gcd(a, b)) * b;
    if (r > INT64_MAX)
        throw std::overflow_error("integrality factor exceeds 64 bits");
    return static_cast<i64>(r);
}

i64 mul_checked(i64 a, i64 b)
{
    i128 r = static_cast<i128>(a) * b;
    if (r > INT64_MAX || r < INT64_MIN)
        throw std::overflow_error("cusp matrix entry overflow");
    return static_cast<i64>(r);
}

/* exp(2 pi i k / n) attached to the width-one cusp a/b through W_{d_N} */
std::pair<i64, i64> matrix_phase(i64 N, i64 dN, const Cusp &c)
{
    if (dN == 1)
        return {1, 0};
    i64 x, y;
    al_matrix(N, dN, x, y);
    i64 W[2][2] = {{dN * x, y}, {N, dN}};
    i64 a = c.a, b = c.b;
    if (b == N)
        a = 1;
    i64 p = mul_checked(W[0][0], a) + mul_checked(W[0][1], b);
    i64 q = mul_checked(W[1][0], a) + mul_checked(W[1][1], b);
    i64 g = gcd(p, q);
    p /= g;
    q /= g;
    i64 al, be;
    egcd(p, q, al, be);
    i64 G1[2][2] = {{al, be}, {-q, p}};
    i64 ep, f;
    egcd(a, b, f, ep);
    ep = -ep;
    i64 G2[2][2] = {{a, ep}, {b, f}};
    i128 T[2][2], X[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            T[i][j] = static_cast<i128>(G1[i][0]) * W[0][j] + static_cast<i128>(G1[i][1]) * W[1][j];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            X[i][j] = T[i][0] * G2[0][j] + T[i][1] * G2[1][j];
    if (X[1][0] != 0 || X[0][0] != X[1][1])
        throw std::logic_error("matrix_phase: cusp matrix is not a scalar translation");
    if (X[0][0] < 0)
        for (auto &row : X)
            for (auto &v : row)
                v = -v;
    i64 r = static_cast<i64>(X[0][0]);
    i64 k = mod(static_cast<i64>(X[0][1] % r), r);
    i64 h = gcd(k, r);
    return {r / h, k / h};
}

}

std::vector<RootTerm> root_terms(i64 N, i64 M, const Cusp &c, const SignVector &signs, RootConvention conv)
{
    std::vector<RootTerm> out;
    for (i64 d : unramified_hall_set(N, M, c)) {
        RootTerm t;
        t.d = d;
        t.sign = signs.sign_of(hall_part(M, d));
        if (conv == RootConvention::CuspMatrix) {
            auto [n, k] = matrix_phase(N, hall_part(N, d), c);
            t.n = n;
            t.k = k;
        } else {
            t.n = gcd(c.b, d);
            t.k = t.n == 1 ? 0 : 1;
        }
        out.push_back(t);
    }
    return out;
}

CyclotomicElement assemble(const std::vector<RootTerm> &terms)
{
    i64 L = 1;
    for (auto &t : terms)
        L = lcm(L, t.n);
    std::vector<std::pair<i64, i64>> ex;
    for (auto &t : terms)
        ex.emplace_back(t.sign, t.k * (L / t.n));
    return CyclotomicElement::from_exponents(L, ex);
}

CyclotomicElement root_sum(i64 N, i64 M, const Cusp &c, const SignVector &signs)
{
    return assemble(root_terms(N, M, c, signs, RootConvention::Coherent));
}

i64 extended_factor(i64 m)
{
    i128 r = static_cast<i128>(m) * lcm(radical(m), 2);
    if (r > INT64_MAX)
        throw std::overflow_error("extended_factor: result exceeds 64 bits");
    return static_cast<i64>(r);
}

namespace {

void check_signs(i64 N, i64 M, const SignVector &signs)
{
    if (signs.M != M)
        throw std::invalid_argument("integrality_factor: sign vector level differs from M");
    for (auto [p, e] : factorize(M).factors) {
        (void)e;
        auto it = signs.eps.find(p);
        if (it == signs.eps.end())
            throw std::invalid_argument("integrality_factor: missing sign for prime " + std::to_string(p));
        if (it->second != 1 && it->second != -1)
            throw std::invalid_argument("integrality_factor: sign must be +1 or -1");
    }
    i64 g = gcd(M, N / M);
    bool minus = false;
    if (g > 1)
        for (auto [p, e] : factorize(g).factors) {
            (void)e;
            minus = minus || signs.eps.at(p) == -1;
        }
    if (!minus)
        throw std::invalid_argument("integrality_factor: no prime of gcd(M, N/M) carries sign -1");
}

i64 exhaustive_multiple(const std::vector<RootTerm> &base)
{
    std::vector<std::vector<i64>> choices;
    for (auto &t : base) {
        std::vector<i64> ks;
        for (i64 u = 0; u < t.n; ++u)
            if (t.n == 1 || gcd(u, t.n) == 1)
                ks.push_back(u);
        choices.push_back(ks);
    }
    i64 m = 1;
    std::vector<size_t> idx(base.size(), 0);
    while (true) {
        auto terms = base;
        for (size_t i = 0; i < terms.size(); ++i)
            terms[i].k = choices[i][idx[i]];
        auto S = assemble(terms);
        if (S.is_zero())
            throw std::domain_error("integrality_factor: zero root sum under an exhaustive root choice");
        m = lcm_checked(m, smallest_integer_multiple(S));
        size_t i = 0;
        while (i < idx.size() && ++idx[i] == choices[i].size())
            idx[i++] = 0;
        if (i == idx.size())
            break;
    }
    return m;
}

}

IntegralityReport integrality_factor(i64 N, i64 M, const SignVector &signs, RootConvention conv)
{
    if (M < 1 || N % M != 0 || M == N || !hv_check(N, M))
        throw std::invalid_argument("integrality_factor: (HV) fails for (N, M)");
    check_signs(N, M, signs);
    IntegralityReport rep;
    rep.N = N;
    rep.M = M;
    rep.convention = conv;
    for (auto &c : width_one_cusps(N)) {
        CuspIntegrality ci;
        ci.cusp = c;
        ci.hall_set = unramified_hall_set(N, M, c);
        auto base = conv == RootConvention::Exhaustive ? RootConvention::Coherent : conv;
        ci.terms = root_terms(N, M, c, signs, base);
        ci.sum = assemble(ci.terms);
        if (ci.sum.is_zero())
            throw std::domain_error("integrality_factor: zero root sum at cusp " + c.str());
        ci.multiple = conv == RootConvention::Exhaustive ? exhaustive_multiple(ci.terms) : smallest_integer_multiple(ci.sum);
        rep.m = lcm_checked(rep.m, ci.multiple);
        rep.cusps.push_back(std::move(ci));
    }
    rep.m_prime = extended_factor(rep.m);
    return rep;
}

i64 integrality_factor_gcd(i64 N, i64 M, const std::vector<SignVector> &records, RootConvention conv)
{
    if (records.empty())
        throw std::invalid_argument("integrality_factor_gcd: no sign records");
    i64 g = 0;
    for (auto &s : records)
        g = gcd(g, integrality_factor(N, M, s, conv).m);
    return g;
}

}
