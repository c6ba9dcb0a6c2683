#include "starcurve/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace starcurve {

int FactoredInteger::v(i64 p) const
{
    for (auto &[q, e] : factors)
        if (q == p)
            return e;
    return 0;
}

std::vector<i64> FactoredInteger::primes() const
{
    std::vector<i64> out;
    for (auto &f : factors)
        out.push_back(f.first);
    return out;
}

i64 gcd(i64 a, i64 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 lcm(i64 a, i64 b)
{
    if (a == 0 || b == 0)
        return 0;
    i64 g = gcd(a, b);
    i64 r = (a / g) * b;
    return r < 0 ? -r : r;
}

i64 mod(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m)
{
    i128 r = static_cast<i128>(mod(a, m)) * mod(b, m) % m;
    return static_cast<i64>(r);
}

i64 powmod(i64 a, i64 e, i64 m)
{
    i64 r = 1 % m;
    a = mod(a, m);
    while (e > 0) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

i64 ipow(i64 a, int e)
{
    i64 r = 1;
    while (e-- > 0)
        r *= a;
    return r;
}

i64 egcd(i64 a, i64 b, i64 &x, i64 &y)
{
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i64 q = a / b;
        i64 t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

i64 inverse_mod(i64 a, i64 m)
{
    if (m == 1)
        return 0;
    i64 x, y;
    if (egcd(mod(a, m), m, x, y) != 1)
        throw std::domain_error("inverse_mod: not invertible");
    return mod(x, m);
}

i64 crt(i64 r1, i64 m1, i64 r2, i64 m2)
{
    if (gcd(m1, m2) != 1)
        throw std::domain_error("crt: moduli not coprime");
    i64 m = m1 * m2;
    i64 t = mulmod(mod(r2 - r1, m2), inverse_mod(m1, m2), m2);
    return mod(r1 + m1 * t, m);
}

i64 isqrt(i64 n)
{
    if (n < 0)
        throw std::domain_error("isqrt: negative");
    i64 r = static_cast<i64>(__builtin_sqrtl(static_cast<long double>(n)));
    while (r > 0 && static_cast<i128>(r) * r > n)
        --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

bool is_square(i64 n)
{
    if (n < 0)
        return false;
    i64 r = isqrt(n);
    return r * r == n;
}

bool is_prime(i64 n)
{
    if (n < 2)
        return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0)
            return n == p;
    }
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp)
            return false;
    }
    return true;
}

int valuation(i64 n, i64 p)
{
    if (n == 0)
        throw std::domain_error("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

FactoredInteger factorize(i64 n)
{
    if (n <= 0)
        throw std::invalid_argument("factorize: n must be positive");
    FactoredInteger f;
    f.value = n;
    i64 m = n;
    for (i64 p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p)
            continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
        if (m > 1 && is_prime(m))
            break;
    }
    if (m > 1)
        f.factors.emplace_back(m, 1);
    return f;
}

std::vector<i64> divisors(i64 n)
{
    auto f = factorize(n);
    std::vector<i64> out{1};
    for (auto [p, e] : f.factors) {
        size_t sz = out.size();
        i64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i)
                out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<i64> hall_divisors(const FactoredInteger &n)
{
    std::vector<i64> out{1};
    for (auto [p, e] : n.factors) {
        i64 pe = ipow(p, e);
        size_t sz = out.size();
        for (size_t i = 0; i < sz; ++i)
            out.push_back(out[i] * pe);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<i64> hall_divisors(i64 n) { return hall_divisors(factorize(n)); }

bool is_hall_divisor(i64 q, i64 n)
{
    return q > 0 && n % q == 0 && gcd(q, n / q) == 1;
}

i64 euler_phi(i64 n)
{
    i64 r = n;
    for (auto [p, e] : factorize(n).factors)
        r = r / p * (p - 1);
    return r;
}

i64 radical(i64 n)
{
    i64 r = 1;
    for (auto [p, e] : factorize(n).factors)
        r *= p;
    return r;
}

i64 num_divisors(i64 n)
{
    i64 r = 1;
    for (auto [p, e] : factorize(n).factors)
        r *= e + 1;
    return r;
}

bool is_squarefree(i64 n)
{
    for (auto [p, e] : factorize(n).factors)
        if (e > 1)
            return false;
    return true;
}

static int jacobi(i64 a, i64 n)
{
    a = mod(a, n);
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            i64 r = n & 7;
            if (r == 3 || r == 5)
                t = -t;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3)
            t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

int kronecker(i64 a, i64 n)
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int t = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            t = -t;
    }
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    if (v > 0) {
        if ((a & 1) == 0)
            return 0;
        i64 r = mod(a, 8);
        if ((v & 1) && (r == 3 || r == 5))
            t = -t;
    }
    if (n == 1)
        return t;
    return t * jacobi(a, n);
}

bool is_almost_squarefree(const FactoredInteger &n, i64 *powerful)
{
    i64 p = 0;
    for (auto [q, e] : n.factors) {
        if (e == 1)
            continue;
        if (e > 3 || p != 0)
            return false;
        p = q;
    }
    if (p == 0)
        return false;
    if (powerful)
        *powerful = p;
    return true;
}

std::vector<Descent> square_below_descents(const FactoredInteger &n)
{
    if (n.value < 2)
        throw std::invalid_argument("square_below_descents: N must be at least 2");
    std::vector<Descent> out;
    for (i64 s : divisors(n.value)) {
        if (!is_square(s))
            continue;
        i64 M = n.value / s;
        i64 p;
        if (M > 1 && is_almost_squarefree(factorize(M), &p))
            out.push_back({M, p});
    }
    std::sort(out.begin(), out.end(), [](const Descent &x, const Descent &y) { return x.M > y.M; });
    return out;
}

bool square_below(i64 n, i64 ntilde)
{
    return n > 0 && ntilde % n == 0 && is_square(ntilde / n);
}

}
