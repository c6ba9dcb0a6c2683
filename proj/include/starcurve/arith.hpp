#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace starcurve {

using i64 = std::int64_t;
using i128 = __int128;

struct FactoredInteger {
    i64 value = 1;
    std::vector<std::pair<i64, int>> factors;

    int omega() const { return static_cast<int>(factors.size()); }
    int v(i64 p) const;
    std::vector<i64> primes() const;
    bool operator==(const FactoredInteger &) const = default;
};

i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);
i64 mod(i64 a, i64 m);
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 a, i64 e, i64 m);
i64 ipow(i64 a, int e);

/* returns g = gcd(a,b) >= 0 with x*a + y*b = g */
i64 egcd(i64 a, i64 b, i64 &x, i64 &y);
i64 inverse_mod(i64 a, i64 m);
i64 crt(i64 r1, i64 m1, i64 r2, i64 m2);

i64 isqrt(i64 n);
bool is_square(i64 n);
bool is_prime(i64 n);
int valuation(i64 n, i64 p);

FactoredInteger factorize(i64 n);
std::vector<i64> divisors(i64 n);
std::vector<i64> hall_divisors(const FactoredInteger &n);
std::vector<i64> hall_divisors(i64 n);
bool is_hall_divisor(i64 q, i64 n);

i64 euler_phi(i64 n);
i64 radical(i64 n);
i64 num_divisors(i64 n);
bool is_squarefree(i64 n);

int kronecker(i64 a, i64 n);

struct Descent {
    i64 M;
    i64 powerful_prime;
    bool operator==(const Descent &) const = default;
};

bool is_almost_squarefree(const FactoredInteger &n, i64 *powerful = nullptr);
std::vector<Descent> square_below_descents(const FactoredInteger &n);
bool square_below(i64 n, i64 ntilde);

}
