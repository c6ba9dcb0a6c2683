#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

using i64 = std::int64_t;
using Mat = std::array<i64, 4>;
using Form = std::tuple<i64, i64, i64>;

inline i64 md(i64 a, i64 n)
{
    return ((a % n) + n) % n;
}

inline Mat mmul(const Mat &m, const Mat &n)
{
    return {m[0] * n[0] + m[1] * n[2], m[0] * n[1] + m[1] * n[3], m[2] * n[0] + m[3] * n[2], m[2] * n[1] + m[3] * n[3]};
}

inline bool is_prime(i64 n)
{
    if (n < 2)
        return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline std::vector<i64> prime_factors(i64 n)
{
    std::vector<i64> ps;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    if (n > 1)
        ps.push_back(n);
    return ps;
}

inline std::vector<i64> hall_divisors(i64 N)
{
    std::vector<i64> out;
    for (i64 d = 1; d <= N; ++d)
        if (N % d == 0 && std::gcd(d, N / d) == 1)
            out.push_back(d);
    return out;
}

/* f(p x + q y, r x + s y) */
inline Form act(const Form &f, const Mat &m)
{
    auto [a, b, c] = f;
    i64 p = m[0], q = m[1], r = m[2], s = m[3];
    return {a * p * p + b * p * r + c * r * r, 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s, a * q * q + b * q * s + c * s * s};
}

inline std::pair<Form, Mat> reduce(Form f)
{
    Mat g{1, 0, 0, 1};
    for (;;) {
        auto [a, b, c] = f;
        if (!(-a < b && b <= a)) {
            i64 s = (a - b) >= 0 ? (a - b) / (2 * a) : -((b - a + 2 * a - 1) / (2 * a));
            Mat T{1, s, 0, 1};
            f = act(f, T);
            g = mmul(g, T);
            continue;
        }
        if (a > c || (a == c && b < 0)) {
            Mat S{0, -1, 1, 0};
            f = act(f, S);
            g = mmul(g, S);
            continue;
        }
        return {f, g};
    }
}

inline std::vector<Mat> form_stabilizer(const Form &f)
{
    auto [a, b, c] = f;
    std::vector<Mat> out{{1, 0, 0, 1}};
    if (a == c && b == 0)
        out.push_back({0, -1, 1, 0});
    if (a == b && b == c) {
        out.push_back({0, -1, 1, 1});
        out.push_back({1, 1, -1, 0});
    }
    return out;
}

inline i64 class_number(i64 D)
{
    i64 h = 0;
    for (i64 a = 1; 3 * a * a <= -D; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            if ((b * b - D) % (4 * a) != 0)
                continue;
            i64 c = (b * b - D) / (4 * a);
            if (c < a || (c == a && b < 0))
                continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) == 1)
                ++h;
        }
    return h;
}

/* Gamma0(N)\SL2(Z) as P^1(Z/N): bottom rows up to units */
class P1 {
public:
    explicit P1(i64 N) : N_(std::max<i64>(N, 1)), table_(N_ * N_, -1)
    {
        for (i64 u = 1; u <= N_; ++u)
            if (std::gcd(u, N_) == 1)
                units_.push_back(u);
        for (i64 c = 0; c < N_; ++c)
            for (i64 d = 0; d < N_; ++d) {
                if (table_[c * N_ + d] >= 0 || std::gcd(std::gcd(c, d), N_) != 1)
                    continue;
                int id = static_cast<int>(elems_.size());
                elems_.push_back({c, d});
                for (i64 u : units_)
                    table_[md(u * c, N_) * N_ + md(u * d, N_)] = id;
            }
    }

    int index(i64 c, i64 d) const { return table_[md(c, N_) * N_ + md(d, N_)]; }
    std::pair<i64, i64> key(i64 c, i64 d) const { return elems_[index(c, d)]; }
    size_t size() const { return elems_.size(); }
    const std::pair<i64, i64> &at(size_t i) const { return elems_[i]; }
    i64 level() const { return N_; }
    const std::vector<i64> &units() const { return units_; }

private:
    i64 N_;
    std::vector<int> table_;
    std::vector<i64> units_;
    std::vector<std::pair<i64, i64>> elems_;
};

/* cusps of X0(N) as orbits of right translation on P^1(Z/N) */
struct CuspOrbits {
    P1 p1;
    std::vector<int> orbit_of;
    std::vector<i64> widths;

    explicit CuspOrbits(i64 N) : p1(N), orbit_of(p1.size(), -1)
    {
        for (size_t i = 0; i < p1.size(); ++i) {
            if (orbit_of[i] >= 0)
                continue;
            int id = static_cast<int>(widths.size());
            i64 w = 0;
            auto [c, d] = p1.at(i);
            for (i64 k = 0;; ++k) {
                int j = p1.index(c, d + k * c);
                if (orbit_of[j] == id)
                    break;
                orbit_of[j] = id;
                ++w;
            }
            widths.push_back(w);
        }
    }

    size_t count() const { return widths.size(); }

    /* the cusp p/q, q = 0 meaning infinity */
    int label(i64 p, i64 q) const
    {
        if (q < 0) {
            p = -p;
            q = -q;
        }
        i64 g = std::gcd(std::abs(p), q);
        p /= g;
        q /= g;
        if (q == 0)
            return orbit_of[p1.index(0, 1)];
        /* gamma = [[p, r], [q, s]] with p s - r q = 1 */
        i64 s = 0;
        for (i64 t = 0; t <= q; ++t)
            if (md(p * t - 1, q) == 0) {
                s = t;
                break;
            }
        if (q == 1)
            s = 0;
        return orbit_of[p1.index(q, s)];
    }
};

/* W_Q = [[Q x, y], [N, Q]] applied to p/q */
inline std::pair<i64, i64> al_on_fraction(i64 N, i64 Q, i64 p, i64 q)
{
    i64 R = N / Q;
    i64 x = 1;
    if (R > 1)
        for (x = 1; md(Q * x - 1, R) != 0; ++x)
            ;
    i64 y = (Q * x - 1) / R;
    /* det = Q^2 x - N y = Q (Q x - R y) = Q */
    i64 a = Q * x * p + y * q;
    i64 b = N * p + Q * q;
    i64 g = std::gcd(std::abs(a), std::abs(b));
    return {a / g, b / g};
}

inline i64 fixed_cusps(i64 N, i64 Q)
{
    CuspOrbits co(N);
    std::vector<std::pair<i64, i64>> reps(co.count(), {0, 0});
    std::vector<bool> have(co.count(), false);
    for (i64 b = 1; b <= N; ++b)
        for (i64 a = 0; a <= N; ++a) {
            if (std::gcd(a, b) != 1)
                continue;
            int l = co.label(a, b);
            if (!have[l]) {
                have[l] = true;
                reps[l] = {a, b};
            }
        }
    i64 n = 0;
    for (size_t i = 0; i < reps.size(); ++i) {
        auto [p, q] = al_on_fraction(N, Q, reps[i].first, reps[i].second);
        if (co.label(p, q) == static_cast<int>(i))
            ++n;
    }
    return n;
}

/* fixed points of w_Q on X0(N) in the upper half plane: tau fixed by some [[Q x, y], [N z, Q w]] of determinant Q */
inline i64 fixed_interior_points(i64 N, i64 Q, i64 X = 60, i64 Z = 60)
{
    P1 p1(N);
    std::set<std::tuple<Form, std::pair<i64, i64>>> keys;
    std::vector<i64> traces{0};
    if (Q <= 3) {
        traces.push_back(1);
        traces.push_back(-1);
    }
    for (i64 t : traces)
        for (i64 x = -X; x <= X; ++x)
            for (i64 z = 1; z <= Z; ++z) {
                i64 w = t - x;
                i64 num = Q * Q * x * w - Q;
                if (num % (N * z) != 0)
                    continue;
                i64 y = num / (N * z);
                i64 a = N * z, b = Q * (w - x), c = -y;
                i64 g = std::gcd(std::gcd(a, std::abs(b)), std::abs(c));
                Form f{a / g, b / g, c / g};
                if (std::get<1>(f) * std::get<1>(f) - 4 * std::get<0>(f) * std::get<2>(f) >= 0)
                    continue;
                auto [fr, m] = reduce(f);
                std::pair<i64, i64> best{N, N};
                for (auto &s : form_stabilizer(fr)) {
                    Mat h = mmul(m, s);
                    best = std::min(best, p1.key(md(h[2], N), md(h[3], N)));
                }
                keys.insert({fr, best});
            }
    return static_cast<i64>(keys.size());
}

}
