#include "starcurve/quadforms.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace starcurve {

bool QuadraticForm::is_reduced() const
{
    i64 ab = b < 0 ? -b : b;
    if (!(ab <= a && a <= c))
        return false;
    if ((ab == a || a == c) && b < 0)
        return false;
    return true;
}

std::string QuadraticForm::str() const
{
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

QuadraticForm principal_form(i64 D)
{
    if (!is_discriminant(D))
        throw std::invalid_argument("principal_form: bad discriminant");
    i64 b = mod(D, 2);
    return {1, b, (b * b - D) / 4};
}

QuadraticForm reduce_form(QuadraticForm f)
{
    if (f.disc() >= 0 || f.a <= 0)
        throw std::invalid_argument("reduce_form: form is not positive definite");
    if (!f.primitive())
        throw std::invalid_argument("reduce_form: form is not primitive");
    for (;;) {
        /* normalize b into (-a, a] */
        i64 two_a = 2 * f.a;
        i64 r = mod(f.b + f.a - 1, two_a) - (f.a - 1);
        i64 s = (r - f.b) / two_a;
        f.c = f.c + s * (f.b + f.a * s);
        f.b = r;
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0)
            f.b = -f.b;
        return f;
    }
}

QuadraticForm inverse_form(const QuadraticForm &f)
{
    return reduce_form({f.a, -f.b, f.c});
}

QuadraticForm compose(const QuadraticForm &f, const QuadraticForm &g)
{
    if (f.disc() != g.disc())
        throw std::invalid_argument("compose: discriminant mismatch");
    if (!f.primitive() || !g.primitive())
        throw std::invalid_argument("compose: forms must be primitive");
    QuadraticForm f1 = f, f2 = g;
    if (f1.a > f2.a)
        std::swap(f1, f2);
    i64 s = (f1.b + f2.b) / 2;
    i64 n = f2.b - s;
    i64 y1, d;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        i64 u, v;
        d = egcd(f2.a, f1.a, u, v);
        y1 = u;
    }
    i64 x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        i64 u, v;
        d1 = egcd(s, d, u, v);
        x2 = u;
        y2 = -v;
    }
    i64 v1 = f1.a / d1;
    i64 v2 = f2.a / d1;
    i128 rr = (static_cast<i128>(y1) * y2 * n - static_cast<i128>(x2) * f2.c) % v1;
    if (rr < 0)
        rr += v1;
    i64 r = static_cast<i64>(rr);
    QuadraticForm h;
    h.b = f2.b + 2 * v2 * r;
    h.a = v1 * v2;
    i128 c3 = static_cast<i128>(f2.c) * d1 + static_cast<i128>(r) * (f2.b + static_cast<i128>(v2) * r);
    h.c = static_cast<i64>(c3 / v1);
    return reduce_form(h);
}

int FormClassGroup::index_of(const QuadraticForm &f) const
{
    auto r = reduce_form(f);
    auto it = std::lower_bound(elements.begin(), elements.end(), r);
    if (it == elements.end() || !(*it == r))
        throw std::invalid_argument("index_of: form not in group");
    return static_cast<int>(it - elements.begin());
}

int FormClassGroup::order_of(int i) const
{
    int k = 1, x = i;
    while (x != identity) {
        x = table[x][i];
        ++k;
    }
    return k;
}

int FormClassGroup::exponent() const
{
    i64 e = 1;
    for (int i = 0; i < size(); ++i)
        e = lcm(e, order_of(i));
    return static_cast<int>(e);
}

std::vector<QuadraticForm> reduced_forms(i64 D)
{
    if (!is_discriminant(D))
        throw std::invalid_argument("reduced_forms: bad discriminant");
    std::vector<QuadraticForm> out;
    i64 B = isqrt(-D / 3);
    for (i64 b = -B; b <= B; ++b) {
        if (mod(b - D, 2) != 0)
            continue;
        i64 ac = (b * b - D) / 4;
        i64 ab = b < 0 ? -b : b;
        for (i64 a = std::max<i64>(ab, 1); a * a <= ac; ++a) {
            if (ac % a)
                continue;
            QuadraticForm f{a, b, ac / a};
            if (f.primitive() && f.is_reduced())
                out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

i64 class_number(i64 D) { return static_cast<i64>(reduced_forms(D).size()); }

static std::shared_ptr<const FormClassGroup> build_group(i64 D)
{
    auto G = std::make_shared<FormClassGroup>();
    G->D = D;
    G->elements = reduced_forms(D);
    int h = G->size();
    G->identity = G->index_of(principal_form(D));
    G->table.assign(h, std::vector<int>(h, 0));
    for (int i = 0; i < h; ++i)
        for (int j = i; j < h; ++j) {
            int k = G->index_of(compose(G->elements[i], G->elements[j]));
            G->table[i][j] = G->table[j][i] = k;
        }
    G->inverse.assign(h, 0);
    for (int i = 0; i < h; ++i)
        G->inverse[i] = G->index_of(inverse_form(G->elements[i]));
    return G;
}

std::shared_ptr<const FormClassGroup> class_group(i64 D)
{
    static std::mutex mu;
    static std::map<i64, std::shared_ptr<const FormClassGroup>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(D);
        if (it != cache.end())
            return it->second;
    }
    auto G = build_group(D);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(D, G);
    return G;
}

bool is_principal(const FormClassGroup &G, const QuadraticForm &f)
{
    if (f.disc() != G.D)
        throw std::invalid_argument("is_principal: discriminant mismatch");
    return G.index_of(f) == G.identity;
}

QuadraticForm ideal_to_form(const ImagQuadOrder &O, const OrderIdeal &I)
{
    i64 n = I.norm;
    i64 l = mod(I.lambda, n);
    i128 P = static_cast<i128>(l) * l - static_cast<i128>(O.t) * l + O.nrm;
    if (P % n != 0)
        throw std::invalid_argument("ideal_to_form: not an ideal of this order");
    QuadraticForm f{n, 2 * l - O.t, static_cast<i64>(P / n)};
    if (!f.primitive())
        throw std::invalid_argument("ideal_to_form: ideal is not invertible");
    return f;
}

QuadraticForm ideal_to_form(const OrderIdeal &I) { return ideal_to_form(I.order, I); }

}
