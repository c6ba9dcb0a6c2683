#include "starcurve/exceptional.hpp"
#include "starcurve/genus.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace starcurve {

const std::vector<i64> kExceptionalPrimes{2, 3, 5, 7, 13};
const std::vector<i64> kExceptionalPrimePowers{125, 169};

bool is_exceptional_prime(i64 p)
{
    return std::find(kExceptionalPrimes.begin(), kExceptionalPrimes.end(), p) != kExceptionalPrimes.end();
}

static bool exceptional_pair(i64 p, i64 q)
{
    switch (p) {
    case 2:
        return q == 3 || q == 5 || q == 7 || q == 11 || q == 23;
    case 3:
        return q == 2 || q == 5 || q == 11;
    case 5:
        return q == 2;
    case 7:
        return q == 3;
    default:
        return false;
    }
}

bool exceptional_tuple(i64 p, const std::vector<i64> &rest)
{
    std::set<i64> seen{p};
    for (i64 q : rest)
        if (!seen.insert(q).second)
            throw std::invalid_argument("exceptional_tuple: repeated prime");
    switch (rest.size()) {
    case 0:
        return is_exceptional_prime(p);
    case 1:
        return exceptional_pair(p, rest[0]);
    case 2:
        return p == 2 && ((rest[0] == 3 && rest[1] == 5) || (rest[0] == 5 && rest[1] == 3));
    default:
        return false;
    }
}

LevelClassification is_exceptional_level(i64 Ntilde)
{
    auto f = factorize(Ntilde);
    if (Ntilde < 2 || is_squarefree(Ntilde))
        throw std::invalid_argument("is_exceptional_level: level is squarefree");
    if (f.omega() == 1)
        throw std::invalid_argument("is_exceptional_level: level is a prime power");
    LevelClassification r;
    r.level = Ntilde;
    for (auto [p, e] : f.factors)
        if (e >= 2 && !is_exceptional_prime(p)) {
            r.witness = std::to_string(p) + "^2 divides the level and " + std::to_string(p) + " is not exceptional";
            return r;
        }
    for (auto &d : square_below_descents(f)) {
        std::vector<i64> qs;
        for (auto [q, e] : factorize(d.M).factors)
            if (q != d.powerful_prime)
                qs.push_back(q);
        int s = static_cast<int>(qs.size());
        for (int mask = 0; mask < (1 << s); ++mask) {
            std::vector<i64> sub;
            for (int i = 0; i < s; ++i)
                if (mask >> i & 1)
                    sub.push_back(qs[i]);
            if (!exceptional_tuple(d.powerful_prime, sub)) {
                r.witness = "descent " + std::to_string(d.M) + ": tuple (" + std::to_string(d.powerful_prime);
                for (i64 q : sub)
                    r.witness += "," + std::to_string(q);
                r.witness += ") is not exceptional";
                return r;
            }
        }
    }
    r.exceptional = true;
    r.shape = shape_classify_or_zero(Ntilde);
    r.witness = "all descents exceptional";
    return r;
}

bool hv_check(i64 N, i64 M)
{
    if (M < 1 || N % M != 0 || M == N)
        throw std::invalid_argument("hv_check: need M a proper divisor of N");
    for (auto [p, e] : factorize(N).factors)
        if (valuation(M, p) > (e + 1) / 2)
            return false;
    return true;
}

int shape_classify_or_zero(i64 Ntilde)
{
    auto f = factorize(Ntilde);
    std::vector<std::pair<i64, int>> mult, single;
    for (auto &pe : f.factors)
        (pe.second > 1 ? mult : single).push_back(pe);
    auto small = [](i64 p) { return is_exceptional_prime(p); };

    if (mult.size() == 1 && !single.empty()) {
        i64 p = mult[0].first;
        if (single.size() == 1 && exceptional_pair(p, single[0].first))
            return 1;
        if (single.size() == 2 && p == 2 && single[0].first * single[1].first == 15)
            return 1;
    }
    if (mult.size() >= 2 && single.empty()) {
        bool ok = true;
        for (auto [p, e] : mult)
            ok = ok && small(p) && e % 2 == 0;
        if (ok)
            return 4;
    }
    if (mult.size() == 2 && single.empty()) {
        auto [p1, l1] = mult[0];
        auto [p2, l2] = mult[1];
        if (small(p1) && small(p2) && (l1 % 2 == 0 || exceptional_pair(p2, p1)) && (l2 % 2 == 0 || exceptional_pair(p1, p2)))
            return 2;
    }
    if (mult.size() == 2 && single.size() == 1) {
        i64 q = single[0].first;
        static const i64 triples[4][3] = {{2, 3, 5}, {2, 3, 11}, {2, 7, 3}, {3, 5, 2}};
        for (int i = 0; i < 4; ++i) {
            for (int sw = 0; sw < 2; ++sw) {
                auto a = mult[sw], b = mult[1 - sw];
                if (a.first != triples[i][0] || b.first != triples[i][1] || q != triples[i][2])
                    continue;
                if (a.second % 2 != 0)
                    continue;
                if (i > 0 && b.second % 2 != 0)
                    continue;
                return 3;
            }
        }
    }
    if (mult.size() == 3 && single.empty()) {
        static const i64 patterns[3][3] = {{2, 3, 5}, {5, 2, 3}, {3, 2, 7}};
        for (auto &pat : patterns) {
            int l1 = f.v(pat[0]), l2 = f.v(pat[1]), l3 = f.v(pat[2]);
            if (l1 >= 3 && l1 % 2 == 1 && l2 >= 2 && l2 % 2 == 0 && l3 >= 2 && l3 % 2 == 0)
                return 5;
        }
    }
    return 0;
}

int shape_classify(i64 Ntilde)
{
    if (!is_exceptional_level(Ntilde).exceptional)
        throw std::invalid_argument("shape_classify: level is not exceptional");
    int s = shape_classify_or_zero(Ntilde);
    if (s == 0)
        throw std::logic_error("shape_classify: exceptional level outside the five shapes");
    return s;
}

std::vector<i64> exceptional_levels(i64 cap)
{
    std::vector<i64> out;
    for (i64 n = 2; n <= cap; ++n) {
        if (is_squarefree(n) || factorize(n).omega() == 1)
            continue;
        if (is_exceptional_level(n).exceptional)
            out.push_back(n);
    }
    return out;
}

std::vector<i64> minimal_exceptional_family(i64 cap, const std::vector<i64> &prime_powers)
{
    std::vector<i64> cand = exceptional_levels(cap);
    for (i64 q : prime_powers)
        if (q <= cap)
            cand.push_back(q);
    std::sort(cand.begin(), cand.end());
    std::vector<i64> positive;
    for (i64 n : cand)
        if (genus_star(n) > 0)
            positive.push_back(n);
    std::vector<i64> out;
    for (i64 n : positive) {
        bool above = false;
        for (i64 m : positive)
            if (m < n && square_below(m, n))
                above = true;
        if (!above)
            out.push_back(n);
    }
    return out;
}

std::vector<i64> minimal_exceptional_family(i64 cap)
{
    return minimal_exceptional_family(cap, kExceptionalPrimePowers);
}

const std::vector<i64> kAdjustmentRemoved{99, 125, 169, 324, 1372};
const std::vector<i64> kAdjustmentAdded{396, 500, 891};

std::vector<i64> adjusted_family(const std::vector<i64> &minimal)
{
    std::vector<i64> out;
    for (i64 n : minimal)
        if (std::find(kAdjustmentRemoved.begin(), kAdjustmentRemoved.end(), n) == kAdjustmentRemoved.end())
            out.push_back(n);
    for (i64 n : kAdjustmentAdded)
        if (std::find(out.begin(), out.end(), n) == out.end())
            out.push_back(n);
    std::sort(out.begin(), out.end());
    return out;
}

}
