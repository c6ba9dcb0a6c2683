#include "starcurve/volcano.hpp"
#include "starcurve/heegner.hpp"
#include "starcurve/quadforms.hpp"
#include "starcurve/quadorders.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace starcurve {

IsogenyProfile isogeny_profile(i64 D, i64 ell)
{
    if (!is_discriminant(D))
        throw std::invalid_argument("isogeny_profile: invalid discriminant");
    if (!is_prime(ell))
        throw std::invalid_argument("isogeny_profile: ell must be prime");
    auto O = order_from_disc(D);
    if (O.c % ell == 0)
        return {D, ell, 1, 0, ell};
    int k = kronecker(D, ell);
    return {D, ell, 0, 1 + k, 1 - k};
}

std::string to_string(Uniqueness u)
{
    switch (u) {
    case Uniqueness::Yes:
        return "yes";
    case Uniqueness::No:
        return "no";
    default:
        return "unknown";
    }
}

std::string to_string(StepKind k)
{
    switch (k) {
    case StepKind::Ascending:
        return "ascending";
    case StepKind::Horizontal:
        return "horizontal";
    default:
        return "descending";
    }
}

namespace {

/* cyclic subgroups of order ell by type; descending ones fill up the ell + 1 kernels */
IsogenyProfile kernel_counts(i64 D, i64 ell)
{
    auto pr = isogeny_profile(D, ell);
    pr.descending = ell + 1 - pr.ascending - pr.horizontal;
    return pr;
}

struct Walker {
    i64 target;
    std::vector<i64> primes;
    i64 walks = 0;
    bool class_number_exceeded = false;
    std::vector<IsogenyStep> path, found;

    void run(size_t i, i64 D, int last, bool big)
    {
        if (i == primes.size()) {
            if (D == target) {
                ++walks;
                found = path;
                class_number_exceeded = class_number_exceeded || big;
            }
            return;
        }
        i64 ell = primes[i];
        bool fresh = i == 0 || primes[i - 1] != ell;
        if (fresh)
            last = -1;
        auto pr = kernel_counts(D, ell);
        i64 opts[3] = {pr.ascending, pr.horizontal, pr.descending};
        if (last == 0)
            opts[2] -= 1;
        if (last == 1)
            opts[1] -= 1;
        if (last == 2)
            opts[0] = 0;
        i64 nexts[3] = {D / (ell * ell), D, D * ell * ell};
        for (int k = 0; k < 3; ++k) {
            if (opts[k] <= 0)
                continue;
            i64 nd = nexts[k];
            bool nbig = big || class_number(nd) > 1;
            path.push_back({ell, static_cast<StepKind>(k), D, nd, opts[k]});
            for (i64 r = 0; r < opts[k]; ++r)
                run(i + 1, nd, k, nbig);
            path.pop_back();
        }
    }
};

}

UniquenessResult unique_cyclic_isogeny(i64 D, i64 Dprime, i64 d)
{
    if (d < 2)
        throw std::invalid_argument("unique_cyclic_isogeny: d must be at least 2");
    if (!is_discriminant(D) || !is_discriminant(Dprime))
        throw std::invalid_argument("unique_cyclic_isogeny: invalid discriminant");
    Walker w;
    w.target = Dprime;
    for (auto [p, e] : factorize(d).factors)
        for (int i = 0; i < e; ++i)
            w.primes.push_back(p);
    w.run(0, D, -1, false);
    UniquenessResult r;
    r.walks = w.walks;
    if (w.class_number_exceeded) {
        r.answer = Uniqueness::Unknown;
        r.witness = "a walk to the target passes through class number > 1";
    } else if (w.walks == 1) {
        r.answer = Uniqueness::Yes;
        r.certificate = w.found;
        r.witness = "exactly one non-backtracking walk of degree " + std::to_string(d);
    } else {
        r.answer = Uniqueness::No;
        r.witness = std::to_string(w.walks) + " non-backtracking walks of degree " + std::to_string(d) + " reach " + std::to_string(Dprime);
    }
    return r;
}

std::vector<i64> class_number_one_discriminants(i64 bound)
{
    std::vector<i64> out;
    for (i64 D = -3; D >= -bound; --D)
        if (is_discriminant(D) && class_number(D) == 1)
            out.push_back(D);
    return out;
}

std::vector<LiftEntry> cm_lift_report(i64 N)
{
    if (N < 1)
        throw std::invalid_argument("cm_lift_report: N must be positive");
    std::vector<LiftEntry> out;
    std::set<std::pair<i64, i64>> seen;
    for (i64 d : hall_divisors(N)) {
        if (d == 1)
            continue;
        i64 M = N / d;
        std::set<i64> sources;
        for (i64 D : rational_heegner_report(M).discriminants)
            if (!order_from_disc(D).maximal())
                sources.insert(D);
        for (auto it = sources.rbegin(); it != sources.rend(); ++it) {
            i64 D = *it;
            auto O = order_from_disc(D);
            for (i64 f : divisors(O.c)) {
                if (f == 1)
                    continue;
                i64 Dp = D / (f * f);
                if (class_number(Dp) != 1)
                    continue;
                auto u = unique_cyclic_isogeny(D, Dp, d);
                if (u.answer != Uniqueness::Yes || !seen.insert({D, Dp}).second)
                    continue;
                out.push_back({N, d, M, D, Dp, u.certificate});
            }
        }
    }
    return out;
}

}
