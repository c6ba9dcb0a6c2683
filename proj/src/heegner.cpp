#include "starcurve/heegner.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace starcurve {

ExistenceResult heegner_exists(i64 N, i64 D)
{
    if (!is_discriminant(D))
        throw std::invalid_argument("heegner_exists: invalid discriminant " + std::to_string(D));
    if (N < 1)
        throw std::invalid_argument("heegner_exists: N must be positive");
    auto O = order_from_disc(D);
    ExistenceResult r;
    for (auto [p, e] : factorize(N).factors) {
        if (O.c % p != 0) {
            int k = kronecker(D, p);
            if (k == -1) {
                r.reason = std::to_string(p) + " is inert";
                return r;
            }
            if (k == 0 && e >= 2) {
                r.reason = std::to_string(p) + " is ramified and " + std::to_string(p) + "^2 divides N";
                return r;
            }
        } else if (admissible_primepower(O, p, e).empty()) {
            r.reason = "no admissible ideal of norm " + std::to_string(ipow(p, e));
            return r;
        }
    }
    r.exists = true;
    r.reason = "admissible ideals exist at every prime of N";
    return r;
}

std::vector<HeegnerTriple> enumerate_heegner(i64 N, i64 D)
{
    auto ex = heegner_exists(N, D);
    if (!ex.exists)
        throw std::invalid_argument("enumerate_heegner: no Heegner points (" + ex.reason + ")");
    auto O = order_from_disc(D);
    auto G = class_group(D);
    std::vector<HeegnerTriple> out;
    for (auto &eta : admissible_ideals(O, N))
        for (int a = 0; a < G->size(); ++a)
            out.push_back({O, eta, a});
    return out;
}

namespace {

int ideal_class(const FormClassGroup &G, const OrderIdeal &I)
{
    return G.index_of(reduce_form(ideal_to_form(I)));
}

std::vector<IdealComponent> conjugate_components(const ImagQuadOrder &O, const std::vector<IdealComponent> &cs)
{
    std::vector<IdealComponent> out;
    for (auto c : cs) {
        c.lambda = mod(O.t - c.lambda, c.pk);
        out.push_back(c);
    }
    return out;
}

}

HeegnerTriple al_act(const HeegnerTriple &P, i64 Q)
{
    if (Q < 1 || !is_hall_divisor(Q, P.eta.norm))
        throw std::invalid_argument("al_act: Q is not a Hall divisor of N");
    if (Q == 1)
        return P;
    auto [etaQ, rest] = eta_hall_part(P.eta, Q);
    auto G = class_group(P.order.D);
    auto comps = conjugate_components(P.order, etaQ.comps);
    comps.insert(comps.end(), rest.comps.begin(), rest.comps.end());
    HeegnerTriple R;
    R.order = P.order;
    R.eta = ideal_from_components(P.order, comps);
    R.a_class = G->mul(P.a_class, G->inverse[ideal_class(*G, etaQ)]);
    return R;
}

HeegnerTriple galois_act(const HeegnerTriple &P, int b_class, bool with_conjugation)
{
    auto G = class_group(P.order.D);
    if (b_class < 0 || b_class >= G->size())
        throw std::invalid_argument("galois_act: invalid class index");
    HeegnerTriple R = P;
    if (with_conjugation) {
        R.eta = conjugate_ideal(P.eta);
        R.a_class = G->inverse[P.a_class];
    }
    R.a_class = G->mul(R.a_class, G->inverse[b_class]);
    return R;
}

std::vector<i64> stabilizer(const HeegnerTriple &P)
{
    auto G = class_group(P.order.D);
    std::vector<i64> out;
    for (i64 Q : hall_divisors(P.eta.norm)) {
        auto etaQ = eta_hall_part(P.eta, Q).first;
        if (conjugate_ideal(etaQ) == etaQ && ideal_class(*G, etaQ) == G->identity)
            out.push_back(Q);
    }
    return out;
}

std::vector<HeegnerOrbit> heegner_orbits(i64 N, i64 D)
{
    auto pts = enumerate_heegner(N, D);
    std::sort(pts.begin(), pts.end());
    auto find = [&](const HeegnerTriple &P) {
        auto it = std::lower_bound(pts.begin(), pts.end(), P);
        if (it == pts.end() || !(*it == P))
            throw std::logic_error("heegner_orbits: action left the Heegner set");
        return static_cast<size_t>(it - pts.begin());
    };
    auto halls = hall_divisors(N);
    std::vector<int> orbit_of(pts.size(), -1);
    std::vector<HeegnerOrbit> out;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (orbit_of[i] >= 0)
            continue;
        HeegnerOrbit o;
        o.N = N;
        o.D = D;
        for (i64 Q : halls) {
            size_t j = find(al_act(pts[i], Q));
            if (orbit_of[j] < 0) {
                orbit_of[j] = static_cast<int>(out.size());
                o.members.push_back(pts[j]);
            }
        }
        o.stabilizer = stabilizer(pts[i]);
        out.push_back(std::move(o));
    }
    auto G = class_group(D);
    bool candidate = G->is_two_torsion();
    for (auto &o : out) {
        if (!candidate)
            continue;
        const auto &P = o.members.front();
        bool ok = true;
        for (int b = 0; b < G->size() && ok; ++b)
            for (bool tau : {false, true}) {
                size_t j = find(galois_act(P, b, tau));
                if (&out[orbit_of[j]] != &o) {
                    ok = false;
                    break;
                }
            }
        o.star_rational = ok;
    }
    return out;
}

std::vector<HeegnerOrbit> star_rational_orbits(i64 N, i64 D)
{
    std::vector<HeegnerOrbit> out;
    for (auto &o : heegner_orbits(N, D))
        if (o.star_rational)
            out.push_back(std::move(o));
    return out;
}

std::vector<i64> two_torsion_discriminants(i64 bound, i64 hmax)
{
    std::vector<i64> out;
    for (i64 D = -3; D >= -bound; --D) {
        if (!is_discriminant(D))
            continue;
        auto forms = reduced_forms(D);
        if (static_cast<i64>(forms.size()) > hmax)
            continue;
        bool ambiguous = true;
        for (auto &f : forms)
            ambiguous = ambiguous && (f.b == 0 || f.a == f.b || f.a == f.c);
        if (ambiguous)
            out.push_back(D);
    }
    return out;
}

std::string default_data_dir()
{
    if (const char *env = std::getenv("STARCURVE_DATA_DIR"))
        return env;
#ifdef STARCURVE_DATA_DIR
    return STARCURVE_DATA_DIR;
#else
    return "data";
#endif
}

std::vector<i64> load_discriminants(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_discriminants: cannot open " + path);
    std::vector<i64> out;
    std::string line;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos)
            line.resize(h);
        std::istringstream ls(line);
        i64 D;
        if (ls >> D) {
            if (!is_discriminant(D))
                throw std::runtime_error("load_discriminants: invalid discriminant " + std::to_string(D));
            out.push_back(D);
        }
    }
    return out;
}

namespace {

const std::vector<i64> &bundled_discriminants()
{
    static std::once_flag once;
    static std::vector<i64> ds;
    std::call_once(once, [] { ds = load_discriminants(default_data_dir() + "/disc_2torsion.txt"); });
    return ds;
}

}

HeegnerReport rational_heegner_report(i64 N, const std::vector<i64> &candidates)
{
    HeegnerReport rep;
    rep.N = N;
    i64 cap = i64(1) << factorize(N).omega();
    std::vector<i64> ds = candidates;
    std::sort(ds.begin(), ds.end(), std::greater<>());
    for (i64 D : ds) {
        if (class_number(D) > cap || !heegner_exists(N, D).exists)
            continue;
        for (auto &o : star_rational_orbits(N, D)) {
            rep.discriminants.push_back(D);
            rep.orbits.push_back(std::move(o));
        }
    }
    return rep;
}

HeegnerReport rational_heegner_report(i64 N)
{
    return rational_heegner_report(N, bundled_discriminants());
}

}
