#include "starcurve/analytic.hpp"
#include "starcurve/catalog.hpp"
#include "starcurve/cusps.hpp"
#include "starcurve/cyclo.hpp"
#include "starcurve/exceptional.hpp"
#include "starcurve/genus.hpp"
#include "starcurve/heegner.hpp"
#include "starcurve/report.hpp"
#include "starcurve/volcano.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace starcurve;
using nlohmann::json;

namespace {

enum class Format { Text, Json, Csv };

struct Globals {
    bool json = false;
    bool csv = false;
    std::string data_dir;

    Format format() const { return json ? Format::Json : csv ? Format::Csv : Format::Text; }
};

std::string join(const std::vector<i64> &v, const char *sep = " ")
{
    std::string s;
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

json cusp_json(const Cusp &c)
{
    return {{"a", c.a}, {"b", c.b}, {"width", c.width}, {"label", c.str()}};
}

int cmd_cusps(const Globals &g, i64 N)
{
    auto reps = cusp_representatives(N);
    auto orbits = galois_orbits(N);
    auto star = star_cusp_orbits(N);
    if (g.format() == Format::Json) {
        json j;
        j["N"] = N;
        j["count"] = reps.size();
        for (auto &c : reps)
            j["representatives"].push_back(cusp_json(c));
        for (auto &o : orbits) {
            json jo = json::array();
            for (auto &c : o)
                jo.push_back(c.str());
            j["galois_orbits"].push_back({{"denominator", o.front().b}, {"field", galois_field_label(N, o.front().b)}, {"members", jo}});
        }
        for (auto &s : star)
            j["star_classes"].push_back({{"denominators", s.denominators}, {"rational", s.rational}, {"field", s.field}});
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    if (g.format() == Format::Csv) {
        std::cout << "cusp,denominator,width,field\n";
        for (auto &c : reps)
            std::cout << c.str() << ',' << c.b << ',' << c.width << ',' << galois_field_label(N, c.b) << '\n';
        return 0;
    }
    std::cout << "X0(" << N << "): " << reps.size() << " cusps\n";
    for (auto &c : reps)
        std::cout << "  " << std::setw(10) << c.str() << "  width " << c.width << '\n';
    std::cout << "Galois orbits: " << orbits.size() << '\n';
    for (auto &o : orbits)
        std::cout << "  b = " << o.front().b << "  size " << o.size() << "  field " << galois_field_label(N, o.front().b) << '\n';
    std::cout << "star classes: " << star.size() << '\n';
    for (auto &s : star)
        std::cout << "  {" << join(s.denominators, ", ") << "}  " << (s.rational ? "rational" : "over " + s.field) << '\n';
    return 0;
}

int cmd_genus(const Globals &g, i64 N, bool star_only)
{
    auto d = genus_data(N);
    if (g.format() == Format::Json) {
        json j{{"N", N}, {"genus_star", d.genus_star}};
        if (!star_only) {
            j["mu"] = d.mu;
            j["nu2"] = d.nu2;
            j["nu3"] = d.nu3;
            j["nu_inf"] = d.nu_inf;
            j["genus"] = d.genus;
            for (auto [Q, f] : d.fixed_points)
                j["fixed_points"].push_back({{"Q", Q}, {"count", f}});
        }
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    if (star_only) {
        std::cout << d.genus_star << '\n';
        return 0;
    }
    std::cout << "N " << N << "  index " << d.mu << "  nu2 " << d.nu2 << "  nu3 " << d.nu3 << "  cusps " << d.nu_inf << "  genus " << d.genus << "  genus* " << d.genus_star << '\n';
    for (auto [Q, f] : d.fixed_points)
        std::cout << "  w_" << Q << " fixes " << f << '\n';
    return 0;
}

int cmd_heegner(const Globals &g, i64 N, std::optional<i64> disc)
{
    HeegnerReport rep;
    if (disc) {
        if (!is_discriminant(*disc) || *disc >= 0)
            throw CLI::ValidationError("--disc", "not a negative discriminant");
        rep = rational_heegner_report(N, {*disc});
    } else {
        rep = rational_heegner_report(N);
    }
    if (g.format() == Format::Json) {
        json j{{"N", N}, {"count", rep.discriminants.size()}, {"discriminants", rep.discriminants}};
        if (disc) {
            auto e = heegner_exists(N, *disc);
            j["exists"] = e.exists;
            j["reason"] = e.reason;
            j["orbits"] = heegner_orbits(N, *disc).size();
        }
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    if (disc) {
        auto e = heegner_exists(N, *disc);
        std::cout << "D = " << *disc << ": " << (e.exists ? "Heegner points exist" : "no Heegner points") << (e.reason.empty() ? "" : " (" + e.reason + ")") << '\n';
        if (e.exists)
            std::cout << "star orbits " << heegner_orbits(N, *disc).size() << ", rational " << rep.discriminants.size() << '\n';
        return 0;
    }
    std::cout << "level " << N << ": " << rep.discriminants.size() << " rational Heegner points  [" << join(rep.discriminants, ", ") << "]\n";
    return 0;
}

int cmd_lift(const Globals &g, i64 N)
{
    auto rep = cm_lift_report(N);
    if (g.format() == Format::Json) {
        json j = json::array();
        for (auto &e : rep) {
            json steps = json::array();
            for (auto &s : e.certificate)
                steps.push_back({{"ell", s.ell}, {"kind", to_string(s.kind)}, {"from", s.from}, {"to", s.to}});
            j.push_back({{"N", e.N}, {"d", e.d}, {"M", e.M}, {"D", e.D}, {"Dprime", e.Dprime}, {"certificate", steps}});
        }
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    if (rep.empty())
        std::cout << "level " << N << ": no lifted CM points\n";
    for (auto &e : rep) {
        std::cout << "level " << N << ": " << e.D << " -> " << e.Dprime << "  (Heegner point on level " << e.M << ", unique cyclic " << e.d << "-isogeny)\n";
        for (auto &s : e.certificate)
            std::cout << "    " << to_string(s.kind) << ' ' << s.ell << "-isogeny " << s.from << " -> " << s.to << '\n';
    }
    return 0;
}

int cmd_exceptional(const Globals &g, i64 cap, bool minimal, bool adjusted)
{
    std::vector<i64> levels = minimal || adjusted ? minimal_exceptional_family(cap) : exceptional_levels(cap);
    if (adjusted)
        levels = adjusted_family(levels);
    if (g.format() == Format::Json) {
        std::cout << json(levels).dump() << '\n';
        return 0;
    }
    std::cout << join(levels, g.format() == Format::Csv ? "," : " ") << '\n';
    return 0;
}

int cmd_integrality(const Globals &g, i64 N, i64 M, const std::string &signs_file, bool exhaustive, bool coherent)
{
    RootConvention conv = exhaustive ? RootConvention::Exhaustive : coherent ? RootConvention::Coherent : RootConvention::CuspMatrix;
    std::vector<std::string> diags;
    auto records = signs_file.empty() ? load_signs(N, M, &diags) : load_signs(read_sign_table(signs_file), N, M, &diags);
    for (auto &d : diags)
        std::cerr << "warning: " << d << '\n';
    if (records.empty()) {
        std::cerr << "error: no admissible sign vector for (" << N << ", " << M << ")\n";
        return 1;
    }
    json jr = json::array();
    std::vector<SignVector> svs;
    for (auto &r : records) {
        auto rep = integrality_factor(N, M, r.sign_vector(), conv);
        svs.push_back(r.sign_vector());
        json jc = json::array();
        for (auto &c : rep.cusps)
            jc.push_back({{"cusp", c.cusp.str()}, {"hall_set", c.hall_set}, {"sum", c.sum.str()}, {"multiple", c.multiple}});
        jr.push_back({{"label", r.label}, {"m", rep.m}, {"m_prime", rep.m_prime}, {"cusps", jc}});
        if (g.format() == Format::Text) {
            std::cout << r.label << ": m = " << rep.m << ", m' = " << rep.m_prime << '\n';
            for (auto &c : rep.cusps)
                std::cout << "    " << std::setw(10) << c.cusp.str() << "  " << c.sum.str() << "  -> " << c.multiple << '\n';
        }
    }
    i64 m = integrality_factor_gcd(N, M, svs, conv);
    i64 mp = extended_factor(m);
    if (g.format() == Format::Json)
        std::cout << json{{"N", N}, {"M", M}, {"m", m}, {"m_prime", mp}, {"records", jr}}.dump(2) << '\n';
    else if (g.format() == Format::Csv)
        std::cout << "N,M,m,m_prime\n" << N << ',' << M << ',' << m << ',' << mp << '\n';
    else if (records.size() > 1)
        std::cout << "gcd over " << records.size() << " sign vectors: m = " << m << ", m' = " << mp << '\n';
    return 0;
}

int cmd_lfunc(const Globals &g, i64 p, std::optional<double> q, bool find)
{
    if (find) {
        auto t = threshold(p);
        if (g.format() == Format::Json) {
            std::cout << json{{"p", p}, {"q0", t.q0}, {"total_at_q0", t.total_at_q0}, {"total_before", t.total_before},
                                 {"decreasing", t.decreasing_certified}, {"high_precision_confirmed", t.high_precision_confirmed}}
                             .dump(2)
                      << '\n';
            return 0;
        }
        std::cout << std::setprecision(12) << "p = " << p << ": bound < 1 from q = " << t.q0 << "  (" << t.total_at_q0 << " at q0, " << t.total_before << " at q0 - 1)"
                  << (t.decreasing_certified ? "" : "  monotonicity not certified") << '\n';
        return 0;
    }
    auto b = error_bound(p, *q);
    if (g.format() == Format::Json) {
        std::cout << json{{"p", p}, {"q", b.q}, {"leading", b.leading}, {"weil_block", b.weil_block}, {"f1", b.f1}, {"f2", b.f2}, {"total", b.total}}.dump(2) << '\n';
        return 0;
    }
    std::cout << std::setprecision(12) << "p = " << p << ", q = " << b.q << ": total " << b.total << "  (leading " << b.leading << ", weil " << b.weil_block << ", f1 " << b.f1 << ", f2 " << b.f2 << ")\n";
    return 0;
}

std::vector<i64> golden_levels()
{
    std::vector<i64> out;
    for (auto &r : bundled_golden())
        out.push_back(r.level);
    return out;
}

void print_rows(const Globals &g, const std::vector<LevelRow> &rows)
{
    if (g.format() == Format::Json) {
        std::cout << json(rows).dump(2) << '\n';
        return;
    }
    if (g.format() == Format::Csv) {
        std::cout << csv_header() << '\n';
        for (auto &r : rows)
            std::cout << to_csv(r) << '\n';
        return;
    }
    for (auto &r : rows)
        std::cout << to_text(r) << '\n';
}

int cmd_report(const Globals &g, std::vector<i64> levels)
{
    if (levels.empty())
        levels = golden_levels();
    print_rows(g, level_reports(levels));
    return 0;
}

int cmd_verify(const Globals &g, std::vector<std::string> files)
{
    if (files.empty())
        files = {default_data_dir() + "/table1.json", default_data_dir() + "/table4.json"};
    bool ok = true;
    json jout = json::array();
    for (auto &f : files) {
        auto golden = load_golden(f);
        std::vector<i64> levels;
        for (auto &r : golden)
            levels.push_back(r.level);
        std::vector<LevelRow> rows;
        for (auto &r : level_reports(levels)) {
            auto it = std::find_if(golden.begin(), golden.end(), [&](const LevelRow &x) { return x.level == r.level; });
            rows.push_back(level_report(r.level, *it));
        }
        auto diffs = golden_compare(rows, golden);
        ok = ok && diffs.empty();
        for (auto &d : diffs) {
            if (g.format() == Format::Json)
                jout.push_back({{"file", f}, {"level", d.level}, {"field", d.field}, {"computed", d.computed}, {"expected", d.expected}});
            else
                std::cout << f << ": level " << d.level << ' ' << d.field << ": computed " << d.computed << ", expected " << d.expected << '\n';
        }
        if (g.format() != Format::Json)
            std::cout << f << ": " << golden.size() << " rows, " << diffs.size() << " differences\n";
    }
    if (g.format() == Format::Json)
        std::cout << json{{"ok", ok}, {"differences", jout}}.dump(2) << '\n';
    return ok ? 0 : 1;
}

int cmd_signs(const Globals &g, i64 N, i64 M, bool fetch)
{
    json j = json::array();
    auto emit = [&](const ALSignRecord &r) {
        json s = json::object();
        for (auto [q, e] : r.signs)
            s[std::to_string(q)] = e;
        j.push_back({{"N", r.N}, {"M", r.M}, {"label", r.label}, {"signs", s}, {"source", r.source == RecordSource::Remote ? "remote" : "bundled"}});
        if (g.format() == Format::Text) {
            std::cout << r.label << ':';
            for (auto [q, e] : r.signs)
                std::cout << ' ' << q << (e > 0 ? ":+1" : ":-1");
            std::cout << '\n';
        }
    };
    if (fetch) {
        auto res = fetch_signs(M);
        if (!res.warning.empty())
            std::cerr << "warning: " << res.warning << '\n';
        for (auto &r : res.records)
            emit(r);
    } else {
        std::vector<std::string> diags;
        for (auto &r : load_signs(N, M, &diags))
            emit(r);
        for (auto &d : diags)
            std::cerr << "warning: " << d << '\n';
    }
    if (g.format() == Format::Json)
        std::cout << j.dump(2) << '\n';
    return 0;
}

}

int main(int argc, char **argv)
{
    CLI::App app{"starcurve: arithmetic of Atkin-Lehner star quotients X0(N)*"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--json", g.json, "JSON output");
    app.add_flag("--csv", g.csv, "CSV output");
    app.add_option("--data-dir", g.data_dir, "directory holding bundled tables")->check(CLI::ExistingDirectory);

    auto positive = CLI::PositiveNumber;
    i64 N = 0, M = 0, cap = 0, p = 0;
    std::optional<i64> disc;
    std::optional<double> q;
    bool star = false, minimal = false, adjusted = false, exhaustive = false, coherent = false, find = false, fetch = false;
    std::string signs_file;
    std::vector<i64> levels;
    std::vector<std::string> golden_files;

    auto *cusps = app.add_subcommand("cusps", "cusps of X0(N), their Galois orbits and star classes");
    cusps->add_option("N", N)->required()->check(positive);
    auto *genus = app.add_subcommand("genus", "genus of X0(N) and of its star quotient");
    genus->add_option("N", N)->required()->check(positive);
    genus->add_flag("--star", star, "print only the star genus");
    auto *heegner = app.add_subcommand("heegner", "rational Heegner points on X0(N)*");
    heegner->add_option("N", N)->required()->check(positive);
    heegner->add_option("--disc", disc, "restrict to one discriminant");
    auto *lift = app.add_subcommand("lift", "CM points lifted through unique cyclic isogenies");
    lift->add_option("N", N)->required()->check(positive);
    auto *exc = app.add_subcommand("exceptional", "exceptional levels");
    exc->add_option("--max", cap, "upper bound")->required()->check(positive);
    exc->add_flag("--minimal", minimal, "minimal family with positive star genus");
    exc->add_flag("--adjusted", adjusted, "minimal family after the documented adjustment");
    auto *integ = app.add_subcommand("integrality", "integrality factors m and m'");
    integ->add_option("N", N)->required()->check(positive);
    integ->add_option("M", M)->required()->check(positive);
    integ->add_option("--signs", signs_file, "sign table file")->check(CLI::ExistingFile);
    auto *ex_flag = integ->add_flag("--exhaustive-roots", exhaustive, "lcm over every choice of primitive roots");
    integ->add_flag("--coherent-roots", coherent, "all roots as powers of one primitive root")->excludes(ex_flag);
    auto *lfunc = app.add_subcommand("lfunc", "explicit error bound for the twisted L-function estimate");
    lfunc->add_option("--p", p)->required();
    auto *qopt = lfunc->add_option("--q", q, "evaluate at q");
    auto *fopt = lfunc->add_flag("--find-threshold", find, "smallest q with bound below 1");
    qopt->excludes(fopt);
    auto *report = app.add_subcommand("report", "per-level rational point report");
    report->add_option("levels", levels, "levels (default: every golden level)")->check(positive);
    auto *verify = app.add_subcommand("verify-tables", "regenerate golden tables and diff");
    verify->add_option("files", golden_files, "golden JSON files")->check(CLI::ExistingFile);
    auto *signs = app.add_subcommand("signs", "Atkin-Lehner sign vectors");
    signs->add_option("N", N)->required()->check(positive);
    signs->add_option("M", M)->required()->check(positive);
    signs->add_flag("--fetch", fetch, "query the catalog endpoint for level M");

    try {
        app.parse(argc, argv);
        if (g.json && g.csv)
            throw CLI::ValidationError("--json and --csv are exclusive");
        if (lfunc->parsed() && !q && !find)
            throw CLI::RequiredError("--q or --find-threshold");
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (!g.data_dir.empty())
        setenv("STARCURVE_DATA_DIR", g.data_dir.c_str(), 1);

    try {
        if (cusps->parsed())
            return cmd_cusps(g, N);
        if (genus->parsed())
            return cmd_genus(g, N, star);
        if (heegner->parsed())
            return cmd_heegner(g, N, disc);
        if (lift->parsed())
            return cmd_lift(g, N);
        if (exc->parsed())
            return cmd_exceptional(g, cap, minimal, adjusted);
        if (integ->parsed())
            return cmd_integrality(g, N, M, signs_file, exhaustive, coherent);
        if (lfunc->parsed())
            return cmd_lfunc(g, p, q, find);
        if (report->parsed())
            return cmd_report(g, levels);
        if (verify->parsed())
            return cmd_verify(g, golden_files);
        if (signs->parsed())
            return cmd_signs(g, N, M, fetch);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
