#include "starcurve/report.hpp"
#include "starcurve/cusps.hpp"
#include "starcurve/genus.hpp"
#include "starcurve/heegner.hpp"
#include "starcurve/volcano.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace starcurve {

using nlohmann::json;

bool LevelRow::accounting_holds() const
{
    if (!q_points || !exceptional)
        return true;
    return q_cusps + heegner_count() + static_cast<i64>(lifts.size()) + *exceptional == *q_points;
}

bool LevelRow::operator==(const LevelRow &o) const
{
    return level == o.level && genus == o.genus && q_points == o.q_points && q_cusps == o.q_cusps && heegner == o.heegner && lifts == o.lifts && exceptional == o.exceptional;
}

void to_json(json &j, const LevelRow &r)
{
    j = json::object();
    j["level"] = r.level;
    j["genus"] = r.genus;
    j["q_points"] = r.q_points ? json(*r.q_points) : json(nullptr);
    j["q_cusps"] = r.q_cusps;
    j["heegner"] = r.heegner;
    json lifts = json::array();
    for (auto [a, b] : r.lifts)
        lifts.push_back({a, b});
    j["lifts"] = lifts;
    j["exceptional"] = r.exceptional ? json(*r.exceptional) : json(nullptr);
    if (!r.jinvariants.empty())
        j["jinvariants"] = r.jinvariants;
}

namespace {

i64 int_field(const json &j, const char *k)
{
    if (!j.contains(k) || !j[k].is_number_integer())
        throw std::runtime_error(std::string("golden row: field '") + k + "' must be an integer");
    return j[k].get<i64>();
}

std::optional<i64> opt_field(const json &j, const char *k)
{
    if (!j.contains(k) || j[k].is_null())
        return std::nullopt;
    return int_field(j, k);
}

}

void from_json(const json &j, LevelRow &r)
{
    if (!j.is_object())
        throw std::runtime_error("golden row: expected an object");
    r = LevelRow{};
    r.level = int_field(j, "level");
    r.genus = int_field(j, "genus");
    r.q_points = opt_field(j, "q_points");
    r.q_cusps = int_field(j, "q_cusps");
    r.exceptional = opt_field(j, "exceptional");
    if (!j.contains("heegner") || !j["heegner"].is_array())
        throw std::runtime_error("golden row: field 'heegner' must be an array");
    for (auto &d : j["heegner"]) {
        if (!d.is_number_integer())
            throw std::runtime_error("golden row: heegner entries must be integers");
        r.heegner.push_back(d.get<i64>());
    }
    if (!j.contains("lifts") || !j["lifts"].is_array())
        throw std::runtime_error("golden row: field 'lifts' must be an array");
    for (auto &p : j["lifts"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
            throw std::runtime_error("golden row: lifts entries must be [D, D']");
        r.lifts.emplace_back(p[0].get<i64>(), p[1].get<i64>());
    }
    if (j.contains("jinvariants"))
        r.jinvariants = j["jinvariants"].get<std::vector<std::string>>();
}

std::vector<LevelRow> load_golden(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_golden: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw std::runtime_error("load_golden: " + path + ": " + e.what());
    }
    if (!j.is_array())
        throw std::runtime_error("load_golden: " + path + ": expected an array of rows");
    return j.get<std::vector<LevelRow>>();
}

const std::vector<LevelRow> &bundled_golden()
{
    static std::once_flag once;
    static std::vector<LevelRow> rows;
    std::call_once(once, [] {
        for (auto name : {"/table1.json", "/table4.json"})
            for (auto &r : load_golden(default_data_dir() + name))
                rows.push_back(r);
    });
    return rows;
}

std::optional<LevelRow> golden_row(i64 N)
{
    for (auto &r : bundled_golden())
        if (r.level == N)
            return r;
    return std::nullopt;
}

namespace {

const std::map<i64, std::vector<std::string>> &display_strings()
{
    static std::once_flag once;
    static std::map<i64, std::vector<std::string>> m;
    std::call_once(once, [] {
        std::ifstream in(default_data_dir() + "/jinvariants.json");
        if (!in)
            return;
        json j = json::parse(in);
        for (auto &[k, v] : j.items())
            m[std::stoll(k)] = v.value("display", std::vector<std::string>{});
    });
    return m;
}

}

LevelRow level_report(i64 N, const std::optional<LevelRow> &golden)
{
    if (N < 1)
        throw std::invalid_argument("level_report: N must be positive");
    LevelRow r;
    r.level = N;
    r.genus = genus_star(N);
    r.q_cusps = static_cast<i64>(rational_star_cusps(N).size());
    r.heegner = rational_heegner_report(N).discriminants;
    std::sort(r.heegner.begin(), r.heegner.end(), std::greater<>());
    for (auto &e : cm_lift_report(N))
        r.lifts.emplace_back(e.D, e.Dprime);
    std::sort(r.lifts.begin(), r.lifts.end(), std::greater<>());
    if (golden && golden->q_points) {
        r.q_points = golden->q_points;
        r.exceptional = *r.q_points - r.q_cusps - r.heegner_count() - static_cast<i64>(r.lifts.size());
    }
    auto &ds = display_strings();
    if (auto it = ds.find(N); it != ds.end())
        r.jinvariants = it->second;
    return r;
}

LevelRow level_report(i64 N)
{
    return level_report(N, golden_row(N));
}

std::vector<LevelRow> level_reports(const std::vector<i64> &levels)
{
    bundled_golden();
    std::vector<std::future<LevelRow>> jobs;
    for (i64 N : levels)
        jobs.push_back(std::async(std::launch::async, [N] { return level_report(N); }));
    std::vector<LevelRow> out;
    for (auto &f : jobs)
        out.push_back(f.get());
    return out;
}

namespace {

std::string show(const std::optional<i64> &v)
{
    return v ? std::to_string(*v) : "null";
}

std::string show(std::vector<i64> v)
{
    std::sort(v.begin(), v.end(), std::greater<>());
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
}

std::string show(std::vector<std::pair<i64, i64>> v)
{
    std::sort(v.begin(), v.end(), std::greater<>());
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + std::to_string(v[i].first) + "->" + std::to_string(v[i].second);
    return s + "]";
}

}

std::vector<FieldDiff> golden_compare(const std::vector<LevelRow> &rows, const std::vector<LevelRow> &golden)
{
    std::vector<FieldDiff> diffs;
    for (auto &g : golden) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const LevelRow &r) { return r.level == g.level; });
        if (it == rows.end()) {
            diffs.push_back({g.level, "row", "missing", "present"});
            continue;
        }
        auto &r = *it;
        auto check = [&](const char *f, const std::string &a, const std::string &b) {
            if (a != b)
                diffs.push_back({g.level, f, a, b});
        };
        check("genus", std::to_string(r.genus), std::to_string(g.genus));
        check("q_points", show(r.q_points), show(g.q_points));
        check("q_cusps", std::to_string(r.q_cusps), std::to_string(g.q_cusps));
        check("heegner", show(r.heegner), show(g.heegner));
        check("lifts", show(r.lifts), show(g.lifts));
        check("exceptional", show(r.exceptional), show(g.exceptional));
    }
    return diffs;
}

std::vector<FieldDiff> golden_compare(const std::vector<LevelRow> &rows, const std::string &golden_path)
{
    return golden_compare(rows, load_golden(golden_path));
}

std::string csv_header()
{
    return "level,genus,q_points,q_cusps,heegner_count,heegner,lifts,exceptional";
}

std::string to_csv(const LevelRow &r)
{
    std::ostringstream os;
    std::string h, l;
    for (i64 d : r.heegner)
        h += (h.empty() ? "" : " ") + std::to_string(d);
    for (auto [a, b] : r.lifts)
        l += (l.empty() ? "" : " ") + std::to_string(a) + "->" + std::to_string(b);
    os << r.level << ',' << r.genus << ',' << (r.q_points ? std::to_string(*r.q_points) : "") << ',' << r.q_cusps << ','
       << r.heegner_count() << ",\"" << h << "\",\"" << l << "\"," << (r.exceptional ? std::to_string(*r.exceptional) : "");
    return os.str();
}

std::string to_text(const LevelRow &r)
{
    std::ostringstream os;
    os << "level " << r.level << "  genus* " << r.genus << "  Q-points " << show(r.q_points) << "  Q-cusps " << r.q_cusps
       << "  Heegner " << r.heegner_count() << ' ' << show(r.heegner) << "  lifts " << show(r.lifts) << "  exceptional " << show(r.exceptional);
    for (auto &s : r.jinvariants)
        os << "\n    j: " << s;
    return os.str();
}

}
