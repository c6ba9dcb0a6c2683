#pragma once

#include "starcurve/arith.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace starcurve {

struct LevelRow {
    i64 level = 0;
    i64 genus = 0;
    std::optional<i64> q_points;
    i64 q_cusps = 0;
    std::vector<i64> heegner;
    std::vector<std::pair<i64, i64>> lifts;
    std::optional<i64> exceptional;
    std::vector<std::string> jinvariants;

    i64 heegner_count() const { return static_cast<i64>(heegner.size()); }
    bool accounting_holds() const;
    bool operator==(const LevelRow &o) const;
};

void to_json(nlohmann::json &j, const LevelRow &r);
void from_json(const nlohmann::json &j, LevelRow &r);

std::vector<LevelRow> load_golden(const std::string &path);
/* golden rows of both bundled tables, keyed by level */
const std::vector<LevelRow> &bundled_golden();
std::optional<LevelRow> golden_row(i64 N);

/* computed row; q_points and the residual come from golden data when present */
LevelRow level_report(i64 N);
LevelRow level_report(i64 N, const std::optional<LevelRow> &golden);
std::vector<LevelRow> level_reports(const std::vector<i64> &levels);

struct FieldDiff {
    i64 level;
    std::string field;
    std::string computed;
    std::string expected;
};

std::vector<FieldDiff> golden_compare(const std::vector<LevelRow> &rows, const std::vector<LevelRow> &golden);
std::vector<FieldDiff> golden_compare(const std::vector<LevelRow> &rows, const std::string &golden_path);

std::string csv_header();
std::string to_csv(const LevelRow &r);
std::string to_text(const LevelRow &r);

}
