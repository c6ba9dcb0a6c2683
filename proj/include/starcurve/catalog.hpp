#pragma once

#include "starcurve/arith.hpp"
#include "starcurve/cyclo.hpp"

#include <map>
#include <string>
#include <vector>

namespace starcurve {

enum class RecordSource { Bundled, Remote };

struct ALSignRecord {
    i64 N = 0;
    i64 M = 0;
    std::string label;
    std::map<i64, int> signs;
    RecordSource source = RecordSource::Bundled;

    SignVector sign_vector() const { return {M, signs}; }
};

struct SignTable {
    std::vector<ALSignRecord> records;
};

SignTable read_sign_table(const std::string &path);
SignTable bundled_sign_table();

/* admissible records for (N, M); rejected records are described in diagnostics */
std::vector<ALSignRecord> load_signs(const SignTable &table, i64 N, i64 M, std::vector<std::string> *diagnostics = nullptr);
std::vector<ALSignRecord> load_signs(i64 N, i64 M, std::vector<std::string> *diagnostics = nullptr);

struct FetchResult {
    std::vector<ALSignRecord> records;
    bool remote = false;
    bool cached = false;
    std::string warning;
};

/* newform records of level M, weight 2, trivial character, from a JSON listing */
std::vector<ALSignRecord> parse_catalog_response(const std::string &body, i64 M);
std::string catalog_request_url(const std::string &base, i64 M);
std::string cache_directory();

FetchResult fetch_signs(i64 M, double timeout_seconds = 10.0);

}
