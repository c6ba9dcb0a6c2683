#include "starcurve/catalog.hpp"
#include "starcurve/heegner.hpp"

#include <curl/curl.h>
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace starcurve {

namespace fs = std::filesystem;

SignTable read_sign_table(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("read_sign_table: cannot open " + path);
    SignTable t;
    std::map<std::tuple<i64, i64, std::string>, size_t> index;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto h = line.find('#');
        if (h != std::string::npos)
            line.resize(h);
        std::istringstream ls(line);
        i64 N, M, q;
        std::string label, sign;
        if (!(ls >> N))
            continue;
        if (!(ls >> M >> label >> q >> sign) || (sign != "+1" && sign != "-1" && sign != "1"))
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed sign row");
        auto key = std::make_tuple(N, M, label);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, t.records.size()).first;
            t.records.push_back({N, M, label, {}, RecordSource::Bundled});
        }
        t.records[it->second].signs[q] = sign == "-1" ? -1 : 1;
    }
    return t;
}

SignTable bundled_sign_table()
{
    static std::once_flag once;
    static SignTable t;
    std::call_once(once, [] { t = read_sign_table(default_data_dir() + "/al_signs.tsv"); });
    return t;
}

namespace {

std::string admissibility_problem(const ALSignRecord &r)
{
    if (r.M < 1 || r.N % r.M != 0 || r.M == r.N)
        return "M is not a proper divisor of N";
    for (auto [p, e] : factorize(r.M).factors) {
        (void)e;
        if (!r.signs.count(p))
            return "no sign for prime " + std::to_string(p);
    }
    for (auto &[q, s] : r.signs)
        if (r.M % q != 0)
            return "sign given for " + std::to_string(q) + " which does not divide M";
    i64 g = gcd(r.M, r.N / r.M);
    if (g > 1)
        for (auto [p, e] : factorize(g).factors) {
            (void)e;
            if (r.signs.at(p) == -1)
                return "";
        }
    return "no prime of gcd(M, N/M) has sign -1";
}

}

std::vector<ALSignRecord> load_signs(const SignTable &table, i64 N, i64 M, std::vector<std::string> *diagnostics)
{
    bool present = false;
    std::vector<ALSignRecord> out;
    for (auto &r : table.records) {
        if (r.N != N || r.M != M)
            continue;
        present = true;
        auto why = admissibility_problem(r);
        if (why.empty())
            out.push_back(r);
        else if (diagnostics)
            diagnostics->push_back(r.label + ": rejected, " + why);
    }
    if (!present)
        throw std::out_of_range("load_signs: no bundled records for (" + std::to_string(N) + ", " + std::to_string(M) + ")");
    return out;
}

std::vector<ALSignRecord> load_signs(i64 N, i64 M, std::vector<std::string> *diagnostics)
{
    return load_signs(bundled_sign_table(), N, M, diagnostics);
}

std::vector<ALSignRecord> parse_catalog_response(const std::string &body, i64 M)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception &e) {
        throw std::runtime_error(std::string("catalog response is not JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("data") || !j["data"].is_array())
        throw std::runtime_error("catalog response lacks a data array");
    std::vector<ALSignRecord> out;
    for (auto &f : j["data"]) {
        if (!f.is_object() || !f.contains("label") || !f["label"].is_string() || !f.contains("atkin_lehner_eigenvals") || !f["atkin_lehner_eigenvals"].is_array())
            throw std::runtime_error("catalog newform entry lacks label or atkin_lehner_eigenvals");
        ALSignRecord r;
        r.M = M;
        r.label = f["label"].get<std::string>();
        r.source = RecordSource::Remote;
        for (auto &pair : f["atkin_lehner_eigenvals"]) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer())
                throw std::runtime_error("catalog entry " + r.label + ": malformed eigenvalue pair");
            i64 q = pair[0].get<i64>();
            int s = pair[1].get<int>();
            if ((s != 1 && s != -1) || q < 2 || M % q != 0)
                throw std::runtime_error("catalog entry " + r.label + ": invalid eigenvalue pair");
            r.signs[q] = s;
        }
        for (auto [p, e] : factorize(M).factors) {
            (void)e;
            if (!r.signs.count(p))
                throw std::runtime_error("catalog entry " + r.label + ": sign map misses prime " + std::to_string(p));
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::string catalog_request_url(const std::string &base, i64 M)
{
    std::string b = base;
    while (!b.empty() && b.back() == '/')
        b.pop_back();
    return b + "/api/mf_newforms/?level=" + std::to_string(M) + "&weight=2&char_order=1&_format=json&_fields=label,atkin_lehner_eigenvals";
}

std::string cache_directory()
{
    if (const char *d = std::getenv("STARCURVE_CACHE_DIR"))
        return d;
    if (const char *x = std::getenv("XDG_CACHE_HOME"))
        return std::string(x) + "/starcurve";
    if (const char *h = std::getenv("HOME"))
        return std::string(h) + "/.cache/starcurve";
    return ".starcurve-cache";
}

namespace {

std::string content_key(const std::string &s)
{
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

size_t write_body(char *ptr, size_t size, size_t n, void *user)
{
    static_cast<std::string *>(user)->append(ptr, size * n);
    return size * n;
}

bool http_get(const std::string &url, double timeout, std::string &body, std::string &err)
{
    static std::once_flag once;
    std::call_once(once, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });
    CURL *h = curl_easy_init();
    if (!h) {
        err = "curl initialisation failed";
        return false;
    }
    curl_easy_setopt(h, CURLOPT_URL, url.c_str());
    curl_easy_setopt(h, CURLOPT_WRITEFUNCTION, write_body);
    curl_easy_setopt(h, CURLOPT_WRITEDATA, &body);
    curl_easy_setopt(h, CURLOPT_TIMEOUT_MS, static_cast<long>(timeout * 1000));
    curl_easy_setopt(h, CURLOPT_FOLLOWLOCATION, 1L);
    curl_easy_setopt(h, CURLOPT_NOSIGNAL, 1L);
    CURLcode rc = curl_easy_perform(h);
    long status = 0;
    curl_easy_getinfo(h, CURLINFO_RESPONSE_CODE, &status);
    curl_easy_cleanup(h);
    if (rc != CURLE_OK) {
        err = curl_easy_strerror(rc);
        return false;
    }
    if (status != 200) {
        err = "HTTP status " + std::to_string(status);
        return false;
    }
    return true;
}

void write_atomically(const fs::path &target, const std::string &body)
{
    fs::create_directories(target.parent_path());
    std::random_device rd;
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary);
        out << body;
        if (!out)
            throw std::runtime_error("cache write failed");
    }
    fs::rename(tmp, target);
}

std::vector<ALSignRecord> bundled_for_level(i64 M)
{
    std::vector<ALSignRecord> out;
    for (auto &r : bundled_sign_table().records)
        if (r.M == M)
            out.push_back(r);
    return out;
}

}

FetchResult fetch_signs(i64 M, double timeout_seconds)
{
    FetchResult res;
    auto fallback = [&](const std::string &why) {
        res.records = bundled_for_level(M);
        res.remote = false;
        res.warning = why + "; using bundled records";
        return res;
    };
    const char *base = std::getenv("STARCURVE_CATALOG_URL");
    if (!base || !*base)
        return fallback("STARCURVE_CATALOG_URL is unset");
    std::string url = catalog_request_url(base, M);
    fs::path cached = fs::path(cache_directory()) / (content_key(url) + ".json");
    std::string body;
    std::error_code ec;
    if (fs::exists(cached, ec)) {
        std::ifstream in(cached, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        body = ss.str();
        res.cached = true;
    } else {
        std::string err;
        if (!http_get(url, timeout_seconds, body, err))
            return fallback("catalog request failed (" + err + ")");
    }
    try {
        res.records = parse_catalog_response(body, M);
    } catch (const std::exception &e) {
        if (res.cached)
            fs::remove(cached, ec);
        return fallback(std::string("catalog parse failure (") + e.what() + ")");
    }
    if (!res.cached) {
        try {
            write_atomically(cached, body);
        } catch (const std::exception &e) {
            res.warning = std::string("cache not written: ") + e.what();
        }
    }
    res.remote = true;
    return res;
}

}
