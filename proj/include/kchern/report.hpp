#pragma once

// Pass/fail records for verification suites.

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "kchern/io.hpp"

namespace kchern {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::vector<int> degrees;
    /// Certificate on success, counterexample on failure.
    io::json detail = io::json::object();
    double time_ms = 0.0;

    friend bool operator==(const CheckResult& a, const CheckResult& b) {
        return a.name == b.name && a.passed == b.passed && a.degrees == b.degrees && a.detail == b.detail &&
               a.time_ms == b.time_ms;
    }
};

struct Outcome {
    bool passed = false;
    std::vector<int> degrees;
    io::json detail = io::json::object();
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CheckResult> results;

    bool passed() const {
        for (const auto& r : results)
            if (!r.passed) return false;
        return true;
    }

    void append(const Report& other) {
        results.insert(results.end(), other.results.begin(), other.results.end());
    }

    /// Runs one named check; exceptions turn into failures carrying the message.
    template <class Fn>
    const CheckResult& run(const std::string& name, Fn&& fn) {
        CheckResult r;
        r.name = name;
        auto start = std::chrono::steady_clock::now();
        try {
            Outcome o = fn();
            r.passed = o.passed;
            r.degrees = std::move(o.degrees);
            r.detail = std::move(o.detail);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = {{"error", e.what()}};
        }
        r.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(r));
        return results.back();
    }

    friend bool operator==(const Report& a, const Report& b) {
        return a.suite == b.suite && a.seed == b.seed && a.results == b.results;
    }
};

namespace io {

inline json to_json(const CheckResult& r) {
    json o = {{"name", r.name}, {"status", r.passed ? "pass" : "fail"}, {"degrees", r.degrees}};
    o[r.passed ? "certificate" : "counterexample"] = r.detail;
    o["time_ms"] = r.time_ms;
    return o;
}

inline CheckResult check_result_from_json(const json& j) {
    CheckResult r;
    const json& name = detail::field(j, "name");
    const json& status = detail::field(j, "status");
    if (!name.is_string() || !status.is_string()) detail::fail("check name and status must be strings");
    r.name = name.get<std::string>();
    const std::string s = status.get<std::string>();
    if (s != "pass" && s != "fail") detail::fail("check status must be \"pass\" or \"fail\"");
    r.passed = s == "pass";
    for (const auto& d : detail::array(detail::field(j, "degrees"), "degrees")) r.degrees.push_back(detail::to_int(d, "degree"));
    r.detail = detail::field(j, r.passed ? "certificate" : "counterexample");
    const json& t = detail::field(j, "time_ms");
    if (!t.is_number()) detail::fail("time_ms must be a number");
    r.time_ms = t.get<double>();
    return r;
}

inline json to_json(const Report& rep) {
    json results = json::array();
    for (const auto& r : rep.results) results.push_back(to_json(r));
    return {{"suite", rep.suite}, {"seed", rep.seed}, {"status", rep.passed() ? "pass" : "fail"}, {"results", results}};
}

inline Report report_from_json(const json& j) {
    Report rep;
    const json& suite = detail::field(j, "suite");
    if (!suite.is_string()) detail::fail("suite must be a string");
    rep.suite = suite.get<std::string>();
    const json& seed = detail::field(j, "seed");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) detail::fail("seed must be an integer");
    rep.seed = seed.get<std::uint64_t>();
    for (const auto& r : detail::array(detail::field(j, "results"), "results")) rep.results.push_back(check_result_from_json(r));
    return rep;
}

/// Copy of a report JSON with every timing field removed.
inline json without_timing(json j) {
    if (j.is_object()) {
        j.erase("time_ms");
        for (auto& [k, v] : j.items()) v = without_timing(v);
    } else if (j.is_array()) {
        for (auto& v : j) v = without_timing(v);
    }
    return j;
}

}  // namespace io
}  // namespace kchern
