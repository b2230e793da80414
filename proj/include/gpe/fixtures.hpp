#pragma once

#include "gpe/report.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gpe {

enum class Verdict { pass, fail, boundary_case, recorded };

/// "pass", "fail", "boundary case", "recorded, not asserted".
const char* to_string(Verdict v);

struct FixtureRow {
    std::string fixture;
    std::string claim;
    std::string citation;
    std::string computed;
    Verdict verdict = Verdict::fail;
    ordered_json detail = ordered_json::object();
};

struct Fixture {
    std::string name;
    std::function<FixtureRow(std::uint64_t seed)> run;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// The fixed fixture list reproduced by the `paper` command.
std::vector<Fixture> paper_fixtures();

/// Runs every fixture (concurrently, at most `threads` at a time) and
/// returns rows in fixture order. A fixture that throws yields a fail row
/// carrying the error text.
std::vector<FixtureRow> run_suite(const std::vector<Fixture>& fixtures, const SuiteOptions& options);

Report suite_report(const std::vector<FixtureRow>& rows, const SuiteOptions& options);

/// Fixed-width text table: fixture, claim [citation], computed, verdict.
std::string format_table(const std::vector<FixtureRow>& rows);

bool any_failed(const std::vector<FixtureRow>& rows);

}  // namespace gpe
