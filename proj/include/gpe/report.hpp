#pragma once

#include "gpe/boundary.hpp"
#include "gpe/certify.hpp"
#include "gpe/eigen.hpp"
#include "gpe/mp.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace gpe {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// 12 significant digits; non-finite values become "inf", "-inf", "nan".
std::string format_number(double x);

/// JSON number rounded to 12 significant digits, or a string when non-finite.
ordered_json num(double x);
double num_from_json(const ordered_json& j);

ordered_json to_json(const Vec& v);
ordered_json to_json(const EigenEstimate& e);
ordered_json to_json(const MPVerdict& v);
ordered_json to_json(const WitnessVerdict& v);
ordered_json to_json(const CertReport& r);
ordered_json to_json(const FicheraReport& r);
ordered_json to_json(const BarrierReport& r);

EigenEstimate eigen_from_json(const ordered_json& j);
CertReport cert_from_json(const ordered_json& j);
BarrierReport barrier_from_json(const ordered_json& j);
FicheraReport fichera_from_json(const ordered_json& j);

struct Table {
    std::string name;  // file stem for CSV output
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const;
};

/// Node coordinates plus value for every node of the field's grid.
Table field_table(const std::string& name, const Field& f);
Table fichera_table(const FicheraReport& r);
/// Rows: method, domain, h, eps, lambda_lo, lambda_hi, iterations.
Table eigen_table(const std::vector<EigenEstimate>& estimates, const std::string& domain);

struct Report {
    std::string command;
    ordered_json meta = ordered_json::object();
    std::vector<ordered_json> records;
    std::vector<Table> tables;

    ordered_json to_json() const;
    std::string dump() const;  // two-space indent, trailing newline
};

/// Writes report.json (format json or both) and one CSV per table (csv or
/// both) into `dir`, creating it if needed. Returns the written paths.
std::vector<std::string> emit(const Report& report, const std::string& dir, const std::string& format);

}  // namespace gpe
