#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "anosovlab/representation.hpp"
#include "anosovlab/sopq.hpp"
#include "anosovlab/verification.hpp"

namespace anosov {

using json = nlohmann::json;

// Shortest decimal form that parses back to the same double, at most 17
// significant digits.
std::string format_double(double v);

json matrix_to_json(const Matd& m);  // row-major nested arrays
Matd matrix_from_json(const json& j);

json to_json(const Representation& rep);
Representation representation_from_json(const json& j);

json to_json(const GapScanReport& r);
json to_json(const TripleScanReport& r);
json to_json(const DualityReport& r);
json to_json(const ProjectionReport& r);
json to_json(const PositivityReport& r);
json to_json(const EigenIdentityReport& r);
json to_json(const CollarReport& r);
json to_json(const CollarScanReport& r);
json to_json(const SignScanReport& r);
json to_json(const ConvergenceReport& r);

// Draft-07 JSON schema describing the shape of a report: types, required
// keys, no extra keys, array item shapes.
json report_schema(const json& report, const std::string& title);
// Checks the subset of draft-07 emitted by report_schema (type, properties,
// required, additionalProperties, items, anyOf). Returns the error list.
std::vector<std::string> validate_json(const json& instance, const json& schema);
// Writes path and path + ".schema.json".
void write_json_report(const std::string& path, const json& report, const std::string& title);

struct CsvColumn {
    std::string name;
    std::string type;  // "number", "string", "boolean"
    std::string description;
};

struct CsvTable {
    std::string title;
    std::vector<CsvColumn> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const CsvTable& t);
json csv_schema(const CsvTable& t);
// Writes path and path + ".schema.json".
void write_csv(const std::string& path, const CsvTable& t);

CsvTable counterexample_table(const std::vector<CounterexampleRow>& rows);
CsvTable collar_table(const CollarScanReport& r);
CsvTable gap_table(const GapScanReport& r);

void write_text(const std::string& path, const std::string& text);

}  // namespace anosov
