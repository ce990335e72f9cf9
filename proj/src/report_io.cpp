#include "anosovlab/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "anosovlab/groups.hpp"

namespace anosov {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

json matrix_to_json(const Matd& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw InputError("matrix must be a non-empty array of rows");
    const Index r = Index(j.size());
    const Index c = Index(j[0].size());
    Matd m(r, c);
    for (Index i = 0; i < r; ++i) {
        if (!j[i].is_array() || Index(j[i].size()) != c) throw InputError("ragged matrix rows");
        for (Index k = 0; k < c; ++k) m(i, k) = j[i][k].get<double>();
    }
    return m;
}

json to_json(const Representation& rep) {
    json j;
    j["dim"] = rep.dim;
    j["label"] = rep.label;
    json gens = json::array();
    for (const auto& g : rep.generators) gens.push_back(matrix_to_json(g));
    j["generators"] = gens;
    j["reference"] = rep.reference ? to_json(*rep.reference) : json(nullptr);
    if (!rep.blocks.empty()) j["blocks"] = rep.blocks;
    return j;
}

Representation representation_from_json(const json& j) {
    try {
        Representation r;
        r.dim = j.at("dim").get<int>();
        r.label = j.value("label", std::string());
        for (const auto& g : j.at("generators")) r.generators.push_back(matrix_from_json(g));
        if (j.contains("reference") && !j["reference"].is_null())
            r.reference = std::make_shared<const Representation>(representation_from_json(j["reference"]));
        if (j.contains("blocks")) r.blocks = j["blocks"].get<std::vector<int>>();
        r.validate();
        return r;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed representation document: ") + e.what());
    }
}

namespace {

json words_json(const std::vector<Word>& ws) {
    json a = json::array();
    for (const auto& w : ws) a.push_back(word_to_string(w));
    return a;
}

json num(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

}  // namespace

json to_json(const GapScanReport& r) {
    json j;
    j["k"] = r.k;
    j["L"] = r.L;
    j["min_log_gap"] = r.min_log_gap;
    j["argmin"] = words_json(r.argmin);
    j["slope"] = r.slope;
    j["intercept"] = r.intercept;
    j["monotone_from_length_2"] = r.monotone;
    j["verdict"] = to_string(r.verdict);
    return j;
}

json to_json(const TripleScanReport& r) {
    json j;
    j["condition"] = std::string(to_string(r.condition)) + std::to_string(r.k);
    j["k"] = r.k;
    j["L"] = r.L;
    j["points"] = r.samples.size();
    j["triples"] = r.pass + r.fail + r.ambiguous;
    j["min_defect"] = num(r.min_defect);
    j["max_defect"] = num(r.max_defect);
    j["worst"] = {word_to_string(r.samples.empty() ? Word{} : r.samples[r.worst.x].word),
                  word_to_string(r.samples.empty() ? Word{} : r.samples[r.worst.y].word),
                  word_to_string(r.samples.empty() ? Word{} : r.samples[r.worst.z].word)};
    j["pass"] = r.pass;
    j["fail"] = r.fail;
    j["ambiguous"] = r.ambiguous;
    j["intersection_ambiguous"] = r.intersection_ambiguous;
    j["flags_certified"] = r.flags_certified;
    j["uncertified_dims"] = r.uncertified_dims;
    json gaps = json::array();
    for (const auto& g : r.gap_checks) gaps.push_back({{"index", g.index}, {"verdict", to_string(g.verdict)}});
    j["gap_checks"] = gaps;
    j["certifiable"] = r.certifiable;
    j["verdict"] = r.certifiable ? to_string(r.verdict) : "non-certifiable";
    j["defect_verdict"] = to_string(r.verdict);
    if (!r.entries.empty()) {
        json e = json::array();
        for (const auto& t : r.entries)
            e.push_back({{"x", word_to_string(r.samples[t.x].word)},
                         {"y", word_to_string(r.samples[t.y].word)},
                         {"z", word_to_string(r.samples[t.z].word)},
                         {"defect", num(t.defect)},
                         {"verdict", to_string(t.verdict)},
                         {"certified", t.certified}});
        j["entries"] = e;
    }
    return j;
}

json to_json(const DualityReport& r) {
    return {{"condition", to_string(r.condition)},  {"k", r.k},
            {"dual_k", r.dual_k},                   {"triples", r.triples},
            {"agree", r.agree},                     {"disagree", r.disagree},
            {"non_certifiable", r.non_certifiable},
            {"certification_agrees", r.certification_agrees},
            {"max_primal_defect_on_disagreement", num(r.max_primal_defect_on_disagreement)},
            {"max_dual_defect_on_disagreement", num(r.max_dual_defect_on_disagreement)}};
}

json to_json(const ProjectionReport& r) {
    return {{"k", r.k},
            {"base", word_to_string(r.base)},
            {"points", r.points},
            {"triples", r.triples},
            {"min_defect", num(r.min_defect)},
            {"worst", words_json(r.worst)},
            {"certified", r.certified},
            {"verdict", to_string(r.verdict)}};
}

json to_json(const PositivityReport& r) {
    return {{"k", r.k},
            {"L", r.L},
            {"points", r.points},
            {"quadruples", r.quadruples},
            {"arrangements", r.arrangements},
            {"min_gcr", num(r.min_gcr)},
            {"worst", words_json(r.worst)},
            {"verdict", r.pass ? "pass" : "fail"}};
}

json to_json(const EigenIdentityReport& r) {
    return {{"pcr_value", num(r.pcr_value)},
            {"gcr_value", num(r.gcr_value)},
            {"lambda_ratio", num(r.lambda_ratio)},
            {"lambda_ratio_signed", r.lambda_signed},
            {"weight_period", num(r.weight_period)},
            {"pcr_rel_error", num(r.pcr_rel_error)},
            {"gcr_rel_error", num(r.gcr_rel_error)}};
}

json to_json(const CollarReport& r) {
    return {{"g", word_to_string(r.g)},     {"h", word_to_string(r.h)},     {"k", r.k},
            {"lhs", num(r.lhs)},            {"rhs", num(r.rhs)},            {"weight_rhs", num(r.weight_rhs)},
            {"holds", r.holds},             {"margin", num(r.margin)},      {"sign_indeterminate", r.sign_indeterminate}};
}

json to_json(const CollarScanReport& r) {
    json j{{"k", r.k},
           {"L", r.L},
           {"words", r.words},
           {"linked_pairs", r.linked_pairs},
           {"violations", r.violations},
           {"weight_chain_violations", r.weight_chain_violations},
           {"sign_indeterminate", r.sign_indeterminate},
           {"min_margin", num(r.min_margin)},
           {"verdict", r.violations == 0 && r.weight_chain_violations == 0 ? "pass" : "fail"}};
    j["tightest"] = r.tightest ? to_json(*r.tightest) : json(nullptr);
    if (!r.pairs.empty()) {
        json a = json::array();
        for (const auto& c : r.pairs) a.push_back(to_json(c));
        j["pairs"] = a;
    }
    return j;
}

json to_json(const SignScanReport& r) {
    return {{"k", r.k},
            {"L", r.L},
            {"elements", r.elements},
            {"non_real", r.non_real},
            {"min_signed_ratio", num(r.min_signed_ratio)},
            {"argmin", word_to_string(r.argmin)},
            {"verdict", r.pass ? "pass" : "fail"}};
}

json to_json(const ConvergenceReport& r) {
    return {{"k", r.k}, {"log_distance", r.log_distance}, {"slope", r.slope}};
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) {
        if (c == '"') o += '"';
        o += c;
    }
    return o + "\"";
}

}  // namespace

std::string to_csv(const CsvTable& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_escape(t.columns[i].name);
    os << "\n";
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size()) throw InputError("csv row width differs from the header");
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i]);
        os << "\n";
    }
    return os.str();
}

json csv_schema(const CsvTable& t) {
    json cols = json::array();
    for (const auto& c : t.columns) cols.push_back({{"name", c.name}, {"type", c.type}, {"description", c.description}});
    return {{"title", t.title}, {"format", "csv"}, {"header_row", true}, {"columns", cols}};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open " + path + " for writing");
    f << text;
    if (!f) throw InputError("write to " + path + " failed");
}

namespace {

json shape(const json& v) {
    switch (v.type()) {
        case json::value_t::null: return {{"type", "null"}};
        case json::value_t::boolean: return {{"type", "boolean"}};
        case json::value_t::number_integer:
        case json::value_t::number_unsigned: return {{"type", "integer"}};
        case json::value_t::number_float: return {{"type", "number"}};
        case json::value_t::string: return {{"type", "string"}};
        case json::value_t::array: {
            json alts = json::array();
            for (const auto& e : v) {
                json s = shape(e);
                if (std::find(alts.begin(), alts.end(), s) == alts.end()) alts.push_back(std::move(s));
            }
            json a{{"type", "array"}};
            if (alts.size() == 1)
                a["items"] = alts[0];
            else if (!alts.empty())
                a["items"] = {{"anyOf", alts}};
            return a;
        }
        case json::value_t::object: {
            json props = json::object();
            json req = json::array();
            for (const auto& [k, e] : v.items()) {
                props[k] = shape(e);
                req.push_back(k);
            }
            return {{"type", "object"}, {"properties", props}, {"required", req}, {"additionalProperties", false}};
        }
        default: return json::object();
    }
}

bool has_type(const json& v, const std::string& t) {
    if (t == "null") return v.is_null();
    if (t == "boolean") return v.is_boolean();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "string") return v.is_string();
    if (t == "array") return v.is_array();
    if (t == "object") return v.is_object();
    return false;
}

void check(const json& v, const json& s, const std::string& at, std::vector<std::string>& errors) {
    if (s.contains("anyOf")) {
        for (const auto& alt : s["anyOf"]) {
            std::vector<std::string> e;
            check(v, alt, at, e);
            if (e.empty()) return;
        }
        errors.push_back(at + ": matches no alternative");
        return;
    }
    if (s.contains("type") && !has_type(v, s["type"].get<std::string>())) {
        errors.push_back(at + ": expected " + s["type"].get<std::string>());
        return;
    }
    if (v.is_object()) {
        if (s.contains("required"))
            for (const auto& k : s["required"])
                if (!v.contains(k.get<std::string>())) errors.push_back(at + ": missing " + k.get<std::string>());
        const json props = s.value("properties", json::object());
        for (const auto& [k, e] : v.items()) {
            if (props.contains(k))
                check(e, props[k], at + "/" + k, errors);
            else if (s.contains("additionalProperties") && s["additionalProperties"] == false)
                errors.push_back(at + ": unexpected key " + k);
        }
    }
    if (v.is_array() && s.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s["items"], at + "/" + std::to_string(i), errors);
}

}  // namespace

json report_schema(const json& report, const std::string& title) {
    json s = shape(report);
    s["$schema"] = "http://json-schema.org/draft-07/schema#";
    s["title"] = title;
    return s;
}

std::vector<std::string> validate_json(const json& instance, const json& schema) {
    std::vector<std::string> errors;
    check(instance, schema, "", errors);
    return errors;
}

void write_json_report(const std::string& path, const json& report, const std::string& title) {
    write_text(path, report.dump(2) + "\n");
    write_text(path + ".schema.json", report_schema(report, title).dump(2) + "\n");
}

void write_csv(const std::string& path, const CsvTable& t) {
    write_text(path, to_csv(t));
    write_text(path + ".schema.json", csv_schema(t).dump(2) + "\n");
}

CsvTable counterexample_table(const std::vector<CounterexampleRow>& rows) {
    CsvTable t{"counterexample grid",
               {{"x", "number", "family parameter"},
                {"ratio_gamma", "number", "|lambda_1/lambda_2| of the first generator"},
                {"ratio_delta", "number", "|lambda_1/lambda_2| of the second generator"},
                {"root_length", "number", "log of ratio_gamma"}},
               {}};
    for (const auto& r : rows)
        t.rows.push_back({format_double(r.x), format_double(r.ratio_gamma), format_double(r.ratio_delta),
                          format_double(r.root_length)});
    return t;
}

CsvTable collar_table(const CollarScanReport& r) {
    CsvTable t{"linked pairs",
               {{"g", "string", "first word"},
                {"h", "string", "second word"},
                {"lhs", "number", "exp of the weight length of g"},
                {"rhs", "number", "(1 - lambda_(k+1)/lambda_k (h))^-1"},
                {"weight_rhs", "number", "(1 - exp(-weight length of h))^-1"},
                {"margin", "number", "lhs - rhs"},
                {"holds", "boolean", "lhs > rhs"},
                {"sign_indeterminate", "boolean", "moduli used for the h ratio"}},
               {}};
    for (const auto& c : r.pairs)
        t.rows.push_back({word_to_string(c.g), word_to_string(c.h), format_double(c.lhs), format_double(c.rhs),
                          format_double(c.weight_rhs), format_double(c.margin), c.holds ? "true" : "false",
                          c.sign_indeterminate ? "true" : "false"});
    return t;
}

CsvTable gap_table(const GapScanReport& r) {
    CsvTable t{"gap scan",
               {{"length", "number", "word length"},
                {"min_log_gap", "number", "minimum of log sigma_k/sigma_(k+1) over the sphere"},
                {"argmin", "string", "word achieving the minimum"}},
               {}};
    for (std::size_t i = 0; i < r.min_log_gap.size(); ++i)
        t.rows.push_back({std::to_string(i + 1), format_double(r.min_log_gap[i]), word_to_string(r.argmin[i])});
    return t;
}

}  // namespace anosov
