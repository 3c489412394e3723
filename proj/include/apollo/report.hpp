#pragma once

// Report construction and serialization. Reports are deterministic: JSON
// objects serialize with sorted keys and no volatile fields (timings and
// thread counts stay out), so equal inputs give byte-identical files.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "apollo/classify.hpp"
#include "apollo/enumerate.hpp"
#include "apollo/version.hpp"

namespace apollo {

using json = nlohmann::json;

inline constexpr const char* kChi4Note =
    "chi4 is reported up to conjugation: i and -i are not distinguished";

namespace detail {

inline json quad_json(const Quadruple& q) { return json::array({q[0], q[1], q[2], q[3]}); }

inline json type_json(const PackingType& t) {
    json j;
    j["size"] = t.size;
    j["k"] = t.k;
    j["chi2"] = t.chi2;
    if (t.chi4 == Chi4Class::not_applicable)
        j["chi4"] = nullptr;
    else
        j["chi4"] = to_string(t.chi4);
    return j;
}

inline json families_json(const std::vector<ObstructionFamily>& fams) {
    json arr = json::array();
    for (const auto& f : fams) arr.push_back({{"degree", f.degree}, {"multiplier", f.multiplier}});
    return arr;
}

// zero-padded class key, so lexicographic JSON key order is numeric order
inline std::string class_key(int r) { return r < 10 ? "0" + std::to_string(r) : std::to_string(r); }

inline json classes_json(const std::vector<std::pair<int, std::vector<int64_t>>>& classes) {
    json j = json::object();
    for (const auto& [r, vals] : classes) j[class_key(r)] = vals;
    return j;
}

inline void meta_fields(json& j) {
    j["tool"] = kToolName;
    j["tool_version"] = kVersion;
}

}  // namespace detail

// Classification report for one quadruple.
inline json classify_report(const Quadruple& q) {
    Quadruple root = reduce_to_root(validate(q));
    PackingType t = extended_type(root);
    ObstructionReport obs = obstructions_for(t);
    json j;
    detail::meta_fields(j);
    j["quad"] = detail::quad_json(q);
    j["root"] = detail::quad_json(root);
    j["type"] = detail::type_json(t);
    j["type_string"] = to_string(t);
    if (t.chi4 != Chi4Class::not_applicable) j["chi4_note"] = kChi4Note;
    j["admissible_residues"] = admissible_residues({t.size, t.k}).values();
    j["families"] = detail::families_json(obs.families);
    j["false_classes"] = obs.false_classes.values();
    j["open_classes"] = obs.open_classes.values();
    return j;
}

inline json missing_report_json(const MissingReport& rep, const PackingType& t) {
    json j;
    detail::meta_fields(j);
    j["root"] = detail::quad_json(rep.root);
    j["bound"] = rep.bound;
    j["type"] = detail::type_json(t);
    j["type_string"] = to_string(t);
    j["admissible_residues"] = rep.admissible.values();
    j["missing"] = detail::classes_json(rep.classes);
    int64_t total = 0;
    for (const auto& [r, vals] : rep.classes) total += (int64_t)vals.size();
    j["missing_count"] = total;
    return j;
}

inline json sporadic_report_json(const SporadicReport& rep, const PackingType& t,
                                 const std::vector<ObstructionFamily>& fams) {
    json j;
    detail::meta_fields(j);
    j["root"] = detail::quad_json(rep.root);
    j["bound"] = rep.bound;
    j["type"] = detail::type_json(t);
    j["type_string"] = to_string(t);
    j["families"] = detail::families_json(fams);
    j["sporadic"] = detail::classes_json(rep.classes);
    j["sporadic_count"] = rep.count;
    j["sporadic_max"] = rep.max_value;
    return j;
}

inline json cooccurrence_json(const CooccurrenceReport& rep) {
    json j;
    j["squares24"] = rep.squares24;
    j["squares8"] = rep.squares8;
    j["pass"] = rep.pass;
    return j;
}

// Canonical serialization: two-space indent, sorted keys, trailing newline.
inline std::string canonical(const json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline std::string csv_header(const json& report) {
    std::string s = "# tool=" + std::string(kToolName) + " version=" + std::string(kVersion) + "\n";
    s += "# root=";
    const json& root = report.at("root");
    for (size_t i = 0; i < root.size(); ++i)
        s += (i ? "," : "") + std::to_string((int64_t)root[i]);
    if (report.contains("bound")) s += " bound=" + std::to_string((int64_t)report.at("bound"));
    s += " type=" + report.at("type_string").get<std::string>() + "\n";
    return s;
}

inline std::string classes_csv(const json& report, const char* field) {
    std::string s = csv_header(report) + "class,value\n";
    for (const auto& [key, vals] : report.at(field).items())
        for (const auto& v : vals) s += std::to_string(std::stoi(key)) + "," + std::to_string((int64_t)v) + "\n";
    return s;
}

}  // namespace detail

inline std::string missing_report_csv(const json& report) {
    return detail::classes_csv(report, "missing");
}

inline std::string sporadic_report_csv(const json& report) {
    return detail::classes_csv(report, "sporadic");
}

inline std::string classify_report_csv(const json& report) {
    std::string s = detail::csv_header(report) + "key,value\n";
    s += "type," + report.at("type_string").get<std::string>() + "\n";
    s += "chi2," + std::to_string((int)report.at("type").at("chi2")) + "\n";
    s += "chi4,";
    s += report.at("type").at("chi4").is_null() ? "n/a" : report.at("type").at("chi4").get<std::string>();
    s += "\n";
    auto list_row = [&](const char* key) {
        s += std::string(key) + ",";
        const json& arr = report.at(key);
        for (size_t i = 0; i < arr.size(); ++i) s += (i ? " " : "") + std::to_string((int64_t)arr[i]);
        s += "\n";
    };
    list_row("admissible_residues");
    list_row("false_classes");
    list_row("open_classes");
    return s;
}

// Successive differences of the merged missing or sporadic list of a report.
// Accepts a report produced by missing_report_json or sporadic_report_json.
inline std::vector<int64_t> merged_report_values(const json& report) {
    const char* field = report.contains("sporadic") ? "sporadic"
                        : report.contains("missing") ? "missing"
                                                     : nullptr;
    if (!field || !report.at(field).is_object())
        throw format_error("report has no missing or sporadic value lists");
    std::vector<int64_t> vals;
    for (const auto& [key, arr] : report.at(field).items()) {
        if (!arr.is_array()) throw format_error("malformed value list in report");
        for (const auto& v : arr) {
            if (!v.is_number_integer()) throw format_error("malformed value in report");
            vals.push_back((int64_t)v);
        }
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

inline json diff_report_json(const json& source_report) {
    std::vector<int64_t> vals = merged_report_values(source_report);
    json j;
    detail::meta_fields(j);
    if (source_report.contains("root")) j["root"] = source_report.at("root");
    if (source_report.contains("bound")) j["bound"] = source_report.at("bound");
    j["values"] = vals;
    j["differences"] = successive_differences(vals);
    return j;
}

inline std::string diff_report_csv(const json& diff_report) {
    std::string s = "index,difference\n";
    const json& diffs = diff_report.at("differences");
    for (size_t i = 0; i < diffs.size(); ++i)
        s += std::to_string(i + 1) + "," + std::to_string((int64_t)diffs[i]) + "\n";
    return s;
}

}  // namespace apollo
