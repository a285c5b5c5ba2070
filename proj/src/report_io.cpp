#include "egp/report_io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace egp {

namespace {

using nlohmann::json;

std::string quoted(const std::string& s) { return json(s).dump(); }

std::string number_or_null(const std::optional<double>& v)
{
    if (!v || !std::isfinite(*v)) {
        return "null";
    }
    return format_number(*v);
}

// Ordered (key, value) pairs for a worst point.
std::vector<std::pair<std::string, double>> point_fields(const WorstPoint& point)
{
    if (const auto* z = std::get_if<ZPoint>(&point)) {
        return {{"s", z->s}, {"t", z->t}, {"x", z->x}};
    }
    const auto& k = std::get<KernelPoint>(point);
    std::vector<std::pair<std::string, double>> out = {
        {"alpha", k.alpha}, {"beta", k.beta}, {"u", k.u}};
    if (k.lambda) {
        out.emplace_back("lambda", *k.lambda);
    }
    return out;
}

double require_number(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw std::invalid_argument(std::string("report: missing numeric field '") + key + "'");
    }
    return j.at(key).get<double>();
}

std::size_t require_count(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_number_unsigned()) {
        throw std::invalid_argument(std::string("report: missing count field '") + key + "'");
    }
    return j.at(key).get<std::size_t>();
}

WorstPoint parse_point(const json& j)
{
    if (!j.is_object()) {
        throw std::invalid_argument("report: worst_point must be an object or null");
    }
    if (j.contains("x")) {
        return ZPoint{require_number(j, "s"), require_number(j, "t"), require_number(j, "x")};
    }
    KernelPoint k{require_number(j, "alpha"), require_number(j, "beta"), require_number(j, "u"),
                  std::nullopt};
    if (j.contains("lambda")) {
        k.lambda = require_number(j, "lambda");
    }
    return k;
}

} // namespace

std::string format_number(double v)
{
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return buf.data();
}

std::string to_json(const ReportDocument& doc)
{
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < doc.reports.size(); ++i) {
        const VerificationReport& r = doc.reports[i];
        out << (i == 0 ? "\n" : ",\n");
        out << "  {\n";
        out << "    \"check_name\": " << quoted(r.check_name) << ",\n";
        out << "    \"points_tested\": " << r.points_tested << ",\n";
        out << "    \"violations\": " << r.violations << ",\n";
        out << "    \"worst_margin\": " << number_or_null(r.worst_margin) << ",\n";
        out << "    \"tolerance\": " << format_number(r.tolerance) << ",\n";
        out << "    \"passed\": " << (r.passed ? "true" : "false") << ",\n";
        out << "    \"worst_point\": ";
        if (r.worst_point) {
            out << "{";
            const auto fields = point_fields(*r.worst_point);
            for (std::size_t f = 0; f < fields.size(); ++f) {
                out << (f == 0 ? "" : ", ") << quoted(fields[f].first) << ": "
                    << format_number(fields[f].second);
            }
            out << "}";
        } else {
            out << "null";
        }
        if (doc.timestamp) {
            out << ",\n    \"timestamp\": " << quoted(*doc.timestamp);
        }
        out << "\n  }";
    }
    out << (doc.reports.empty() ? "]\n" : "\n]\n");
    return out.str();
}

ReportDocument from_json(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("report: ") + e.what());
    }
    if (!root.is_array()) {
        throw std::invalid_argument("report: top level must be an array");
    }
    ReportDocument doc;
    for (const json& j : root) {
        if (!j.is_object()) {
            throw std::invalid_argument("report: entries must be objects");
        }
        VerificationReport r;
        if (!j.contains("check_name") || !j.at("check_name").is_string()) {
            throw std::invalid_argument("report: missing 'check_name'");
        }
        r.check_name = j.at("check_name").get<std::string>();
        r.points_tested = require_count(j, "points_tested");
        r.violations = require_count(j, "violations");
        if (j.contains("worst_margin") && !j.at("worst_margin").is_null()) {
            r.worst_margin = require_number(j, "worst_margin");
        }
        r.tolerance = require_number(j, "tolerance");
        if (!j.contains("passed") || !j.at("passed").is_boolean()) {
            throw std::invalid_argument("report: missing 'passed'");
        }
        r.passed = j.at("passed").get<bool>();
        if (j.contains("worst_point") && !j.at("worst_point").is_null()) {
            r.worst_point = parse_point(j.at("worst_point"));
        }
        if (j.contains("timestamp")) {
            doc.timestamp = j.at("timestamp").get<std::string>();
        }
        doc.reports.push_back(std::move(r));
    }
    return doc;
}

std::string to_csv(const ReportDocument& doc)
{
    std::ostringstream out;
    out << "check_name,points_tested,violations,worst_margin,tolerance,passed,worst_point";
    if (doc.timestamp) {
        out << ",timestamp";
    }
    out << "\n";
    for (const VerificationReport& r : doc.reports) {
        out << r.check_name << ',' << r.points_tested << ',' << r.violations << ',';
        if (r.worst_margin && std::isfinite(*r.worst_margin)) {
            out << format_number(*r.worst_margin);
        }
        out << ',' << format_number(r.tolerance) << ',' << (r.passed ? "true" : "false") << ',';
        if (r.worst_point) {
            const auto fields = point_fields(*r.worst_point);
            for (std::size_t f = 0; f < fields.size(); ++f) {
                out << (f == 0 ? "" : ";") << fields[f].first << '=' << format_number(fields[f].second);
            }
        }
        if (doc.timestamp) {
            out << ',' << *doc.timestamp;
        }
        out << "\n";
    }
    return out.str();
}

std::string to_plain(const ReportDocument& doc)
{
    std::ostringstream out;
    for (const VerificationReport& r : doc.reports) {
        out << (r.passed ? "PASS " : "FAIL ") << r.check_name << ": " << r.points_tested
            << " points, " << r.violations << " violations, worst margin "
            << number_or_null(r.worst_margin) << " (tol " << format_number(r.tolerance) << ")";
        if (r.worst_point) {
            out << " at";
            for (const auto& [key, value] : point_fields(*r.worst_point)) {
                out << ' ' << key << '=' << format_number(value);
            }
        }
        out << "\n";
    }
    return out.str();
}

std::string utc_timestamp()
{
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::array<char, 32> buf{};
    std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf.data();
}

} // namespace egp
