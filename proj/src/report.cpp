#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "argvar/cli.hpp"
#include "argvar/errors.hpp"

namespace argvar::cli {

using json = nlohmann::ordered_json;

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json record_json(const CheckRecord& rec) {
    json j;
    j["check"] = rec.check;
    j["status"] = rec.status;
    if (!rec.message.empty()) j["message"] = rec.message;
    if (rec.result) {
        const auto& c = *rec.result;
        j["name"] = c.name;
        j["lhs"] = c.lhs;
        j["rhs"] = c.rhs;
        j["slack"] = c.slack;
        j["holds"] = c.holds;
        json inputs = json::object();
        for (const auto& [k, v] : c.inputs) inputs[k] = v;
        j["inputs"] = std::move(inputs);
    }
    return j;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

/// Clamped log10(rhs/lhs) used for slack plots and medians; lhs is floored so
/// zero-valued left-hand sides (e.g. zero-count 0) stay plottable.
double log10_slack(const bounds::BoundCheck& c) {
    double num = std::max(c.rhs, 1e-300);
    double den = std::max(c.lhs, 1e-6);
    double y = std::log10(num / den);
    return std::clamp(y, -308.0, 308.0);
}

std::string plot_csv(const std::vector<std::pair<int, double>>& pts) {
    std::string out = "index,log10_slack\n";
    for (const auto& [i, y] : pts)
        out += std::to_string(i) + "," + fmt_double(y) + "\n";
    return out;
}

std::string plot_svg(const std::vector<std::pair<int, double>>& pts) {
    const int w = 640, h = 400, ml = 50, mr = 15, mt = 15, mb = 35;
    double xmax = 1.0, ymin = 0.0, ymax = 1.0;
    if (!pts.empty()) {
        ymin = ymax = pts.front().second;
        for (const auto& [i, y] : pts) {
            xmax = std::max(xmax, double(i));
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
        if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }
    }
    auto px = [&](double i) { return ml + (w - ml - mr) * (xmax > 0 ? i / xmax : 0.5); };
    auto py = [&](double y) { return h - mb - (h - mt - mb) * (y - ymin) / (ymax - ymin); };
    char buf[256];
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
         "viewBox=\"0 0 640 400\">\n";
    s += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n",
                  ml, h - mb, w - mr, h - mb);
    s += buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n",
                  ml, mt, ml, h - mb);
    s += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-size=\"12\">scenario index</text>\n",
                  (ml + w - mr) / 2 - 40, h - 10);
    s += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"12\" y=\"%d\" font-size=\"12\" "
                  "transform=\"rotate(-90 12 %d)\">log10(rhs/lhs)</text>\n",
                  (mt + h - mb) / 2 + 40, (mt + h - mb) / 2 + 40);
    s += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-size=\"10\">%.3g</text>\n", 6, h - mb,
                  ymin);
    s += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-size=\"10\">%.3g</text>\n", 6, mt + 8,
                  ymax);
    s += buf;
    for (const auto& [i, y] : pts) {
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"steelblue\"/>\n",
                      px(double(i)), py(y));
        s += buf;
    }
    s += "</svg>\n";
    return s;
}

std::vector<std::pair<int, double>> report_points(const Report& r) {
    std::vector<std::pair<int, double>> pts;
    int i = 0;
    for (const auto& rec : r.records) {
        if (rec.result) pts.emplace_back(i, log10_slack(*rec.result));
        ++i;
    }
    return pts;
}

}  // namespace

std::string report_json(const Report& r) {
    json j;
    j["scenario"] = r.scenario_id;
    j["seed"] = r.seed;
    j["tool_version"] = r.tool_version;
    j["elapsed_seconds"] = r.elapsed_seconds;
    json m = json::object();
    for (const auto& [k, v] : r.measured) m[k] = v;
    j["measured"] = std::move(m);
    json checks = json::array();
    for (const auto& rec : r.records) checks.push_back(record_json(rec));
    j["checks"] = std::move(checks);
    return j.dump(2) + "\n";
}

std::string report_csv(const Report& r) {
    std::string out = "name,lhs,rhs,slack,holds,epsilon,D,gamma_length,kappa\n";
    for (const auto& rec : r.records) {
        if (!rec.result) {
            out += rec.check + ",,,," + rec.status + ",,,,\n";
            continue;
        }
        const auto& c = *rec.result;
        auto input = [&](const char* key) -> std::string {
            auto it = c.inputs.find(key);
            return it == c.inputs.end() ? std::string() : fmt_double(it->second);
        };
        out += c.name + "," + fmt_double(c.lhs) + "," + fmt_double(c.rhs) + "," +
               fmt_double(c.slack) + "," + (c.holds ? "true" : "false") + "," +
               input("epsilon") + "," + input("D") + "," + input("gamma_length") +
               "," + input("kappa") + "\n";
    }
    return out;
}

void emit_report(const Report& r, const std::string& format,
                 const std::string& out_dir) {
    if (format != "json" && format != "csv")
        throw ValidationError("unknown report format '" + format + "'");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    std::string base = out_dir + "/" + r.scenario_id;
    write_file(base + "." + format, format == "json" ? report_json(r) : report_csv(r));
    auto pts = report_points(r);
    write_file(base + "_plot.csv", plot_csv(pts));
    write_file(base + "_plot.svg", plot_svg(pts));
}

void emit_suite(const SuiteSummary& s, const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir + "/scenarios", ec);
    std::filesystem::create_directories(out_dir + "/reports", ec);
    for (const auto& sc : s.scenarios)
        write_file(out_dir + "/scenarios/" + sc.id + ".json", serialize_scenario(sc));
    std::vector<std::pair<int, double>> pts;
    for (size_t i = 0; i < s.reports.size(); ++i) {
        const Report& r = s.reports[i];
        write_file(out_dir + "/reports/" + r.scenario_id + ".json", report_json(r));
        for (const auto& rec : r.records)
            if (rec.result) pts.emplace_back(int(i), log10_slack(*rec.result));
    }
    json j;
    j["kind"] = s.kind;
    j["seed"] = s.seed;
    j["n"] = s.n;
    j["holds"] = s.holds;
    j["fails"] = s.fails;
    j["hypothesis_errors"] = s.hypothesis_errors;
    j["median_log10_slack"] = s.median_log10_slack;
    write_file(out_dir + "/summary.json", j.dump(2) + "\n");
    write_file(out_dir + "/plot.csv", plot_csv(pts));
    write_file(out_dir + "/plot.svg", plot_svg(pts));
}

}  // namespace argvar::cli
