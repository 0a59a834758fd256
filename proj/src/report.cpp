#include "chargepage/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

#ifndef CHARGEPAGE_BUILD_ID
#define CHARGEPAGE_BUILD_ID "unknown"
#endif

namespace chargepage {

using nlohmann::json;

std::string to_string(Baseline b) {
    return b == Baseline::eq4 ? "eq4" : "exact-page";
}

std::string to_string(OutputFormat f) {
    return f == OutputFormat::csv ? "csv" : "json";
}

std::string build_identifier() { return CHARGEPAGE_BUILD_ID; }

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

json config_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["n"] = c.n_values;
    j["na"] = c.n_a_list;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["model"] = c.model;
    j["sector"] = c.sector;
    if (c.s) j["s"] = *c.s;
    if (c.m) j["m"] = *c.m;
    j["baseline"] = to_string(c.baseline);
    j["format"] = to_string(c.format);
    j["out"] = c.out_path;
    j["no_cache"] = c.no_cache;
    j["cache_dir"] = c.cache_dir;
    return j;
}

}  // namespace

std::string RunConfig::to_json() const { return config_json(*this).dump(); }

void ReportTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size())
        throw std::invalid_argument("ReportTable: cell count mismatch");
    rows.push_back(std::move(cells));
}

std::string ReportTable::to_csv(const RunConfig& config) const {
    std::string out;
    out += "# chargepage " + build_identifier() + "\n";
    out += "# config " + config.to_json() + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out += columns[i];
        out += (i + 1 < columns.size()) ? ',' : '\n';
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            out += (i + 1 < row.size()) ? ',' : '\n';
        }
    }
    return out;
}

std::string ReportTable::to_json(const RunConfig& config) const {
    json j;
    j["build"] = build_identifier();
    j["config"] = config_json(config);
    j["columns"] = columns;
    json data = json::array();
    for (const auto& row : rows) {
        json obj;
        for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
        data.push_back(obj);
    }
    j["rows"] = data;
    return j.dump(2) + "\n";
}

std::string ReportTable::render(const RunConfig& config) const {
    return config.format == OutputFormat::csv ? to_csv(config) : to_json(config);
}

void ReportTable::emit(const RunConfig& config) const {
    const std::string text = render(config);
    if (config.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(config.out_path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open output file: " + config.out_path);
    out << text;
}

}  // namespace chargepage
