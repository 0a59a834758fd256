/*
 * Run configuration and artifact emission. Every emitted file carries the
 * full configuration and the build identifier, and rerunning an identical
 * configuration reproduces byte-identical numeric columns.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chargepage {

enum class Baseline { eq4, exact_page };
enum class OutputFormat { csv, json };

std::string to_string(Baseline b);
std::string to_string(OutputFormat f);

struct RunConfig {
    std::string command;
    std::vector<int> n_values;
    std::vector<int> n_a_list;        // empty = all 0..N
    std::uint64_t samples = 0;        // 0 = per-N defaults
    std::uint64_t seed = 1;
    std::string model = "both";       // noncommuting | commuting | both
    std::string sector = "microcanonical";
    std::optional<double> s;          // spin quantum number (may be half-integer)
    std::optional<double> m;
    Baseline baseline = Baseline::eq4;
    OutputFormat format = OutputFormat::csv;
    std::string out_path;             // empty = stdout
    bool no_cache = false;
    std::string cache_dir = ".chargepage-cache";

    std::string to_json() const;
};

std::string build_identifier();

// Locale-independent fixed formatting; identical doubles produce identical
// strings.
std::string format_double(double v);

// A small table emitter: CSV with '#' provenance comments, or a JSON
// document with config/build/rows fields. Cell values are preformatted
// strings so both formats share one code path.
struct ReportTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
    std::string to_csv(const RunConfig& config) const;
    std::string to_json(const RunConfig& config) const;
    std::string render(const RunConfig& config) const;  // picks config.format

    // Writes to config.out_path, or stdout when empty.
    void emit(const RunConfig& config) const;
};

}  // namespace chargepage
