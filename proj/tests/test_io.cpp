#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "chargepage/report.hpp"
#include "chargepage/sector_io.hpp"
#include "chargepage/sectors.hpp"

using namespace chargepage;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("chargepage-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("sector save/load round trip is exact") {
    TempDir tmp;
    SectorBasis original = amc_noncommuting(4, 2, 2);
    save_sector(original, tmp.path / "sector.cpsb");
    SectorBasis loaded = load_sector(tmp.path / "sector.cpsb");
    CHECK(loaded.label == original.label);
    CHECK(loaded.ambient_dim == original.ambient_dim);
    REQUIRE(loaded.dim() == original.dim());
    for (std::size_t i = 0; i < original.dim(); ++i) {
        REQUIRE(loaded.vectors[i].nnz() == original.vectors[i].nnz());
        for (std::size_t e = 0; e < original.vectors[i].nnz(); ++e) {
            CHECK(loaded.vectors[i].amps[e].first ==
                  original.vectors[i].amps[e].first);
            CHECK(loaded.vectors[i].amps[e].second ==
                  original.vectors[i].amps[e].second);
        }
    }
}

TEST_CASE("get_sector caches and reuses") {
    TempDir tmp;
    SectorLabel label;
    label.model = ChargeModel::commuting;
    label.kind = SectorKind::microcanonical;
    label.n_sites = 4;
    SectorBasis first = get_sector(label, tmp.path);
    CHECK(std::filesystem::exists(tmp.path / (label.to_string() + ".cpsb")));
    SectorBasis second = get_sector(label, tmp.path);
    CHECK(second.dim() == first.dim());
    // Empty cache dir disables caching entirely.
    SectorBasis uncached = get_sector(label, "");
    CHECK(uncached.dim() == first.dim());
}

TEST_CASE("loading a non-sector file fails cleanly") {
    TempDir tmp;
    auto file = tmp.path / "junk.cpsb";
    {
        std::ofstream out(file);
        out << "not a sector";
    }
    CHECK_THROWS(load_sector(file));
}

TEST_CASE("report tables render identically across runs") {
    RunConfig config;
    config.command = "page-curve";
    config.n_values = {4};
    config.n_a_list = {1, 2};
    config.samples = 100;
    config.seed = 9;

    auto build = [&]() {
        ReportTable t;
        t.columns = {"N", "N_A", "mean_nats"};
        t.add_row({"4", "1", format_double(1.234567890123)});
        t.add_row({"4", "2", format_double(0.1 + 0.2)});
        return t.to_csv(config);
    };
    CHECK(build() == build());
    // Config and build id are embedded in the header comments.
    std::string csv = build();
    CHECK(csv.find("# config") != std::string::npos);
    CHECK(csv.find("page-curve") != std::string::npos);
    CHECK(csv.find("# chargepage") != std::string::npos);
}

TEST_CASE("json mirrors the csv rows") {
    RunConfig config;
    config.command = "sectors";
    config.format = OutputFormat::json;
    ReportTable t;
    t.columns = {"model", "dim"};
    t.add_row({"noncommuting", "32"});
    std::string json = t.to_json(config);
    CHECK(json.find("\"rows\"") != std::string::npos);
    CHECK(json.find("\"noncommuting\"") != std::string::npos);
    CHECK(json.find("\"config\"") != std::string::npos);
}

TEST_CASE("format_double is locale-independent and stable") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1e-9) == "1e-09");
    CHECK(format_double(-2.0) == "-2");
}
