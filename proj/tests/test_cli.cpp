#include "cli.hpp"

#include "demogdp/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

namespace fs = std::filesystem;
using demogdp::cli::run;

namespace {

const std::string data_dir = DEMOGDP_DATA_DIR;
const std::string usa_cfg = data_dir + "/usa/usa.cfg";

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = run(args, out, err);
    return {status, out.str(), err.str()};
}

fs::path scratch(const std::string &name) {
    const auto dir = fs::temp_directory_path() / "demogdp_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("validate lists the series ranges") {
    const auto r = invoke({"validate", "-c", usa_cfg});
    CHECK(r.status == 0);
    CHECK(r.out.find("gdp=1929-2004") != std::string::npos);
    CHECK(r.out.find("population=1929-2004") != std::string::npos);
    CHECK(r.out.find("pyramid.1990=ages 0-100") != std::string::npos);
}

TEST_CASE("decompose with the USA inputs") {
    const auto out = scratch("decompose.txt");
    const auto r = invoke({"decompose", "--cohort-start", "2402326", "--cohort-end", "4173171",
                           "--gpc-start", "12123", "--gpc-end", "38345", "--from", "1950",
                           "--to", "2004", "--total", "net_gain", "-o", out.string()});
    REQUIRE(r.status == 0);
    CHECK(r.out.find("population=0.369") != std::string::npos);
    CHECK(r.out.find("trend=1.794") != std::string::npos);
    CHECK(r.out.find("trend=$403") != std::string::npos);
    CHECK(r.out.find("population=$83") != std::string::npos);
    const auto text = demogdp::io::read_text(out);
    CHECK(text.find("# subcommand=decompose\n") == 0);
    CHECK(text.find("population_component=0.368569") != std::string::npos);
}

TEST_CASE("compounding demo prints both factors") {
    const auto r = invoke({"compounding-demo", "--mean", "0.02", "--amplitude", "0.05",
                           "--years", "50"});
    CHECK(r.status == 0);
    CHECK(r.out == "compounding-demo: oscillating=2.5345 smooth=2.6916 years=50\n");
}

TEST_CASE("exit status 2 for usage errors") {
    CHECK(invoke({}).status == 2);
    CHECK(invoke({"frobnicate"}).status == 2);
    CHECK(invoke({"predict", "--no-such-flag"}).status == 2);
    CHECK(invoke({"compounding-demo", "--mean", "0.02"}).status == 2);
    CHECK(invoke({"compounding-demo", "--mean", "x", "--amplitude", "0", "--years", "2"})
              .status == 2);
    CHECK(invoke({"invert", "-c", usa_cfg}).status == 2);
    CHECK(invoke({"validate", "--set", "novalue"}).status == 2);
    const auto r = invoke({"fit-n0", "-c", usa_cfg, "--initial-year", "1970"});
    CHECK(r.status == 2);
    CHECK(r.err.find("demogdp fit-n0: usage error:") == 0);
}

TEST_CASE("exit status 1 for domain, format and I/O errors") {
    const auto odd = invoke({"compounding-demo", "--mean", "0.02", "--amplitude", "0.05",
                             "--years", "51"});
    CHECK(odd.status == 1);
    CHECK(odd.err.find("demogdp compounding-demo: error:") == 0);
    CHECK(invoke({"validate", "-c", "/nonexistent/x.cfg"}).status == 1);

    const auto bad = scratch("bad_gdp.csv");
    demogdp::io::write_text(bad, "year,value,unit=dollars_real\n1950,1\n1952,2\n");
    const auto r = invoke({"validate", "-c", usa_cfg, "--set", "gdp=" + bad.string()});
    CHECK(r.status == 1);
    CHECK(r.err.find("gap: missing year 1951") != std::string::npos);

    CHECK(invoke({"validate", "-c", usa_cfg, "--set", "dollar_base=1990 francs"}).status == 1);
    CHECK(invoke({"project-cohort", "-c", usa_cfg, "--pyramid-year", "1980", "--from", "2050",
                  "--to", "2060"})
              .status == 1);
}

TEST_CASE("help exits 0 and states the formula") {
    const auto r = invoke({"predict", "--help"});
    CHECK(r.status == 0);
    CHECK(r.out.find("g = 0.5 dN/N + 1/T_cr") != std::string::npos);
    CHECK(invoke({"--help"}).status == 0);
}

TEST_CASE("flags override --set which overrides the config") {
    const auto out = scratch("project.csv");
    const auto r = invoke({"project-cohort", "-c", usa_cfg, "--set", "pyramid_year=1990",
                           "--set", "age=12", "--age", "9", "-o", out.string()});
    REQUIRE(r.status == 0);
    CHECK(r.out.find("age 9 from 1990") != std::string::npos);
    const auto text = demogdp::io::read_text(out);
    CHECK(text.find("# age=9\n") != std::string::npos);
    CHECK(text.find("# country=USA\n") != std::string::npos);
}

TEST_CASE("model subcommands run on the sample data") {
    const std::vector<std::vector<std::string>> commands{
        {"predict", "-c", usa_cfg, "--pyramid-year", "1990"},
        {"predict-percap", "-c", usa_cfg, "--pyramid-year", "2000"},
        {"invert", "-c", usa_cfg, "--pyramid-year", "2000", "--initial-year", "1951",
         "--initial-count", "3800000"},
        {"invert-percap", "-c", usa_cfg, "--pyramid-year", "2000", "--initial-year", "1951",
         "--initial-count", "3800000", "--trend-a", "535"},
        {"fit-n0", "-c", usa_cfg, "--pyramid-year", "1980", "--initial-year", "1951", "--from",
         "1970", "--to", "1989"},
        {"fit-n0", "-c", usa_cfg, "--pyramid-year", "2000", "--initial-year", "1951", "--from",
         "1960", "--to", "2002", "--model", "percap"},
        {"calibrate-age", "-c", usa_cfg, "--pyramid-year", "1990"},
        {"fit-trend", "-c", usa_cfg, "--from", "1951", "--to", "2002"},
        {"mean-increment", "-c", usa_cfg, "--from", "1950", "--to", "2004"},
        {"decompose", "-c", usa_cfg, "--pyramid-year", "2000", "--from", "1950", "--to", "2004",
         "--total", "net_gain", "--format", "csv"},
    };
    for (auto args : commands) {
        const auto out = scratch(args.front() + ".out");
        args.insert(args.end(), {"-o", out.string()});
        const auto r = invoke(args);
        INFO(args.front(), " ", r.err);
        CHECK(r.status == 0);
        CHECK(r.out.find(args.front() + ":") == 0);
        CHECK(fs::exists(out));
    }
}

}
