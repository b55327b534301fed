#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "pbphase/cli.hpp"

using namespace pbphase;
using std::numbers::pi;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header = nullptr) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (header) *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("operator command writes the JSON schema", "[cli]") {
    const Result pb = run({"operator", "pb-spectral", "--dim", "2"});
    REQUIRE(pb.code == 0);
    const auto doc = nlohmann::json::parse(pb.out);
    CHECK(doc["dim"] == 2);
    const double expected[2][2] = {{pi / 2, -pi / 2}, {-pi / 2, pi / 2}};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            CHECK(doc["re"][r][c].get<double>() == Catch::Approx(expected[r][c]).margin(1e-15));
            CHECK(std::abs(doc["im"][r][c].get<double>()) < 1e-15);
        }
    CHECK(pb.out.rfind("{\"dim\":2,\"re\":[[", 0) == 0);
    CHECK(pb.out.back() == '\n');

    const Result number = run({"operator", "number", "--dim", "3"});
    REQUIRE(number.code == 0);
    CHECK(number.out == "{\"dim\":3,\"re\":[[0.0,0.0,0.0],[0.0,1.0,0.0],[0.0,0.0,2.0]],"
                        "\"im\":[[0.0,0.0,0.0],[0.0,0.0,0.0],[0.0,0.0,0.0]]}\n");

    const Result one = run({"operator", "dft", "--dim", "1"});
    CHECK(one.out == "{\"dim\":1,\"re\":[[1.0]],\"im\":[[0.0]]}\n");

    for (const char* name : {"pb-closed", "pb-paper-literal", "lsg", "log-lsg"}) {
        CHECK(run({"operator", name, "--dim", "4"}).code == 0);
    }
}

TEST_CASE("operator command usage errors exit 2", "[cli]") {
    CHECK(run({"operator", "bogus", "--dim", "2"}).code == 2);
    CHECK(run({"operator", "dft", "--dim", "0"}).code == 2);
    CHECK(run({"operator", "dft"}).code == 2);
    CHECK(run({"operator", "dft", "--dim", "2", "--format", "csv"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("I/O failure exits 3", "[cli]") {
    const Result r = run({"operator", "dft", "--dim", "2", "--out", "/nonexistent-dir/x.json"});
    CHECK(r.code == 3);
    CHECK_THAT(r.err, Catch::Matchers::ContainsSubstring("cannot open"));
    CHECK(run({"propagate", "--sites", "3", "--gamma", "1", "--excite", "0", "--z-max", "1", "--samples", "2",
               "--out", "/nonexistent-dir/t.csv"})
              .code == 3);
}

TEST_CASE("propagate writes the CSV trace", "[cli]") {
    std::string header;
    const Result r = run({"propagate", "--sites", "6", "--gamma", "1", "--excite", "0", "--z-max", "6.2831853",
                          "--samples", "629", "--method", "spectral"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out, &header);
    CHECK(header == "z,site0,site1,site2,site3,site4,site5");
    REQUIRE(rows.size() == 629);
    for (const auto& row : rows) CHECK(row.size() == 7);
    CHECK(rows.back()[0] == 6.2831853);
    CHECK(rows.back()[1] > 1.0 - 1e-9);

    const Result bessel = run({"propagate", "--sites", "6", "--gamma", "1", "--excite", "0", "--z-max", "6.2831853",
                               "--samples", "629", "--method", "bessel"});
    REQUIRE(bessel.code == 0);
    const auto brows = parse_csv(bessel.out);
    double worst = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < 7; ++c) worst = std::max(worst, std::abs(rows[i][c] - brows[i][c]));
    CHECK(worst < 1e-10);

    const Result still = run({"propagate", "--sites", "4", "--gamma", "1", "--excite", "2", "--z-max", "0",
                              "--samples", "2"});
    REQUIRE(still.code == 0);
    CHECK(still.out == "z,site0,site1,site2,site3\n0,0,0,1,0\n0,0,0,1,0\n");
}

TEST_CASE("propagate is deterministic and honours --out", "[cli]") {
    const auto dir = std::filesystem::temp_directory_path() / "pbphase_cli_test";
    std::filesystem::create_directories(dir);
    const auto a = dir / "a.csv";
    const auto b = dir / "b.csv";
    const std::vector<std::string> base{"propagate", "--sites", "5", "--gamma", "0.7", "--excite", "1",
                                        "--z-max", "3", "--samples", "50", "--method", "folded"};
    auto with_out = [&](const std::filesystem::path& p, bool parallel) {
        auto args = base;
        args.insert(args.end(), {"--out", p.string()});
        if (parallel) args.push_back("--parallel");
        return run(args);
    };
    REQUIRE(with_out(a, false).code == 0);
    REQUIRE(with_out(b, true).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == run(base).out);
    std::filesystem::remove_all(dir);
}

TEST_CASE("propagate usage errors exit 2", "[cli]") {
    const std::vector<std::string> good{"--sites", "6", "--gamma", "1", "--z-max", "1", "--samples", "3"};
    auto with = [&](std::vector<std::string> extra) {
        std::vector<std::string> args{"propagate"};
        args.insert(args.end(), good.begin(), good.end());
        args.insert(args.end(), extra.begin(), extra.end());
        return run(args).code;
    };
    CHECK(with({"--excite", "6"}) == 2);
    CHECK(with({"--excite", "0", "--method", "euler"}) == 2);
    CHECK(with({"--excite", "0", "--samples", "1"}) == 2);
    CHECK(with({"--excite", "0", "--gamma", "-1"}) == 2);
    CHECK(with({"--excite", "0", "--method", "ode", "--ode-step", "0.5"}) == 2);
    CHECK(with({"--excite", "0", "--method", "ode"}) == 0);
    CHECK(run({"propagate", "--sites", "1", "--gamma", "1", "--excite", "0", "--z-max", "1", "--samples", "3"}).code == 2);
}

TEST_CASE("revivals command", "[cli]") {
    const Result six = run({"revivals", "--sites", "6", "--gamma", "1", "--excite", "0", "--z-max", "7"});
    REQUIRE(six.code == 0);
    REQUIRE_THAT(six.out, Catch::Matchers::StartsWith("z="));
    CHECK(std::abs(std::stod(six.out.substr(2)) - 2.0 * pi) < 1e-6);
    CHECK_THAT(six.out, Catch::Matchers::EndsWith("count=1\n"));

    const Result two = run({"revivals", "--sites", "2", "--gamma", "1", "--excite", "0", "--z-max", "2"});
    REQUIRE(two.code == 0);
    REQUIRE_THAT(two.out, Catch::Matchers::StartsWith("z="));
    CHECK(std::abs(std::stod(two.out.substr(2)) - pi / 2) < 1e-6);

    const Result five = run({"revivals", "--sites", "5", "--gamma", "1", "--excite", "0", "--z-max", "20", "--tol", "1e-9"});
    CHECK(five.code == 0);
    CHECK(five.out == "count=0\n");

    CHECK(run({"revivals", "--sites", "5", "--gamma", "1", "--excite", "0", "--z-max", "0"}).code == 2);
}

TEST_CASE("selftest command", "[cli]") {
    const Result small = run({"selftest", "--max-dim", "1"});
    CHECK(small.code == 2);
    const Result full = run({"selftest", "--max-dim", "6", "--seed", "7"});
    CHECK(full.code == 0);
    CHECK_THAT(full.out, Catch::Matchers::ContainsSubstring("ratio 2.0000000000"));
    CHECK(run({"selftest", "--max-dim", "6", "--seed", "7"}).out == full.out);
}

TEST_CASE("format_double", "[cli]") {
    CHECK(cli::format_double(0.1) == "0.10000000000000001");
    CHECK(cli::format_double(1.0) == "1");
    CHECK(cli::format_double(1e-20) == "9.9999999999999995e-21");
    CHECK(std::stod(cli::format_double(pi)) == pi);
}
