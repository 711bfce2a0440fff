// Copyright 2026 The fockgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "fockgate/errors.hpp"

using namespace fockgate;
using namespace fockgate::cli;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome invoke(std::initializer_list<std::string> args) {
    std::vector<std::string> storage{"fockgate"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage) argv.push_back(s.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int status = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream fields(line);
        std::string cell;
        while (std::getline(fields, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Drops the fields that legitimately differ between two otherwise identical runs.
json comparable(json j) {
    j["metadata"].erase("timestamp");
    j["metadata"]["parameters"].erase("output");
    return j;
}

class ScratchDir : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("fockgate_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

}  // namespace

TEST(cli_sweep, single_photon_curve_vanishes_at_one) {
    const Outcome r = invoke({"sweep", "--n", "1", "--eta", "1.0", "--beta-min", "0", "--beta-max", "3", "--steps", "301"});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    ASSERT_FALSE(r.out.empty());
    EXPECT_EQ(r.out.back(), '\n');
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 302u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"beta_eta_abs", "p_fn", "p_fp", "method"}));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ASSERT_EQ(rows[i].size(), 4u);
        for (int c : {1, 2}) {
            const double p = std::stod(rows[i][c]);
            EXPECT_GE(p, 0.0);
            EXPECT_LE(p, 1.0);
        }
    }
    EXPECT_EQ(std::stod(rows[101][0]), 1.0);
    EXPECT_EQ(std::stod(rows[101][1]), 0.0);
    EXPECT_EQ(rows[101][0], "1.00000000000e+00");  // 12 significant digits
}

TEST(cli_sweep, vacuum_reference) {
    const Outcome r = invoke({"sweep", "--vacuum", "--eta", "1.0", "--beta-min", "0", "--beta-max", "3", "--steps", "301"});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    EXPECT_NEAR(std::stod(parse_csv(r.out)[101][1]), 0.367879441171, 1e-11);
}

TEST(cli_sweep, degenerate_grid_rejected) {
    const Outcome r = invoke({"sweep", "--steps", "0"});
    EXPECT_EQ(r.status, kExitBadInput);
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
    EXPECT_EQ(invoke({"sweep", "--beta-min", "2", "--beta-max", "1"}).status, kExitBadInput);
    EXPECT_EQ(invoke({"sweep", "--format", "xml"}).status, kExitBadInput);
    EXPECT_EQ(invoke({"sweep", "--eta", "1.5"}).status, kExitBadInput);
    EXPECT_EQ(invoke({"sweep", "--steps", "many"}).status, kExitBadInput);
    EXPECT_EQ(invoke({"sweep", "--bogus", "1"}).status, kExitBadInput);
    EXPECT_EQ(invoke({}).status, kExitBadInput);
}

TEST(cli_sweep, json_round_trips) {
    const Outcome r = invoke({"sweep", "--n", "2", "--eta", "0.9", "--r", "0.5", "--beta-max", "1.5", "--steps", "4",
                              "--format", "json"});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    const json j = json::parse(r.out);
    const RunConfig config = run_config_from_json(j["metadata"]["parameters"]);
    EXPECT_EQ(config.command, "sweep");
    EXPECT_EQ(config.n, 2);
    EXPECT_EQ(config.r, 0.5);
    EXPECT_EQ(config.format, "json");
    EXPECT_EQ(to_json(config), j["metadata"]["parameters"]);
    EXPECT_EQ(j["metadata"]["tool_version"], FOCKGATE_VERSION);
    EXPECT_TRUE(j["metadata"].contains("timestamp"));

    const std::vector<double> grid = linear_grid(config.beta_min, config.beta_max, config.steps);
    const auto expect = sweep(grid, config.n, config.eta, config.r);
    ASSERT_EQ(j["rows"].size(), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
        const SweepRow row = sweep_row_from_json(j["rows"][i]);
        EXPECT_EQ(row.beta_eta_abs, expect[i].beta_eta_abs);
        EXPECT_EQ(row.p_fn, expect[i].p_fn);
        EXPECT_EQ(row.p_fp, expect[i].p_fp);
        EXPECT_EQ(row.method, Method::numeric);
    }
}

TEST(cli_optimize, reference_operating_point) {
    const Outcome r = invoke({"optimize", "--n", "1", "--eta", "0.95", "--alpha", "1e4"});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    const json res = json::parse(r.out)["result"];
    EXPECT_NEAR(res["beta_eta"].get<double>(), 1.0, 1e-9);
    EXPECT_NEAR(res["p_fn"].get<double>(), 0.018394, 1e-6);
    EXPECT_NEAR(res["p_fp"].get<double>(), 0.05, 1e-12);

    const Outcome s = invoke({"optimize", "--n", "1", "--eta", "1", "--r", "1", "--alpha", "100"});
    ASSERT_EQ(s.status, kExitOk) << s.err;
    EXPECT_NEAR(json::parse(s.out)["result"]["phi"].get<double>(), 3.678794e-3, 1e-9);

    EXPECT_EQ(invoke({"optimize", "--eta", "0"}).status, kExitBadInput);
}

TEST_F(ScratchDir, montecarlo_reproducible_and_within_four_sigma) {
    const fs::path a = dir_ / "a.json";
    const fs::path b = dir_ / "b.json";
    const fs::path trials = dir_ / "trials.csv";
    for (const auto& out : {a, b}) {
        const Outcome r = invoke({"montecarlo", "--n", "1", "--eta", "0.95", "--beta-eta", "1", "--trials", "100000",
                                  "--seed", "42", "--output", out.string(), "--trials-csv", trials.string()});
        ASSERT_EQ(r.status, kExitOk) << r.err;
        EXPECT_TRUE(r.out.empty());
    }
    const json ja = json::parse(slurp(a));
    const json jb = json::parse(slurp(b));
    EXPECT_EQ(comparable(ja).dump(), comparable(jb).dump());
    const json& res = ja["result"];
    EXPECT_EQ(res["seed"], 42);
    EXPECT_EQ(res["trials"], 100000);
    EXPECT_EQ(res["method"], "empirical");
    EXPECT_LE(std::abs(res["p_fn"].get<double>() - 0.0183939720585721), 4.0 * res["std_err"]["p_fn"].get<double>());
    EXPECT_LE(std::abs(res["p_fp"].get<double>() - 0.05), 4.0 * res["std_err"]["p_fp"].get<double>());
    EXPECT_NEAR(ja["reference"]["p_fn"].get<double>(), 0.0183939720585721, 1e-15);

    const auto rows = parse_csv(slurp(trials));
    ASSERT_EQ(rows.size(), 200001u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"trial", "true_hypothesis", "count", "decision", "seed"}));
    for (const auto& entry : fs::directory_iterator(dir_)) {
        EXPECT_EQ(entry.path().extension() == ".tmp", false) << entry.path();
    }
    EXPECT_EQ(invoke({"montecarlo", "--trials", "0"}).status, kExitBadInput);
}

TEST_F(ScratchDir, unwritable_output_is_io_error) {
    const fs::path missing = dir_ / "no" / "such" / "dir" / "out.csv";
    const Outcome r = invoke({"sweep", "--steps", "3", "--output", missing.string()});
    EXPECT_EQ(r.status, kExitIo);
    EXPECT_FALSE(fs::exists(missing));
    EXPECT_EQ(invoke({"sweep", "--config", (dir_ / "absent.ini").string()}).status, kExitIo);
}

TEST_F(ScratchDir, config_file_with_command_line_override) {
    const fs::path ini = dir_ / "run.ini";
    std::ofstream(ini) << "# lossy single photon\neta = 0.95\nbeta_max = 2\nsteps = 5\n\nformat=json\n";
    const Outcome r = invoke({"sweep", "--config", ini.string(), "--steps", "3"});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["metadata"]["parameters"]["steps"], 3);
    EXPECT_EQ(j["metadata"]["parameters"]["eta"], 0.95);
    ASSERT_EQ(j["rows"].size(), 3u);
    EXPECT_EQ(j["rows"][2]["beta_eta_abs"], 2.0);

    const fs::path bad = dir_ / "bad.ini";
    std::ofstream(bad) << "eta 0.95\n";
    EXPECT_EQ(invoke({"sweep", "--config", bad.string()}).status, kExitBadInput);
    const fs::path unknown = dir_ / "unknown.ini";
    std::ofstream(unknown) << "colour = blue\n";
    EXPECT_EQ(invoke({"sweep", "--config", unknown.string()}).status, kExitBadInput);
}

TEST_F(ScratchDir, atomic_write_replaces_existing_file) {
    const fs::path out = dir_ / "curve.csv";
    std::ofstream(out) << "stale";
    ASSERT_EQ(invoke({"sweep", "--steps", "2", "--output", out.string()}).status, kExitOk);
    EXPECT_EQ(slurp(out).rfind("beta_eta_abs,p_fn,p_fp,method\n", 0), 0u);
    EXPECT_FALSE(fs::exists(dir_ / "curve.csv.tmp"));
}

TEST(cli_verify, suites_and_exit_codes) {
    const Outcome r = invoke({"verify", "--suite", "rho-eta"});
    ASSERT_EQ(r.status, kExitOk) << r.err;
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["passed"].get<bool>());
    ASSERT_FALSE(j["checks"].empty());
    for (const json& c : j["checks"]) {
        EXPECT_EQ(c["suite"], "rho-eta");
        EXPECT_LE(c["deviation"].get<double>(), c["tolerance"].get<double>());
    }
    EXPECT_EQ(invoke({"verify", "--suite", "nonsense"}).status, kExitBadInput);
}

TEST(cli_verify, full_suite_passes) {
    const Outcome r = invoke({"verify", "--suite", "all"});
    EXPECT_EQ(r.status, kExitOk) << r.out;
}

TEST(cli_misc, help_and_version) {
    const Outcome h = invoke({"--help"});
    EXPECT_EQ(h.status, kExitOk);
    EXPECT_NE(h.out.find("sweep"), std::string::npos);
    const Outcome v = invoke({"--version"});
    EXPECT_EQ(v.status, kExitOk);
    EXPECT_EQ(v.out, std::string(FOCKGATE_VERSION) + "\n");
}

TEST(run_config, json_round_trip) {
    RunConfig c;
    c.command = "montecarlo";
    c.n = 3;
    c.eta = 0.123456789012345;
    c.r = -0.75;
    c.beta_eta = 1.0 / 3.0;
    c.trials = 123457;
    c.seed = 18446744073709551557ull;
    c.cutoff = 77;
    c.output = "out dir/file.json";
    c.trials_csv = "t.csv";
    const RunConfig back = run_config_from_json(json::parse(to_json(c).dump()));
    EXPECT_EQ(back, c);
    EXPECT_THROW(run_config_from_json(json::object()), json::exception);
}

TEST(run_config, validation) {
    RunConfig c;
    c.command = "verify";
    EXPECT_NO_THROW(c.validate());
    c.command = "dance";
    EXPECT_THROW(c.validate(), ParameterError);
    c.command = "sweep";
    c.cutoff = 600;
    EXPECT_THROW(c.validate(), ParameterError);
}

TEST(helpers, linear_grid_endpoints) {
    const auto g = linear_grid(0.0, 3.0, 301);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g[100], 1.0);
    EXPECT_EQ(g.back(), 3.0);
    EXPECT_EQ(linear_grid(0.7, 9.0, 1), std::vector<double>{0.7});
    EXPECT_THROW(linear_grid(0.0, 1.0, 0), ParameterError);
}

TEST(helpers, config_text_parsing) {
    const auto entries = parse_config_text("# header\n beta_min = 0.5 # trailing\n\nn=2\r\n");
    ASSERT_EQ(entries.size(), 2u);
    EXPECT_EQ(entries[0], (std::pair<std::string, std::string>{"beta-min", "0.5"}));
    EXPECT_EQ(entries[1], (std::pair<std::string, std::string>{"n", "2"}));
    EXPECT_THROW(parse_config_text("= 3\n"), ParameterError);
}

TEST(helpers, csv_formatting) {
    const std::vector<SweepRow> rows{{0.5, 1.0 / 3.0, 0.0, Method::numeric}};
    EXPECT_EQ(sweep_csv(rows), "beta_eta_abs,p_fn,p_fp,method\n5.00000000000e-01,3.33333333333e-01,0.00000000000e+00,numeric\n");
}
