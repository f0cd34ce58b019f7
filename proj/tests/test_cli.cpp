// SPDX-License-Identifier: Apache-2.0
//
// End-to-end tests driving the installed binary through a shell, the
// way a user would. MUBSIM_CLI_PATH is injected by the build.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include "mubsim/json_io.hpp"

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string &args) {
    const std::string command = std::string(MUBSIM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        ADD_FAILURE() << "popen failed for: " << command;
        return {};
    }
    CliResult result;
    char buffer[4096];
    std::size_t n = 0;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        result.out.append(buffer, n);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::temp_directory_path() /
           ("mubsim_cli_test_" + std::to_string(getpid()) + "_" + name);
}

std::string slurp(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST(cli, gen_mub_succeeds_for_primes) {
    const CliResult result = run_cli("gen-mub --dim 3");
    EXPECT_EQ(result.exit_code, 0);
    EXPECT_NE(result.out.find("is_mub=true"), std::string::npos);
    EXPECT_NE(result.out.find("bases=4"), std::string::npos);
}

TEST(cli, gen_mub_rejects_bad_dims) {
    EXPECT_EQ(run_cli("gen-mub --dim 4").exit_code, 2);
    EXPECT_EQ(run_cli("gen-mub --dim 17").exit_code, 2);
    EXPECT_EQ(run_cli("gen-mub --dim 0").exit_code, 2);
}

TEST(cli, gen_mub_report_reloads_as_bases_file) {
    const auto path = temp_path("mub3.json");
    const CliResult result = run_cli("gen-mub --dim 3 --out " + path.string());
    ASSERT_EQ(result.exit_code, 0);
    const std::string text = slurp(path);
    const auto bases = mubsim::bases_from_json(text);
    EXPECT_EQ(bases.size(), 4u);
    EXPECT_NO_THROW(mubsim::MubSet{bases});
    std::filesystem::remove(path);
}

TEST(cli, verify_relation_holds_on_uniform_family) {
    const CliResult result = run_cli("verify-relation --dim 2 --trials 30 --seed 5");
    EXPECT_EQ(result.exit_code, 0);
    EXPECT_NE(result.out.find("holds=true"), std::string::npos);
}

TEST(cli, verify_relation_fails_on_biased_weights) {
    const CliResult result =
        run_cli("verify-relation --dim 2 --trials 30 --weights 0.5,0.3,0.2");
    EXPECT_EQ(result.exit_code, 3);
    EXPECT_NE(result.out.find("holds=false"), std::string::npos);
}

TEST(cli, verify_relation_fails_on_perturbed_bases) {
    const CliResult result = run_cli("verify-relation --dim 2 --trials 30 --perturb 0.05");
    EXPECT_EQ(result.exit_code, 3);
}

TEST(cli, verify_relation_rejects_malformed_weights) {
    EXPECT_EQ(run_cli("verify-relation --dim 2 --weights 0.9,0.3,0.2").exit_code, 2);
    EXPECT_EQ(run_cli("verify-relation --dim 2 --weights 0.5,0.5").exit_code, 2);
}

TEST(cli, verify_relation_consumes_generated_bases) {
    const auto path = temp_path("mub5.json");
    ASSERT_EQ(run_cli("gen-mub --dim 5 --out " + path.string()).exit_code, 0);
    const CliResult result =
        run_cli("verify-relation --bases " + path.string() + " --trials 20");
    EXPECT_EQ(result.exit_code, 0);
    EXPECT_NE(result.out.find("dim=5"), std::string::npos);
    EXPECT_NE(result.out.find("holds=true"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(cli, verify_relation_distinguishes_io_from_bad_input) {
    EXPECT_EQ(run_cli("verify-relation --bases /nonexistent/nope.json").exit_code, 1);

    const auto path = temp_path("garbage.json");
    std::ofstream(path) << "{ not json";
    EXPECT_EQ(run_cli("verify-relation --bases " + path.string()).exit_code, 2);
    std::filesystem::remove(path);
}

TEST(cli, verify_relation_report_fields) {
    const auto path = temp_path("scan.json");
    ASSERT_EQ(run_cli("verify-relation --dim 3 --trials 25 --out " + path.string()).exit_code,
              0);
    const nlohmann::json parsed = nlohmann::json::parse(slurp(path));
    EXPECT_EQ(parsed.at("dim").get<std::size_t>(), 3u);
    EXPECT_EQ(parsed.at("trials").get<std::size_t>(), 25u);
    EXPECT_TRUE(parsed.at("holds").get<bool>());
    EXPECT_NEAR(parsed.at("lambda_fit").get<double>(), 0.75, 1e-12);
    EXPECT_TRUE(parsed.contains("worst_state"));
    std::filesystem::remove(path);
}

TEST(cli, counterexample_skewed_directions) {
    const auto path = temp_path("counter.json");
    const CliResult result = run_cli(
        "counterexample --dirs 0,0,1,1,0,0,1,1,1 --trials 40 --out " + path.string());
    EXPECT_EQ(result.exit_code, 0);
    const nlohmann::json parsed = nlohmann::json::parse(slurp(path));
    EXPECT_GT(parsed.at("worst_case_residual").get<double>(), 1e-3);
    EXPECT_LE(parsed.at("max_identity_gap").get<double>(), 1e-12);
    std::filesystem::remove(path);
}

TEST(cli, counterexample_orthonormal_directions) {
    const auto path = temp_path("ortho.json");
    const CliResult result = run_cli(
        "counterexample --dirs 0,0,1,1,0,0,0,1,0 --trials 40 --out " + path.string());
    EXPECT_EQ(result.exit_code, 0);
    const nlohmann::json parsed = nlohmann::json::parse(slurp(path));
    EXPECT_NEAR(parsed.at("best_alpha").get<double>(), 1.0 / 3.0, 1e-9);
    EXPECT_NEAR(parsed.at("best_beta").get<double>(), 1.0 / 3.0, 1e-9);
    EXPECT_LE(parsed.at("worst_case_residual").get<double>(), 1e-10);
    std::filesystem::remove(path);
}

TEST(cli, counterexample_rejects_bad_directions) {
    EXPECT_EQ(run_cli("counterexample --dirs 0,0,1,1,0,0").exit_code, 2);
    EXPECT_EQ(run_cli("counterexample --dirs 0,0,1,1,0,0,1,0,1").exit_code, 2);
    EXPECT_EQ(run_cli("counterexample --dirs 0,0,1,1,0,0,1,1,1 --trials 5").exit_code, 2);
    EXPECT_EQ(run_cli("counterexample --dirs 0,0,1,1,0,0,1,1,1 --weights 0.5,0.5,0.5")
                  .exit_code,
              2);
}

TEST(cli, sample_is_byte_deterministic) {
    const auto path_a = temp_path("sample_a.json");
    const auto path_b = temp_path("sample_b.json");
    const CliResult a = run_cli("sample --dim 2 --shots 2000 --seed 9 --out " + path_a.string());
    const CliResult b = run_cli("sample --dim 2 --shots 2000 --seed 9 --out " + path_b.string());
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(slurp(path_a), slurp(path_b));

    const CliResult c = run_cli("sample --dim 2 --shots 2000 --seed 10");
    EXPECT_NE(a.out, c.out);
    std::filesystem::remove(path_a);
    std::filesystem::remove(path_b);
}

TEST(cli, sample_report_is_consistent) {
    const auto path = temp_path("sample.json");
    ASSERT_EQ(run_cli("sample --dim 3 --shots 500 --seed 4 --kind mixed --out " + path.string())
                  .exit_code,
              0);
    const nlohmann::json parsed = nlohmann::json::parse(slurp(path));
    EXPECT_EQ(parsed.at("dim").get<std::size_t>(), 3u);
    EXPECT_EQ(parsed.at("kind").get<std::string>(), "mixed");
    const auto record = mubsim::sample_record_from_json(parsed.at("record").dump());
    EXPECT_EQ(record.shots_per_basis, 500u);
    ASSERT_EQ(record.counts.size(), 4u);
    const auto initial = mubsim::matrix_from_json(parsed.at("initial_state"));
    EXPECT_EQ(initial.dim(), 3u);
    EXPECT_GE(parsed.at("recovered_error").get<double>(), 0.0);
    std::filesystem::remove(path);
}

TEST(cli, sample_rejects_zero_shots) {
    EXPECT_EQ(run_cli("sample --dim 2 --shots 0").exit_code, 2);
}

TEST(cli, usage_errors_and_help) {
    EXPECT_EQ(run_cli("").exit_code, 2);
    EXPECT_EQ(run_cli("frobnicate").exit_code, 2);
    EXPECT_EQ(run_cli("gen-mub").exit_code, 2);
    EXPECT_EQ(run_cli("--help").exit_code, 0);
    EXPECT_EQ(run_cli("gen-mub --help").exit_code, 0);
}
