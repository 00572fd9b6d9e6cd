#include <gtest/gtest.h>

#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#ifndef QFISO_CLI
#error "QFISO_CLI must name the command line binary"
#endif

namespace {

struct Outcome {
    int code;
    std::string out;
};

Outcome run(const std::string& args) {
    const std::string cmd = std::string(QFISO_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json json_of(const Outcome& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, LocalTextFormula) {
    const Outcome r = run("local --n 4 --format text");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1 - p^3/(4*(p+1)^2*(p^4+p^3+p^2+p+1))\n");
}

TEST(Cli, LocalJsonAtPrime) {
    const Outcome r = run("local --n 4 --prime 2 --derive");
    ASSERT_EQ(r.code, 0);
    const auto j = json_of(r);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["value"], "277/279");
    EXPECT_EQ(j["decimal"], "0.992831541218637");
    EXPECT_EQ(j["method"], "derived");
}

TEST(Cli, RealExact) {
    EXPECT_EQ(run("real exact --n 2 --format decimal --digits 10").out, "0.7071067811\n");
    EXPECT_EQ(run("real exact --n 4 --format expr").out, "1/2 + sqrt(2)/8 + pi^-1\n");
    const auto j = json_of(run("real exact --n 3"));
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["decimal"], "0.9501581580");
}

TEST(Cli, PadicDecide) {
    const Outcome r = run("padic decide --n 2 --p 3 --coeffs \"1,0,1\"");
    ASSERT_EQ(r.code, 0);
    const auto j = json_of(r);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["verdict"], "Anisotropic");
    EXPECT_FALSE(j.contains("witness"));
    const auto k = json_of(run("padic decide --n 2 --p 7 --coeffs 1,0,-1"));
    EXPECT_EQ(k["verdict"], "Isotropic");
    EXPECT_EQ(k["witness"].size(), 2u);
    EXPECT_EQ(k["passes"], 1);
}

TEST(Cli, PadicMc) {
    const auto j = json_of(run("padic mc --n 3 --p 2 --samples 5000"));
    EXPECT_EQ(j["exact"], "8/9");
    EXPECT_EQ(j["seed"], 1729);
    EXPECT_LT(std::abs(j["z_score"].get<double>()), 5.0);
}

TEST(Cli, GlobalJson) {
    const auto j = json_of(run("global --n 4 --model goe"));
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["cutoff_used"], 10000);
    EXPECT_EQ(j["tail_bound"], "1/400000000");
    EXPECT_EQ(j["value_lower"].get<std::string>().substr(0, 6), "0.9825");
    const auto g = json_of(run("global --n 2"));
    EXPECT_EQ(g["value_lower"], "0");
}

TEST(Cli, Table2Csv) {
    const Outcome r = run("global table2 --samples 2000");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,rho_D,uniform_estimate,uniform_stderr,goe_lower,goe_upper");
}

TEST(Cli, SameSeedSameBytes) {
    const std::string args = "real mc --model uniform --n 3 --samples 20000 --seed 99";
    EXPECT_EQ(run(args).out, run(args).out);
    EXPECT_EQ(run(args).out, run(args + " --threads 3").out);
    EXPECT_NE(run(args).out, run("real mc --model uniform --n 3 --samples 20000 --seed 100").out);
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
    const std::string base = "padic mc --n 3 --p 3 --samples 10000";
    const auto a = json_of(run(base + " --threads 1"));
    const auto b = json_of(run(base + " --threads 3"));
    EXPECT_EQ(a, b);
}

TEST(Cli, ManifestReplays) {
    const std::string path = ::testing::TempDir() + "qfiso_manifest.json";
    const Outcome r = run("real mc --n 2 --samples 5000 --seed 5 --manifest " + path);
    ASSERT_EQ(r.code, 0);
    std::ifstream f(path);
    const auto m = nlohmann::json::parse(f);
    EXPECT_EQ(m["schema"], 1);
    EXPECT_EQ(m["seed"], 5);
    EXPECT_EQ(m["version"], "1.0.0");
    EXPECT_TRUE(m.contains("wall_time_seconds"));
    EXPECT_EQ(m["output"], json_of(r));
    std::string replay;
    for (std::size_t i = 1; i < m["command_line"].size(); ++i) {
        const std::string a = m["command_line"][i];
        if (a == "--manifest") {
            ++i;
            continue;
        }
        replay += a + " ";
    }
    EXPECT_EQ(run(replay).out, r.out);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("local").code, 1);
    EXPECT_EQ(run("local --n 4 --format yaml").code, 1);
    EXPECT_EQ(run("local --n 4 --derive --closed").code, 1);
    EXPECT_EQ(run("padic decide --n 2 --p 3 --coeffs 1,0").code, 1);
    EXPECT_EQ(run("padic decide --n 2 --p 9 --coeffs 1,0,1").code, 1);
    EXPECT_EQ(run("real exact --n 2 --format decimal --digits 99").code, 1);
    EXPECT_EQ(run("global").code, 1);
    EXPECT_EQ(run("frobnicate").code, 1);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, ComputationalErrors) {
    // 15 digits need primes beyond the supported cutoff
    EXPECT_EQ(run("global --n 4 --digits 15 --cutoff 5000000").code, 2);
    const auto j = json_of(run("padic decide --n 2 --p 3 --coeffs 1,2,1"));
    EXPECT_EQ(j["verdict"], "Degenerate");
}

TEST(Cli, VerifySubset) {
    const Outcome r = run("verify --only 1,3,11");
    ASSERT_EQ(r.code, 0);
    const auto j = json_of(r);
    EXPECT_EQ(j["passed"], true);
    EXPECT_EQ(j["criteria"].size(), 3u);
}
