#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "hardy/cli.hpp"

using namespace hardy;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    std::ostringstream out, err;
    Outcome r;
    r.code = cli::run(std::move(args), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> f(1);
        for (char c : line) {
            if (c == ',')
                f.emplace_back();
            else
                f.back() += c;
        }
        rows.push_back(f);
    }
    return rows;
}

std::string temp_path(const std::string& name)
{
    const auto p = std::filesystem::temp_directory_path() / ("hardy_cli_" + std::to_string(::getpid()) + "_" + name);
    std::filesystem::remove(p);
    return p.string();
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(CliAlpha, FlagFormsAgree)
{
    const Outcome a = invoke({"alpha", "--L", "3.14159265", "--p", "2"});
    ASSERT_EQ(a.code, 0) << a.err;
    const auto rows = parse_csv(a.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0][3], "alpha");
    const double alpha = std::stod(rows[1][3]);
    EXPECT_NEAR(alpha, 0.6976, 5e-4);
    EXPECT_NEAR(alpha, solve_alpha_p2(3.14159265).alpha, 1e-15);

    const Outcome b = invoke({"alpha", "--a", "1", "--b", "23.1407", "--p", "2"});
    ASSERT_EQ(b.code, 0);
    EXPECT_NEAR(std::stod(parse_csv(b.out)[1][3]), alpha, 1e-6);
}

TEST(CliAlpha, RejectsNonPositiveL)
{
    const Outcome r = invoke({"alpha", "--L", "0", "--p", "2"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("L must be positive"), std::string::npos);
    EXPECT_EQ(invoke({"alpha", "--L", "1", "--a", "1"}).code, 2);
    EXPECT_EQ(invoke({"alpha", "--L", "1", "--p", "1"}).code, 2);
    EXPECT_EQ(invoke({"alpha", "--L", "1", "--bogus", "3"}).code, 2);
}

TEST(CliContinuous, JsonFieldsAndExactValue)
{
    const double b = std::exp(std::numbers::pi);
    const Outcome r = invoke({"continuous", "--a", "1", "--b", cli::fmt_real(b), "--p", "2", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"p", "a", "b", "L", "lower", "upper", "exact_p2", "B_lower", "B_upper", "budgets"})
        EXPECT_TRUE(j.contains(key)) << key;
    const double exact = j["exact_p2"];
    EXPECT_NEAR(exact, 1.3575, 2e-3);
    EXPECT_LE(j["lower"].get<double>(), exact + 1e-9);
    EXPECT_GE(j["upper"].get<double>(), exact - 1e-9);
    EXPECT_LE(j["B_lower"].get<double>(), exact);
    EXPECT_GE(j["B_upper"].get<double>(), exact);

    const Outcome s = invoke({"continuous", "--a", "2", "--b", cli::fmt_real(2 * b), "--p", "2", "--format", "json"});
    const auto k = nlohmann::json::parse(s.out);
    EXPECT_NEAR(k["exact_p2"].get<double>(), exact, 1e-13);
}

TEST(CliContinuous, PThreeLongInterval)
{
    const Outcome r = invoke({"continuous", "--L", "30", "--p", "3", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_FALSE(j.contains("exact_p2"));
    EXPECT_LT(j["lower"].get<double>(), j["upper"].get<double>());
    EXPECT_LT(j["upper"].get<double>(), 3.375);
    EXPECT_EQ(invoke({"continuous", "--a", "3", "--b", "2"}).code, 2);
    EXPECT_EQ(invoke({"continuous", "--L", "3", "--tol", "1"}).code, 2);
}

TEST(CliDiscrete, RowSchemaAndSandwiches)
{
    const Outcome r = invoke({"discrete", "--n", "100", "--p", "2", "--no-timing"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), cli::sweep_header);
    const auto& f = rows[1];
    ASSERT_EQ(f.size(), 12u);
    const double lower = std::stod(f[4]), dn = std::stod(f[3]), upper = std::stod(f[5]);
    EXPECT_LE(lower, dn);
    EXPECT_LE(dn, upper);
    EXPECT_LE(upper, 4.0);
    EXPECT_EQ(f[7], "true");
    EXPECT_EQ(f[8], "true");
    EXPECT_EQ(f[11], "0");
    EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(CliDiscrete, TrivialAndInvalid)
{
    const Outcome r = invoke({"discrete", "--n", "1", "--p", "7"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(parse_csv(r.out)[1][3], "1");
    EXPECT_EQ(parse_csv(r.out)[1][7], "");
    EXPECT_EQ(invoke({"discrete", "--n", "0"}).code, 2);
    EXPECT_EQ(invoke({"discrete", "--n", "2.5"}).code, 2);
    EXPECT_EQ(invoke({"discrete", "--n", "10", "--tol", "1e-3"}).code, 2);
    EXPECT_EQ(invoke({"discrete", "--n", "10", "--A-grid", "1,4"}).code, 2);
    EXPECT_EQ(invoke({"discrete"}).code, 2);
}

TEST(CliDiscrete, GridRowsInInputOrderAndThreadIndependent)
{
    const Outcome a = invoke({"discrete", "--n-grid", "10,1000,3,300", "--p", "3", "--threads", "1", "--no-timing"});
    const Outcome b = invoke({"discrete", "--n-grid", "10,1000,3,300", "--p", "3", "--threads", "3", "--no-timing"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto rows = parse_csv(a.out);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[1][0], "10");
    EXPECT_EQ(rows[2][0], "1000");
    EXPECT_EQ(rows[3][0], "3");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_LE(std::stod(rows[i][4]), std::stod(rows[i][3]) + 1e-12);
        EXPECT_LE(std::stod(rows[i][3]), std::stod(rows[i][5]) + 1e-12);
    }
}

TEST(CliDiscrete, JsonObject)
{
    const Outcome r = invoke({"discrete", "--n", "50", "--p", "2.5", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["n"], 50);
    EXPECT_TRUE(j["sandwich_lo_pass"].is_null());
    EXPECT_GE(j["seconds"].get<double>(), 0.0);
}

TEST(CliCache, HitsMatchRecomputeAndRespectKey)
{
    const std::string path = temp_path("cache.csv");
    const std::vector<std::string> base{"discrete", "--n-grid", "20,200", "--p", "3", "--no-timing", "--cache", path};
    const Outcome first = invoke(base);
    ASSERT_EQ(first.code, 0) << first.err;
    const std::string after_first = slurp(path);
    EXPECT_EQ(after_first.rfind("# hardy_sharp sweep cache", 0), 0u);

    const Outcome second = invoke(base);
    EXPECT_EQ(second.out, first.out);
    EXPECT_EQ(slurp(path), after_first);  // nothing appended on a full hit

    auto other_tol = base;
    other_tol.insert(other_tol.end(), {"--tol", "1e-11"});
    const Outcome third = invoke(other_tol);
    ASSERT_EQ(third.code, 0);
    EXPECT_GT(slurp(path).size(), after_first.size());
    const auto r1 = parse_csv(first.out), r3 = parse_csv(third.out);
    for (std::size_t i = 1; i < r1.size(); ++i)
        EXPECT_NEAR(std::stod(r1[i][3]), std::stod(r3[i][3]), 1e-9);

    const Outcome recomputed = invoke({"discrete", "--n-grid", "20,200", "--p", "3", "--no-timing"});
    const auto rr = parse_csv(recomputed.out);
    for (std::size_t i = 1; i < r1.size(); ++i)
        EXPECT_NEAR(std::stod(r1[i][3]), std::stod(rr[i][3]), 1e-12);
    std::filesystem::remove(path);
}

TEST(CliCache, ForeignVersionRowsAreIgnored)
{
    const std::string path = temp_path("stale.csv");
    {
        std::ofstream out(path);
        out << "# hardy_sharp sweep cache; algorithm old\n";
        out << "old,20,3,1e-10,4;8;16;32;64,20,3,0,99,0,0,3.375,,,1,0,0,1\n";
    }
    const Outcome r = invoke({"discrete", "--n", "20", "--p", "3", "--cache", path, "--no-timing"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(parse_csv(r.out)[1][3], "99");
    std::filesystem::remove(path);
}

TEST(CliCache, EnvironmentOverridesPath)
{
    const std::string env_path = temp_path("env.csv");
    const std::string flag_path = temp_path("flag.csv");
    ::setenv(cli::cache_env, env_path.c_str(), 1);
    const Outcome r = invoke({"discrete", "--n", "30", "--cache", flag_path});
    ::unsetenv(cli::cache_env);
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(std::filesystem::exists(env_path));
    EXPECT_FALSE(std::filesystem::exists(flag_path));
    std::filesystem::remove(env_path);
}

TEST(CliRate, PTwoWindowAndReference)
{
    const std::string pts = temp_path("points.csv");
    const Outcome r = invoke({"rate", "--p", "2", "--n-grid", "1000:1000000:7", "--model", "two_term", "--points", pts});
    ASSERT_EQ(r.code, 0) << r.err;
    double c2 = 0, ref = 0;
    for (const auto& row : parse_csv(r.out)) {
        if (row[0] == "c2")
            c2 = std::stod(row[1]);
        if (row[0] == "reference_16pi2")
            ref = std::stod(row[1]);
    }
    EXPECT_GT(c2, 30.0);
    EXPECT_LT(c2, 158.0);
    EXPECT_NEAR(ref, 16 * std::numbers::pi * std::numbers::pi, 1e-12);
    EXPECT_EQ(parse_csv(slurp(pts)).size(), 8u);
    std::filesystem::remove(pts);
}

TEST(CliRate, TooFewPointsAndBadModel)
{
    EXPECT_EQ(invoke({"rate", "--n-grid", "1000:1000000:4", "--model", "c_over_log2"}).code, 2);
    EXPECT_EQ(invoke({"rate", "--n-grid", "1000:1000000:6", "--model", "cubic"}).code, 2);
    EXPECT_EQ(invoke({"rate"}).code, 2);
}

TEST(CliRate, PThreeDeficitBounded)
{
    const Outcome r = invoke({"rate", "--p", "3", "--n-grid", "1000:100000:5", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["reference_16pi2"].is_null());
    for (const auto& d : j["data"]) {
        EXPECT_GT(d["deficit_log2"].get<double>(), 0.0);
        EXPECT_LT(d["deficit_log2"].get<double>(), 200.0);
    }
}

TEST(CliLemmas, CsvAndDeterminism)
{
    const Outcome a = invoke({"lemmas", "--ids", "L2_1", "--samples", "2000", "--seed", "42"});
    ASSERT_EQ(a.code, 0) << a.err;
    const auto rows = parse_csv(a.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0][3], "min_margin");
    EXPECT_GE(std::stod(rows[1][3]), 0.0);
    EXPECT_EQ(rows[1][6], "pass");
    const Outcome b = invoke({"lemmas", "--ids", "L2_1", "--samples", "2000", "--seed", "42", "--threads", "2"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(invoke({"lemmas", "--ids", "L2_99"}).code, 2);
}

TEST(CliLemmas, AllIdsSmallRun)
{
    const Outcome r = invoke({"lemmas", "--samples", "2000"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    EXPECT_EQ(rows.size(), 16u);
    EXPECT_EQ(rows.back()[0], "L2_15");
    EXPECT_EQ(rows.back()[6], "reported");
}

TEST(CliMisc, HelpAndUsage)
{
    EXPECT_EQ(invoke({"--help"}).code, 0);
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"nope"}).code, 2);
}

TEST(CliMisc, OutFileMatchesStdout)
{
    const std::string path = temp_path("out.csv");
    const Outcome a = invoke({"alpha", "--L", "2"});
    const Outcome b = invoke({"alpha", "--L", "2", "--out", path});
    EXPECT_TRUE(b.out.empty());
    EXPECT_EQ(slurp(path), a.out);
    std::filesystem::remove(path);
}

#ifdef HARDY_SHARP_EXE
TEST(CliBinary, ExitCodesFromTheExecutable)
{
    const std::string exe = HARDY_SHARP_EXE;
    EXPECT_EQ(std::system((exe + " alpha --L 1 > /dev/null").c_str()), 0);
    EXPECT_EQ(WEXITSTATUS(std::system((exe + " alpha --L 0 2> /dev/null").c_str())), 2);
    EXPECT_EQ(WEXITSTATUS(std::system((exe + " lemmas --ids L2_6 --samples 500 > /dev/null").c_str())), 0);
}
#endif
