#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli_app.hpp"

namespace qchihara::cli {
namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

TEST(Cli, HankelReportCarriesDeterminants) {
    const Outcome o = invoke({"verify", "hankel", "--n-max", "2", "--no-timings"});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    const auto doc = nlohmann::json::parse(o.out);
    EXPECT_EQ(doc["status"], "pass");
    EXPECT_EQ(doc["total"], 4);
    const auto& m2 = doc["checks"][1];
    EXPECT_EQ(m2["check_id"], "M/n=2");
    EXPECT_NE(m2["detail"].get<std::string>().find("det_next=-q^2 - q"), std::string::npos);
    EXPECT_EQ(m2["elapsed_ms"], 0.0);
    for (const auto& check : doc["checks"]) {
        for (const char* key : {"suite", "check_id", "paper_ref", "status", "residual", "elapsed_ms"})
            EXPECT_TRUE(check.contains(key)) << key;
    }
}

TEST(Cli, IdentitiesListMiCases) {
    const Outcome o = invoke({"verify", "identities", "--n-max", "8"});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    const auto doc = nlohmann::json::parse(o.out);
    std::vector<std::string> mi;
    for (const auto& c : doc["checks"])
        if (c["paper_ref"] == "connection") mi.push_back(c["check_id"]);
    ASSERT_EQ(mi.size(), 8u);
    EXPECT_EQ(mi.front(), "connection/n=1");
    EXPECT_EQ(mi.back(), "connection/n=8");
}

TEST(Cli, OutputIsDeterministicWithoutTimings) {
    const Outcome a = invoke({"verify", "discrete", "--n-max", "2", "--no-timings", "--format", "csv"});
    const Outcome b = invoke({"verify", "discrete", "--n-max", "2", "--no-timings", "--format", "csv"});
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("suite,check_id,paper_ref,status,residual,elapsed_ms\n", 0), 0u);
}

TEST(Cli, DensityCsv) {
    const Outcome o = invoke({"emit", "density", "--kind", "asc", "--q", "0.5", "--a", "0.4", "--b", "0.49", "--points",
                              "200"});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    std::istringstream in(o.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "x,density");
    std::vector<double> xs;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        const double x = std::stod(line.substr(0, comma));
        xs.push_back(x);
        EXPECT_DOUBLE_EQ(std::stod(line.substr(comma + 1)), density_asc(x, 0.4, 0.49, 0.5));
    }
    ASSERT_EQ(xs.size(), 200u);
    EXPECT_DOUBLE_EQ(xs.front(), -support_half_width(0.5));
    EXPECT_DOUBLE_EQ(xs.back(), support_half_width(0.5));
}

TEST(Cli, DensityOutOfDomainIsUsageError) {
    const Outcome o = invoke({"emit", "density", "--kind", "mu", "--q", "0.5", "--rho", "1.5"});
    EXPECT_EQ(o.code, kExitUsage);
    EXPECT_NE(o.err.find("domain"), std::string::npos);
}

TEST(Cli, MeasureJson) {
    const Outcome o = invoke({"emit", "measure", "--m", "1", "--q", "2", "--y", "0"});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    const auto doc = nlohmann::json::parse(o.out);
    ASSERT_EQ(doc["support"].size(), 2u);
    EXPECT_NEAR(doc["weights"][0].get<double>(), 0.5, 1e-14);
    EXPECT_NEAR(doc["support"][1].get<double>(), std::sqrt(0.5), 1e-14);
}

TEST(Cli, MomentsText) {
    const Outcome o = invoke({"emit", "moments", "--n-max", "2", "--format", "text"});
    ASSERT_EQ(o.code, kExitOk);
    EXPECT_NE(o.out.find("m_1 = rho*y"), std::string::npos) << o.out;
}

TEST(Cli, BadUsage) {
    EXPECT_EQ(invoke({}).code, kExitUsage);
    EXPECT_EQ(invoke({"verify"}).code, kExitUsage);
    EXPECT_EQ(invoke({"verify", "everything"}).code, kExitUsage);
    EXPECT_EQ(invoke({"verify", "hankel", "--bogus"}).code, kExitUsage);
    EXPECT_EQ(invoke({"verify", "hankel", "--tol", "-1"}).code, kExitUsage);
    EXPECT_EQ(invoke({"verify", "hankel", "--n-max", "0"}).code, kExitUsage);
    EXPECT_EQ(invoke({"verify", "hankel", "--format", "xml"}).code, kExitUsage);
}

TEST(Cli, ImpossibleToleranceFailsWithExitOne) {
    const Outcome o = invoke({"verify", "measures", "--n-max", "2", "--tol", "1e-30", "--format", "text"});
    EXPECT_EQ(o.code, kExitCheckFailed);
    EXPECT_NE(o.err.find("check failed: "), std::string::npos);
    EXPECT_NE(o.out.find("FAIL measures"), std::string::npos);
}

TEST(Cli, EnvironmentTolerance) {
    ::setenv("QCHIHARA_TOL", "1e-30", 1);
    const Outcome strict = invoke({"verify", "measures", "--n-max", "1"});
    ::setenv("QCHIHARA_TOL", "not-a-number", 1);
    const Outcome junk = invoke({"verify", "measures", "--n-max", "1"});
    ::unsetenv("QCHIHARA_TOL");
    EXPECT_EQ(strict.code, kExitCheckFailed);
    EXPECT_EQ(junk.code, kExitUsage);
    // an explicit flag beats the environment
    ::setenv("QCHIHARA_TOL", "1e-30", 1);
    const Outcome flag = invoke({"verify", "discrete", "--n-max", "1", "--tol", "1e-7"});
    ::unsetenv("QCHIHARA_TOL");
    EXPECT_EQ(flag.code, kExitOk) << flag.err;
}

TEST(Cli, WritesOutputFile) {
    const auto path = std::filesystem::temp_directory_path() / "qchihara_cli_report.json";
    const Outcome o = invoke({"verify", "hankel", "--n-max", "1", "--output", path.string()});
    ASSERT_EQ(o.code, kExitOk);
    EXPECT_TRUE(o.out.empty());
    std::ifstream in(path);
    const auto doc = nlohmann::json::parse(in);
    EXPECT_EQ(doc["status"], "pass");
    std::filesystem::remove(path);
}

}  // namespace
}  // namespace qchihara::cli
