#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include "feigen/report.hpp"

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun cli(const std::string& args) {
    const std::string cmd = std::string(FEIGEN_CLI) + " " + args + " 2>/dev/null";
    CliRun r;
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe.release());
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli("--help").code, 0);
    EXPECT_EQ(cli("classify --catalog logistic --params a=3.2").code, 0);
    EXPECT_EQ(cli("classify --expr 'a*x*(' --domain 0:1 --params a=3").code, 2);
    EXPECT_EQ(cli("classify --catalog nope").code, 2);
    EXPECT_EQ(cli("suite /nonexistent.suite").code, 2);
    EXPECT_EQ(cli("cascade --catalog selfexp_nochaos --depth 2").code, 4);
    EXPECT_EQ(cli("bogus").code, 2);
}

TEST(Cli, ClassifyJson) {
    const CliRun r = cli("classify --catalog logistic --params a=3.2");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["command"], "classify");
    EXPECT_EQ(j["result"]["attractor"]["period"], 2);
    EXPECT_NEAR(j["result"]["attractor"]["orbit"][0].template get<double>(), 0.5130445095326298, 1e-12);
}

TEST(Cli, ExpressionEscapes) {
    const CliRun r = cli("classify --expr 'a*x*(1-x)' --domain 0:1 --params a=5");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["result"]["attractor"]["kind"], "escaped");
}

TEST(Cli, CascadeCsv) {
    const CliRun r = cli("cascade --catalog logistic --depth 3 --format csv");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("rank,kind,t,a,b", 0), 0u);
    EXPECT_NE(r.out.find("accumulation"), std::string::npos);
}

TEST(Cli, SuiteOutputIgnoresWorkerCount) {
    const std::string suite = "suite " + std::string(FEIGEN_SOURCE_DIR) + "/tests/data/quick.suite";
    const CliRun one = cli(suite + " --workers 1");
    ::setenv("FEIGEN_WORKERS", "3", 1);
    const CliRun env = cli(suite + " --workers 1");
    ::unsetenv("FEIGEN_WORKERS");
    ASSERT_EQ(one.code, 0);
    ASSERT_EQ(env.code, 0);
    EXPECT_EQ(one.out, env.out);
}
