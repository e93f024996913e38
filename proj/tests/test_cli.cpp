#include "helpers.hpp"
#include "ravkit/cli.hpp"
#include "ravkit/ingest/scope_file.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace ravkit;
using nlohmann::json;
using testing_support::fixture;
using testing_support::slurp;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.code = cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string golden(const std::string& name) { return slurp(std::string(RAVKIT_GOLDEN) + "/" + name); }

class TempFile {
public:
    TempFile(const std::string& name, const std::string& content)
        : path_(std::filesystem::temp_directory_path() / ("ravkit-test-" + name))
    {
        std::ofstream(path_, std::ios::binary) << content;
    }
    ~TempFile() { std::filesystem::remove(path_); }
    std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

}  // namespace

TEST(Cli, RavToyText)
{
    const Outcome o = run({"rav", fixture("toy.json")});
    EXPECT_EQ(o.code, cli::kExitOk);
    EXPECT_TRUE(o.err.empty());
    EXPECT_EQ(o.out, golden("rav_toy.txt"));
    EXPECT_NE(o.out.find("ActSec = -12.743031"), std::string::npos);
}

TEST(Cli, RavToyJson)
{
    const Outcome o = run({"rav", fixture("toy.json"), "--format", "json"});
    EXPECT_EQ(o.code, cli::kExitOk);
    EXPECT_EQ(o.out, golden("rav_toy.json"));
    EXPECT_NEAR(json::parse(o.out)["breakdown"]["actsec"].get<double>(), -12.744, 0.01);
}

TEST(Cli, RavEmpty)
{
    const Outcome o = run({"rav", fixture("empty.json")});
    EXPECT_EQ(o.code, cli::kExitOk);
    EXPECT_NE(o.out.find("ActSec = 100.000000"), std::string::npos);
}

TEST(Cli, ByteIdenticalAcrossRuns)
{
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"rav", fixture("scope50.json"), "--format", "json"},
          std::vector<std::string>{"symbolic", fixture("toy.json")},
          std::vector<std::string>{"demo", "--kind", "formula"},
          std::vector<std::string>{"trust", fixture("applicants.csv")}}) {
        EXPECT_EQ(run(args).out, run(args).out);
    }
}

TEST(Cli, Aggregate)
{
    const Outcome o = run({"aggregate", fixture("scope50.json"), fixture("scope100.json"), "--format", "json"});
    ASSERT_EQ(o.code, cli::kExitOk) << o.err;
    EXPECT_EQ(o.out, golden("aggregate.json"));
    const json j = json::parse(o.out);
    EXPECT_EQ(j["input"]["porosity"]["visibility"], 150);
    EXPECT_EQ(j["input"]["porosity"]["access"], 52);
    EXPECT_EQ(j["sources"], json({"internet", "intranet"}));
    EXPECT_EQ(j["input"]["id"], "aggregate");
}

TEST(Cli, ImportMergeReproducesToy)
{
    const Outcome o = run({"import-nmap", fixture("nmap_one_port.xml"), "--merge", fixture("toy_controls.json"),
                           "--emit", "report"});
    ASSERT_EQ(o.code, cli::kExitOk) << o.err;
    EXPECT_NE(o.out.find("ActSec = -12.743031"), std::string::npos);
    EXPECT_TRUE(o.err.empty());

    const Outcome scope = run({"import-nmap", fixture("nmap_one_port.xml"), "--merge", fixture("toy_controls.json"),
                               "--emit", "scope"});
    ASSERT_EQ(scope.code, cli::kExitOk);
    const auto scopes = ingest::parse_scope_file(scope.out);
    ASSERT_EQ(scopes.size(), 1u);
    Scope expected = testing_support::toy();
    expected.vector = scopes[0].vector;
    expected.index = scopes[0].index;
    EXPECT_EQ(scopes[0], expected);
}

TEST(Cli, ImportThreePortsVerbose)
{
    const Outcome o = run({"import-nmap", fixture("nmap_three_ports.xml"), "--verbose", "--emit", "scope"});
    ASSERT_EQ(o.code, cli::kExitOk);
    const auto scopes = ingest::parse_scope_file(o.out);
    EXPECT_EQ(scopes.at(0).porosity, (PorosityCounts{1, 3, 0}));
    EXPECT_NE(o.err.find("2 hosts (1 up)"), std::string::npos);
}

TEST(Cli, Trust)
{
    const Outcome o = run({"trust", fixture("applicants.csv")});
    ASSERT_EQ(o.code, cli::kExitOk) << o.err;
    EXPECT_EQ(o.out, golden("trust_average.txt"));
    const Outcome j = run({"trust", fixture("applicants.csv"), "--mode", "max", "--format", "json"});
    ASSERT_EQ(j.code, cli::kExitOk);
    const json doc = json::parse(j.out);
    EXPECT_EQ(doc["records"].size(), 4u);
    EXPECT_EQ(doc["records"][0]["mode"], "max");
}

TEST(Cli, TrustRowErrorsExitOne)
{
    TempFile csv("rows.csv", "months_unemployed,months_eligible,criminal_offenses_known,age_years\n9,1,0,30\n");
    const Outcome o = run({"trust", csv.path()});
    EXPECT_EQ(o.code, cli::kExitInput);
    EXPECT_TRUE(o.out.empty());
    EXPECT_NE(o.err.find("row 1"), std::string::npos);
}

TEST(Cli, DomainErrorsExitTwo)
{
    TempFile csv("undefined.csv", "months_unemployed,months_eligible,criminal_offenses_known,age_years\n0,0,0,17\n");
    const Outcome t = run({"trust", csv.path()});
    EXPECT_EQ(t.code, cli::kExitDomain);
    EXPECT_TRUE(t.out.empty());
    EXPECT_FALSE(t.err.empty());

    TempFile scope("zero.json", R"({"schema":"ravkit-scope/1","scopes":[{"id":"z","limitations":{"anomalies":1}}]})");
    const Outcome r = run({"rav", scope.path()});
    EXPECT_EQ(r.code, cli::kExitDomain);
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, InputErrorsExitOneAndStayOnStderr)
{
    for (const std::vector<std::string>& args : {
             std::vector<std::string>{},
             std::vector<std::string>{"frobnicate"},
             std::vector<std::string>{"rav"},
             std::vector<std::string>{"rav", "/nonexistent/scope.json"},
             std::vector<std::string>{"rav", fixture("toy.json"), "--format", "yaml"},
             std::vector<std::string>{"rav", fixture("toy.json"), "--bogus"},
             std::vector<std::string>{"rav", fixture("nmap_one_port.xml")},
             std::vector<std::string>{"import-nmap", fixture("toy.json")},
             std::vector<std::string>{"import-nmap", fixture("nmap_one_port.xml"), "--merge",
                                      fixture("applicants.csv")},
             std::vector<std::string>{"symbolic", fixture("toy.json"), "--eval", "zz=2"},
             std::vector<std::string>{"symbolic", fixture("toy.json"), "--eval", "h=oops"},
             std::vector<std::string>{"demo", "--kind", "astrology"},
             std::vector<std::string>{"demo", "--bounds", "11"},
             std::vector<std::string>{"demo", "--kind", "collision", "--seed", "-3"},
         }) {
        const Outcome o = run(args);
        EXPECT_EQ(o.code, cli::kExitInput) << (args.empty() ? "<none>" : args[0]);
        EXPECT_TRUE(o.out.empty()) << o.out;
        EXPECT_FALSE(o.err.empty());
    }
}

TEST(Cli, HelpExitsZero)
{
    const Outcome o = run({"--help"});
    EXPECT_EQ(o.code, cli::kExitOk);
    EXPECT_NE(o.out.find("demo"), std::string::npos);
}

TEST(Cli, SymbolicDefaultsAgreeWithRav)
{
    const Outcome o = run({"symbolic", fixture("toy.json")});
    ASSERT_EQ(o.code, cli::kExitOk) << o.err;
    EXPECT_EQ(o.out, golden("symbolic_toy.txt"));
    EXPECT_NE(o.out.find("ActSec = -12.743031"), std::string::npos);
    EXPECT_NE(o.out.find("seclim_sum = "), std::string::npos);

    const Outcome scaled = run({"symbolic", fixture("toy.json"), "--eval", "h=2,p=3", "--format", "json"});
    ASSERT_EQ(scaled.code, cli::kExitOk) << scaled.err;
    Scope s = testing_support::toy();
    s.porosity = {2, 3, 0};
    const double value = json::parse(scaled.out)["scopes"][0]["value"].get<double>();
    EXPECT_NEAR(value, actual_security(s).actsec, 1e-6);
}

TEST(Cli, DemoFormulaGolden)
{
    const Outcome o = run({"demo", "--kind", "formula", "--format", "json"});
    ASSERT_EQ(o.code, cli::kExitOk);
    EXPECT_EQ(o.out, golden("demo_formula.json"));
}

TEST(Cli, DemoSeedFromEnvironment)
{
    const std::vector<std::string> args = {"demo", "--kind", "collision", "--bounds", "2", "--max-findings", "3",
                                           "--format", "json"};
    ::setenv("RAVKIT_SEED", "9", 1);
    const Outcome env = run(args);
    ::unsetenv("RAVKIT_SEED");
    std::vector<std::string> flagged = args;
    flagged.insert(flagged.end(), {"--seed", "9"});
    const Outcome flag = run(flagged);
    ASSERT_EQ(env.code, cli::kExitOk) << env.err;
    EXPECT_EQ(env.out, flag.out);
    const json j = json::parse(flag.out);
    ASSERT_TRUE(j.is_array());
    EXPECT_LE(j.size(), 3u);
    for (const auto& f : j) EXPECT_EQ(f["inputs"]["seed"], 9);

    ::setenv("RAVKIT_SEED", "nine", 1);
    const Outcome bad = run({"demo", "--kind", "collision", "--bounds", "1"});
    ::unsetenv("RAVKIT_SEED");
    EXPECT_EQ(bad.code, cli::kExitInput);
}

TEST(Cli, DemoTrustAndPermutation)
{
    const Outcome o = run({"demo", "--kind", "trust"});
    ASSERT_EQ(o.code, cli::kExitOk);
    EXPECT_NE(o.out.find("trust-aggregation (violated)"), std::string::npos);
    EXPECT_NE(o.out.find("liability-equivalence (holds)"), std::string::npos);
    EXPECT_NE(o.out.find("liability-equivalence (violated)"), std::string::npos);
    const Outcome p = run({"demo", "--kind", "permutation", "--format", "json"});
    const json j = json::parse(p.out);
    ASSERT_EQ(j.size(), 3u);
    EXPECT_EQ(j[0]["verdict"], "holds");
    EXPECT_EQ(j[2]["verdict"], "violated");
}
