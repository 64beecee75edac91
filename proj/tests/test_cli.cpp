#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"

using namespace fconv::cli;
namespace fs = std::filesystem;

namespace {

struct Args {
    std::vector<std::string> words;
    std::vector<const char*> ptrs;

    Args(std::initializer_list<std::string> list) : words{"fconv"} {
        words.insert(words.end(), list);
        for (const auto& w : words) ptrs.push_back(w.c_str());
    }
    int argc() const { return static_cast<int>(ptrs.size()); }
    const char* const* argv() const { return ptrs.data(); }
};

RunConfig parse(std::initializer_list<std::string> list) {
    const Args a(list);
    return parse_args(a.argc(), a.argv());
}

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::initializer_list<std::string> list) {
    const Args a(list);
    std::ostringstream out, err;
    const int code = main_entry(a.argc(), a.argv(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("fconv_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        ::unsetenv("FCONV_DEFAULT_CUTOFF");
    }
    void TearDown() override {
        fs::remove_all(dir_);
        ::unsetenv("FCONV_DEFAULT_CUTOFF");
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST(CliParse, LinearityEfficiencyFlag) {
    ::unsetenv("FCONV_DEFAULT_CUTOFF");
    const RunConfig c = parse({"linearity", "--theta-eff", "0.01", "--points", "20", "-o", "out.csv"});
    EXPECT_EQ(c.experiment, Experiment::linearity);
    EXPECT_EQ(c.backend, BackendChoice::fock);
    EXPECT_EQ(c.output_path, "out.csv");
    EXPECT_FALSE(c.cutoff.has_value());
    const auto& p = std::get<LinearityParams>(c.params);
    EXPECT_EQ(p.theta_eff, 0.01);
    EXPECT_EQ(p.points, 20);
    EXPECT_NEAR(std::asin(std::sqrt(p.theta_eff)), std::asin(0.1), 1e-15);
}

TEST(CliParse, SharedFlagsAfterSubcommand) {
    const RunConfig c = parse({"fringe", "--backend", "gaussian", "--cutoff", "9", "--points", "5", "-o", "f.csv"});
    EXPECT_EQ(c.backend, BackendChoice::gaussian);
    EXPECT_EQ(c.cutoff, 9);
    EXPECT_EQ(std::get<FringeParams>(c.params).points, 5);
}

TEST(CliParse, ListFlags) {
    const RunConfig c = parse({"wdm", "--signal-frequencies", "1,1.5,2", "--thetas", "0.1,0.2,0.3", "-o", "w.csv"});
    const auto& p = std::get<WdmParams>(c.params);
    EXPECT_EQ(p.signal_frequencies, (std::vector<double>{1.0, 1.5, 2.0}));
    EXPECT_EQ(p.thetas.size(), 3u);
    EXPECT_TRUE(p.phis.empty());
}

TEST(CliParse, UsageErrorsNameTheFlag) {
    const Outcome missing = run({"-o", "x.csv"});
    EXPECT_NE(missing.code, 0);
    EXPECT_NE(missing.err.find("subcommand"), std::string::npos) << missing.err;

    const Outcome unknown = run({"noise", "--bogus", "-o", "x.csv"});
    EXPECT_NE(unknown.code, 0);
    EXPECT_NE(unknown.err.find("--bogus"), std::string::npos) << unknown.err;

    const Outcome range = run({"linearity", "--theta-eff", "2", "-o", "x.csv"});
    EXPECT_NE(range.code, 0);
    EXPECT_NE(range.err.find("--theta-eff"), std::string::npos) << range.err;

    const Outcome backend = run({"noise", "--backend", "cuda", "-o", "x.csv"});
    EXPECT_NE(backend.code, 0);
    EXPECT_NE(backend.err.find("--backend"), std::string::npos) << backend.err;

    const Outcome cutoff = run({"noise", "--cutoff", "0", "-o", "x.csv"});
    EXPECT_NE(cutoff.code, 0);
    EXPECT_NE(cutoff.err.find("--cutoff"), std::string::npos) << cutoff.err;

    const Outcome lists = run({"wdm", "--signal-frequencies", "1,2", "--thetas", "0.3", "-o", "x.csv"});
    EXPECT_NE(lists.code, 0);
    EXPECT_NE(lists.err.find("--thetas"), std::string::npos) << lists.err;
}

TEST(CliParse, GaussianDepletionRejected) {
    const Outcome o = run({"depletion", "--backend", "gaussian", "-o", "d.csv"});
    EXPECT_NE(o.code, 0);
    EXPECT_NE(o.err.find("NonGaussianDevice"), std::string::npos) << o.err;
    EXPECT_NE(run({"depletion", "--backend", "both", "-o", "d.csv"}).code, 0);
}

TEST(CliParse, HelpExitsZero) {
    const Outcome o = run({"--help"});
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("linearity"), std::string::npos);
    EXPECT_NE(o.out.find("--backend"), std::string::npos);
}

TEST_F(CliFiles, ConfigFileAndFlagPrecedence) {
    {
        std::ofstream cfg(path("run.toml"));
        cfg << "cutoff = 7\n[noise]\npoints = 4\nmax-strength = 0.5\n";
    }
    ::setenv("FCONV_DEFAULT_CUTOFF", "11", 1);
    const RunConfig from_file = parse({"noise", "--config", path("run.toml"), "-o", "n.csv"});
    EXPECT_EQ(from_file.cutoff, 7);
    EXPECT_EQ(std::get<NoiseParams>(from_file.params).points, 4);
    EXPECT_EQ(std::get<NoiseParams>(from_file.params).max_strength, 0.5);

    const RunConfig flags = parse({"noise", "--config", path("run.toml"), "--points", "6", "--cutoff", "9", "-o", "n.csv"});
    EXPECT_EQ(flags.cutoff, 9);
    EXPECT_EQ(std::get<NoiseParams>(flags.params).points, 6);
    EXPECT_EQ(std::get<NoiseParams>(flags.params).max_strength, 0.5);
}

TEST_F(CliFiles, EnvironmentCutoffDefault) {
    ::setenv("FCONV_DEFAULT_CUTOFF", "13", 1);
    EXPECT_EQ(parse({"linearity", "-o", "x.csv"}).cutoff, 13);
    ::setenv("FCONV_DEFAULT_CUTOFF", "zero", 1);
    const Outcome o = run({"linearity", "-o", path("x.csv")});
    EXPECT_NE(o.code, 0);
    EXPECT_NE(o.err.find("FCONV_DEFAULT_CUTOFF"), std::string::npos);
    EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(CliFiles, WritesCsvDeterministically) {
    const Outcome a = run({"linearity", "--points", "5", "-o", path("a.csv")});
    const Outcome b = run({"linearity", "--points", "5", "-o", path("b.csv")});
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    const std::string text = slurp(path("a.csv"));
    EXPECT_EQ(text, slurp(path("b.csv")));
    EXPECT_NE(text.find("# backend=fock\n"), std::string::npos);
    EXPECT_NE(text.find("\ntransmission,idler_signal\n"), std::string::npos);
    EXPECT_FALSE(fs::exists(path("a.csv.partial")));
}

TEST_F(CliFiles, BothBackendsWritesPairAndCrossChecks) {
    const Outcome o = run({"fringe", "--points", "7", "--backend", "both", "-o", path("fr.csv")});
    EXPECT_EQ(o.code, 0) << o.err;
    EXPECT_TRUE(fs::exists(path("fr.fock.csv")));
    EXPECT_TRUE(fs::exists(path("fr.gaussian.csv")));
    EXPECT_FALSE(fs::exists(path("fr.csv")));
}

TEST(CliCrossCheck, DeviationGate) {
    fconv::ScanResult a{"t", "x", {"y", "z"}, {}, {}};
    a.add_row(0.0, {1.0, 2.0});
    a.add_row(1.0, {3.0, 4.0});
    fconv::ScanResult b = a;
    EXPECT_EQ(backend_deviation(a, b), 0.0);
    b.rows[1].values[1] += 5e-8;
    EXPECT_NEAR(backend_deviation(a, b), 5e-8, 1e-15);
    b.rows[0].values[0] += 2e-7;
    EXPECT_GT(backend_deviation(a, b), 1e-7);
    b.rows.pop_back();
    EXPECT_TRUE(std::isinf(backend_deviation(a, b)));
}

TEST_F(CliFiles, FailuresLeaveNoFile) {
    const Outcome unwritable = run({"noise", "--points", "2", "-o", path("missing/dir/n.csv")});
    EXPECT_NE(unwritable.code, 0);
    EXPECT_NE(unwritable.err.find("missing/dir/n.csv"), std::string::npos) << unwritable.err;

    const Outcome policy = run({"depletion", "--alpha-s", "5", "--cutoff", "40", "-o", path("d.csv")});
    EXPECT_NE(policy.code, 0);
    EXPECT_FALSE(fs::exists(path("d.csv")));
}

TEST(CliPaths, BothSuffixes) {
    RunConfig c;
    c.output_path = "scan.csv";
    EXPECT_EQ(output_paths(c), std::vector<std::string>{"scan.csv"});
    c.backend = BackendChoice::both;
    EXPECT_EQ(output_paths(c), (std::vector<std::string>{"scan.fock.csv", "scan.gaussian.csv"}));
    c.output_path = "scan";
    EXPECT_EQ(output_paths(c)[1], "scan.gaussian.csv");
}
