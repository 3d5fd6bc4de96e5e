#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dsb/cli.hpp"
#include "dsb/text_format.hpp"

namespace {

const std::filesystem::path kData = DSB_TEST_DATA_DIR;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = dsb::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return (kData / name).string(); }

std::string write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("dsb_cli_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

// Blocks between the count line and the truncated line.
std::vector<dsb::Instance> sparsify_blocks(const std::string& out) {
    std::vector<dsb::Instance> blocks;
    std::istringstream in(out);
    std::string line, block;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line == "%%" || line.rfind("truncated ", 0) == 0) {
            if (!block.empty()) {
                blocks.push_back(dsb::parse_instance(block));
            }
            block.clear();
        } else {
            block += line + "\n";
        }
    }
    return blocks;
}

} // namespace

TEST(Cli, DensifyRunningExample) {
    const auto r = run({"densify", data("horn3_running.csp")});
    EXPECT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "status sat");
    int ones = 0, ands = 0, zeros = 0;
    while (std::getline(in, line)) {
        ones += line.rfind("one ", 0) == 0;
        ands += line.rfind("and ", 0) == 0;
        zeros += line.rfind("zero ", 0) == 0;
    }
    EXPECT_EQ(ones, 3);
    EXPECT_EQ(ands, 27);
    EXPECT_EQ(zeros, 0);
}

TEST(Cli, DensifyEnginesByteIdentical) {
    for (const auto* file : {"horn3_running.csp", "or_nand.csp", "horn3_unsat.csp", "twosat_chain.csp"}) {
        const auto base = run({"densify", data(file)});
        EXPECT_EQ(base.code, 0);
        for (const auto* engine : {"datalog", "sigma", "oracle"}) {
            EXPECT_EQ(run({"densify", data(file), "--engine", engine}).out, base.out) << file << " " << engine;
        }
    }
    EXPECT_EQ(run({"densify", data("horn3_unsat.csp")}).out.rfind("status unsat\n", 0), 0u);
}

TEST(Cli, Implies) {
    EXPECT_EQ(run({"implies", data("or_nand.csp"), data("or_nand.csp")}).out, "yes\n");
    const auto swapped = write_temp("or10.csp", "template 2sat\nvars 2\nor 1 0\n");
    const auto imp = write_temp("imp01.csp", "template 2sat\nvars 2\nimp 0 1\n");
    EXPECT_EQ(run({"implies", data("or_nand.csp"), swapped}).out, "yes\n");
    const auto no = run({"implies", data("or_nand.csp"), imp});
    EXPECT_EQ(no.out, "no\n");
    EXPECT_EQ(no.code, 0);
    EXPECT_EQ(run({"implies", data("or_nand.csp"), data("horn3_running.csp")}).code, 1);
}

TEST(Cli, SparsifyCounts) {
    const auto r = run({"sparsify", data("or_nand.csp")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("count 4\n", 0), 0u);
    EXPECT_NE(r.out.find("\ntruncated false\n"), std::string::npos);
    EXPECT_EQ(sparsify_blocks(r.out).size(), 4u);
}

TEST(Cli, SparsifyLimitAndStrict) {
    const auto cut = run({"sparsify", data("or_nand.csp"), "--limit", "2"});
    EXPECT_EQ(cut.code, 0);
    EXPECT_EQ(cut.out.rfind("count 2\n", 0), 0u);
    EXPECT_NE(cut.out.find("\ntruncated true\n"), std::string::npos);
    EXPECT_EQ(run({"sparsify", data("or_nand.csp"), "--limit", "2", "--strict"}).code, 2);
    EXPECT_EQ(run({"sparsify", data("or_nand.csp"), "--limit", "0"}).code, 1);
}

TEST(Cli, SparsifyWithin) {
    for (const auto* file : {"or_nand.csp", "twosat_chain.csp", "horn3_running.csp", "horn3_and001.csp"}) {
        const auto input = run({"densify", data(file)});
        const auto r = run({"sparsify", data(file), "--within", "input"});
        ASSERT_EQ(r.code, 0) << r.err;
        std::ifstream in(data(file));
        const auto original = dsb::parse_instance(std::string(std::istreambuf_iterator<char>(in), {}));
        const auto blocks = sparsify_blocks(r.out);
        EXPECT_FALSE(blocks.empty());
        for (const auto& b : blocks) {
            EXPECT_TRUE(b.is_subset_of(original));
        }
        EXPECT_EQ(run({"sparsify", data(file), "--within", "universe"}).out, run({"sparsify", data(file)}).out);
    }
    const auto pooled = run({"sparsify", data("or_nand.csp"), "--within", data("or_nand_pool.csp")});
    EXPECT_EQ(pooled.code, 0);
    // Pool {or(0,1), or(1,0), nand(1,0)}: either or direction plus nand(1,0).
    EXPECT_EQ(pooled.out, "count 2\ntemplate 2sat\nvars 2\nor 0 1\nnand 1 0\n%%\n"
                          "template 2sat\nvars 2\nor 1 0\nnand 1 0\ntruncated false\n");
}

TEST(Cli, SparsifyUnsatWarns) {
    const auto r = run({"sparsify", data("horn3_unsat.csp")});
    EXPECT_EQ(r.code, 0);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, Check) {
    EXPECT_EQ(run({"check", data("horn3_running.csp"), "--maximal"}).out, "no\n");
    EXPECT_EQ(run({"check", data("or_nand.csp"), "--minimal"}).out, "yes\n");
    const auto dense = run({"densify", data("or_nand.csp")}).out;
    const auto path = write_temp("dense.csp", dense.substr(dense.find('\n') + 1));
    EXPECT_EQ(run({"check", path, "--maximal"}).out, "yes\n");
    EXPECT_EQ(run({"check", path, "--minimal"}).out, "no\n");
    EXPECT_EQ(run({"check", path}).code, 1);
    EXPECT_EQ(run({"check", path, "--maximal", "--minimal"}).code, 1);
}

TEST(Cli, Oracle) {
    EXPECT_EQ(run({"oracle", "homs", data("or_nand.csp")}).out, "count 2\n0 1\n1 0\n");
    EXPECT_EQ(run({"oracle", "densify", data("or_nand.csp")}).out, run({"densify", data("or_nand.csp")}).out);
    EXPECT_EQ(run({"oracle", "minimals", data("or_nand.csp")}).out, run({"sparsify", data("or_nand.csp")}).out);
    const auto big = write_temp("big.csp", "template 2sat\nvars 21\n");
    EXPECT_EQ(run({"oracle", "homs", big}).code, 2);
}

TEST(Cli, Sigma) {
    const auto r = run({"sigma", "--template", "2sat", "--vars", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("template 2sat\nvars 1\nuniverse 3\n", 0), 0u);
    EXPECT_EQ(run({"sigma", "--template", "horn5", "--vars", "1"}).code, 1);
    EXPECT_EQ(run({"sigma", "--template", "horn3", "--vars", "0"}).code, 1);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"bogus"}).code, 1);
    EXPECT_EQ(run({"densify", data("missing.csp")}).code, 1);
    const auto bad = write_temp("bad.csp", "template 2sat\nvars 2\nor 0 5\n");
    const auto r = run({"densify", bad});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("3"), std::string::npos);
}

TEST(Cli, RepeatedRunsIdentical) {
    const std::vector<std::vector<std::string>> commands{
        {"densify", data("twosat_chain.csp")},
        {"sparsify", data("horn3_running.csp")},
        {"implies", data("or_nand.csp"), data("twosat_chain.csp")},
        {"sigma", "--template", "horn3", "--vars", "2"},
        {"check", data("horn3_and001.csp"), "--minimal"},
        {"oracle", "minimals", data("horn3_and001.csp")},
    };
    for (const auto& c : commands) {
        const auto first = run(c);
        for (int i = 0; i < 3; ++i) {
            const auto again = run(c);
            EXPECT_EQ(again.out, first.out);
            EXPECT_EQ(again.code, first.code);
        }
    }
}
