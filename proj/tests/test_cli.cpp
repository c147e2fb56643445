#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "toric/cli.hpp"

using namespace toric;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto p = std::filesystem::temp_directory_path() / ("toric_cli_test_" + name);
    std::ofstream(p) << text;
    return p.string();
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

const std::string kModel = oracle::data("fourcycle.model");

} // namespace

TEST(ParseModel, GraphAndGenerators) {
    const auto g = parse_model("var A 2\nvar B 3 # trailing\n\nedge A B\n");
    EXPECT_TRUE(g.is_graph());
    EXPECT_EQ(g.space.cardinality(1), 3);
    EXPECT_EQ(g.graph.edges().size(), 1u);
    const auto l = parse_model("var A 2\nvar B 2\nvar C 2\ngen A B\ngen C\n");
    EXPECT_FALSE(l.is_graph());
    EXPECT_EQ(l.generators.generators().size(), 2u);
    const auto e = parse_model("var A 2\nvar B 2\n");
    EXPECT_TRUE(e.is_graph());
    EXPECT_TRUE(e.graph.edges().empty());
}

TEST(ParseModel, ErrorsCarryLineNumbers) {
    auto message = [](const std::string& text) {
        try {
            parse_model(text, "m");
        } catch (const DomainError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_EQ(message("var A 2\nvar B 2\nedge A B\ngen A\n").rfind("m:4:", 0), 0u);
    EXPECT_EQ(message("var A 2\nedge A Z\n").rfind("m:2:", 0), 0u);
    EXPECT_EQ(message("var A 1\n").rfind("m:1:", 0), 0u);
    EXPECT_EQ(message("var A x\n").rfind("m:1:", 0), 0u);
    EXPECT_EQ(message("var A 2\nvar A 2\n").rfind("m:2:", 0), 0u);
    EXPECT_EQ(message("vertex A\n").rfind("m:1:", 0), 0u);
    EXPECT_NE(message("# nothing\n"), "no error");
    EXPECT_NE(message("var A 2\nvar B 2\nedge A A\n"), "no error");
}

TEST(WriteModel, RoundTrip) {
    for (const char* name : {"fourcycle.model", "fourcycle2233.model", "chain.model", "nothreeway.model"}) {
        std::ifstream in(oracle::data(name));
        const auto m = parse_model(in);
        const auto text = write_model(m);
        const auto again = parse_model(text);
        EXPECT_EQ(write_model(again), text) << name;
        EXPECT_EQ(again.matrix(), m.matrix()) << name;
    }
}

TEST(ParseWeights, Errors) {
    const auto s = StateSpace::uniform(2, 2);
    const auto w = parse_weights("00 1/2\n11 3\n", s);
    EXPECT_EQ(w, (std::vector<Rational>{Rational(1, 2), 0, 0, 3}));
    EXPECT_THROW(parse_weights("00 1/2\n00 1/2\n", s), DomainError);
    EXPECT_THROW(parse_weights("00 -1/2\n", s), DomainError);
    EXPECT_THROW(parse_weights("02 1/2\n", s), DomainError);
    EXPECT_THROW(parse_weights("00\n", s), DomainError);
    EXPECT_THROW(parse_weights("00 1/0\n", s), DomainError);
    EXPECT_THROW(parse_counts("00 1/2\n", s), DomainError);
    EXPECT_THROW(parse_counts("00 -1\n", s), DomainError);
    EXPECT_EQ(parse_counts("01 4\n", s), (std::vector<Integer>{0, 4, 0, 0}));
}

TEST(Cli, MarkovBasisFourCycle) {
    const auto r = run_cli({"markov-basis", kModel});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 17u);
    EXPECT_EQ(ls.back(), "deg2=8 deg4=8");
    const auto f = oracle::four_cycle();
    auto want = oracle::parse_all(oracle::four_cycle_quadrics(), f.space);
    const auto q = oracle::parse_all(oracle::four_cycle_quartics(), f.space);
    want.insert(want.end(), q.begin(), q.end());
    for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
        const auto b = parse_binomial(ls[i], f.space);
        const Binomial flipped{b.minus, b.plus};
        EXPECT_TRUE(std::count(want.begin(), want.end(), b) + std::count(want.begin(), want.end(), flipped) == 1) << ls[i];
    }
}

TEST(Cli, Deterministic) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"markov-basis", kModel},
             {"walk", kModel, oracle::data("small4.table"), "--steps", "500", "--seed", "9"},
             {"classify", kModel, oracle::data("skewed4.dist")}}) {
        const auto a = run_cli(args), b = run_cli(args);
        EXPECT_EQ(a.code, 0);
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(Cli, Classify) {
    auto verdict = [](const std::string& dist) { return lines(run_cli({"classify", kModel, oracle::data(dist)}).out); };
    EXPECT_EQ(verdict("uniform4.dist").at(0), "FACTORS");
    EXPECT_EQ(verdict("corner4.dist").at(0), "FACTORS");
    EXPECT_EQ(verdict("corner4.dist").at(1), "support: 0000 1111");
    const auto limit = verdict("fourlimit.dist");
    EXPECT_EQ(limit.at(0), "LIMIT_ONLY");
    EXPECT_EQ(limit.at(2), "nice: no");
    const auto out = verdict("skewed4.dist");
    ASSERT_EQ(out.size(), 4u);
    EXPECT_EQ(out[0], "OUTSIDE");
    ASSERT_EQ(out[3].rfind("witness: ", 0), 0u);
    const auto f = oracle::four_cycle();
    const auto w = parse_binomial(out[3].substr(9), f.space);
    std::vector<Rational> p(16, Rational(1, 17));
    p[0] = Rational(2, 17);
    EXPECT_NE(oracle::eval(w.plus, p), oracle::eval(w.minus, p));
    EXPECT_TRUE(verify_kernel_membership(w, f.a));
}

TEST(Cli, NormalizesWithWarning) {
    const auto path = write_temp("weights.dist", "0000 1\n1111 1\n");
    const auto r = run_cli({"classify", kModel, path});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(lines(r.out).at(0), "FACTORS");
    EXPECT_FALSE(r.err.empty());
    EXPECT_TRUE(run_cli({"classify", kModel, oracle::data("corner4.dist")}).err.empty());
}

TEST(Cli, Recover) {
    const auto ok = run_cli({"recover", kModel, oracle::data("uniform4.dist")});
    ASSERT_EQ(ok.code, 0) << ok.err;
    const auto ls = lines(ok.out);
    EXPECT_EQ(ls.at(0).rfind("VERIFIED max_rel_error=", 0), 0u);
    EXPECT_EQ(ls.size(), 17u);
    EXPECT_EQ(run_cli({"recover", kModel, oracle::data("skewed4.dist")}).code, 1);
    EXPECT_EQ(run_cli({"recover", kModel, oracle::data("fourlimit.dist")}).code, 1);
    const auto strict = run_cli({"recover", kModel, oracle::data("uniform4.dist"), "--tol", "1e-300"});
    EXPECT_EQ(strict.code, 3);
    EXPECT_EQ(strict.out, "RECOVERY_FAILED\n");
}

TEST(Cli, Cpr) {
    // (2/17)(1/17) / ((1/17)(1/17)) with X1 against X3 given X2 X4 = 00.
    const auto r = run_cli({"cpr", kModel, oracle::data("skewed4.dist"), "--spec", "X=X1:0/1;Y=X3:0/1;Z=X2,X4:00"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "2\n");
    EXPECT_EQ(run_cli({"cpr", kModel, oracle::data("uniform4.dist"), "--spec", "X=X1:0/1;Y=X3:0/1;Z=X2,X4:01"}).out, "1\n");
    EXPECT_EQ(run_cli({"cpr", kModel, oracle::data("uniform4.dist"), "--spec", "X=X1:0/0;Y=X3:0/1;Z=X2,X4:01"}).code, 1);
    EXPECT_EQ(run_cli({"cpr", kModel, oracle::data("uniform4.dist"), "--spec", "X=X9:0/1;Y=X3:0/1"}).code, 1);
}

TEST(Cli, WalkKeepsStatistics) {
    const auto r = run_cli({"walk", kModel, oracle::data("small4.table"), "--steps", "1000", "--seed", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto f = oracle::four_cycle();
    const Table start(f.space, parse_counts("0000 1\n0101 1\n1010 1\n1111 1\n", f.space));
    const Table end(f.space, parse_counts(r.out, f.space));
    EXPECT_EQ(statistics(f.a, end), statistics(f.a, start));
}

TEST(Cli, Constructions) {
    const auto pm = run_cli({"pairs-model", "2"});
    ASSERT_EQ(pm.code, 0);
    EXPECT_EQ(parse_model(pm.out).matrix(), oracle::four_cycle().a);
    const auto p = run_cli({"prop10", "2"});
    EXPECT_EQ(p.out, "+ p0000 p0101 p1011 p1110 - p0001 p0100 p1010 p1111\n");
    EXPECT_EQ(run_cli({"prop10", "9"}).code, 2);
    EXPECT_EQ(run_cli({"prop10", "0"}).code, 1);
}

TEST(Cli, KernelAndPairwise) {
    const auto k = run_cli({"kernel", oracle::data("nothreeway.model")});
    EXPECT_EQ(k.out, "1 -1 -1 1 -1 1 1 -1\n");
    const auto pw = lines(run_cli({"pairwise", oracle::data("chain.model")}).out);
    EXPECT_EQ(pw.size(), 2u);
    EXPECT_EQ(run_cli({"pairwise", oracle::data("nothreeway.model")}).code, 1);
}

TEST(Cli, ExitCodes) {
    auto degree_capped = run_cli({"markov-basis", kModel, "--max-degree", "2"});
    EXPECT_EQ(degree_capped.code, 2);
    EXPECT_EQ(degree_capped.out, "TRUNCATED\n");
    EXPECT_EQ(run_cli({}).code, 1);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
    EXPECT_EQ(run_cli({"markov-basis", oracle::data("missing.model")}).code, 1);
    EXPECT_EQ(run_cli({"walk", kModel, oracle::data("small4.table"), "--steps", "0", "--seed", "1"}).code, 1);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
    const auto bad = write_temp("bad.model", "var A 2\nedge A B\n");
    const auto r = run_cli({"kernel", bad});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find(":2:"), std::string::npos);
}
