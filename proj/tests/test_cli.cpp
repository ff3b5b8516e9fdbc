#include <sstream>

#include <gtest/gtest.h>

#include "mlab_cli.hpp"

using mlab::cli::json;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = mlab::cli::run_command(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expected_code = 0) {
    args.push_back("--format");
    args.push_back("json");
    Invocation r = run(args);
    EXPECT_EQ(r.code, expected_code) << r.err << r.out;
    return json::parse(r.out);
}

// A value for each option that parses in a small ring, used to build valid
// invocations generically.
std::vector<std::string> minimal_invocation(const mlab::cli::CommandSpec& spec) {
    std::vector<std::string> args{spec.name};
    for (const auto& o : spec.options) {
        if (!o.required) continue;
        std::string value = "x1";
        if (o.name == "ring") value = "QQ[x1,x2]";
        else if (o.name == "i" || o.name == "n" || o.name == "degree") value = "1";
        else if (o.name == "mu") value = "-1,0";
        else if (o.name == "element" || o.name == "target") value = "x1^-1";
        args.push_back("--" + o.name + "=" + value);
    }
    // the right-hand side of radical-eq is one of two optional forms
    if (spec.name == "radical-eq") args.push_back("--right=x1");
    return args;
}

} // namespace

TEST(CliExamples, RadicalEqualityOfBinomials) {
    auto report = run_json({"radical-eq", "--ring", "QQ[y1,y2,y3,y4]", "--left", "y1*y3, y2*y4, y1*y4+y2*y3",
                            "--right-intersect", "(y1,y2);(y3,y4)"});
    EXPECT_EQ(report["verdict"], "ok");
    EXPECT_EQ(report["payload"]["equal"], true);
}

TEST(CliExamples, AlphaWitnessLevel) {
    auto report = run_json({"alpha-witness", "--ring", "QQ[x1,x2]", "--i", "1", "--f", "x1-x2", "--max-level", "10"});
    EXPECT_EQ(report["payload"]["witness_level"], 4);
    EXPECT_EQ(report["payload"]["entry"], "x2^-2 - x2^-5");
}

TEST(CliExamples, DimensionOfLine) {
    auto report = run_json({"dim", "--ring", "QQ[x1]", "--ideal", "x1"});
    EXPECT_EQ(report["payload"]["dim"], 0);
    Invocation text = run({"dim", "--ring", "QQ[x1]", "--ideal", "x1"});
    EXPECT_NE(text.out.find("dim: 0"), std::string::npos);
}

TEST(CliExamples, CounterexampleHasFourSubVerdicts) {
    auto report = run_json({"counterexample-224"});
    EXPECT_EQ(report["verdict"], "ok");
    ASSERT_EQ(report["payload"]["checks"].size(), 4u);
    for (const auto& c : report["payload"]["checks"]) EXPECT_TRUE(c["passed"].get<bool>()) << c.dump();
    EXPECT_EQ(report["payload"]["checks"][3]["detail"]["cochain_dims"], json({0, 0, 2, 4, 1}));
}

TEST(CliExamples, PerturbedCounterexampleIsRecordedNotAsserted) {
    auto report = run_json({"counterexample-224", "--perturb"});
    EXPECT_EQ(report["verdict"], "ok");
    EXPECT_EQ(report["payload"]["perturbed"], true);
    EXPECT_TRUE(report["payload"].contains("matches_expectation"));
    EXPECT_FALSE(report["warnings"].empty());
}

TEST(CliExamples, DualextWitness) {
    auto report = run_json({"dualext-witness", "--ring", "QQ[x]", "--f", "x-1"});
    EXPECT_EQ(report["payload"]["exponent"], 2);
    EXPECT_EQ(report["payload"]["coefficient"], "-1");
}

TEST(CliExamples, SelftestFastIsOk) {
    auto report = run_json({"selftest", "--scope", "fast", "--seed", "42"});
    EXPECT_EQ(report["verdict"], "ok");
    EXPECT_EQ(report["payload"]["failed"], 0);
    EXPECT_FALSE(report["payload"]["corpus"].empty());
}

TEST(CliExamples, SelftestFullRunsTowerChecksToEight) {
    auto report = run_json({"selftest", "--scope", "full"});
    EXPECT_EQ(report["verdict"], "ok");
    bool seen = false;
    for (const auto& c : report["payload"]["checks"])
        if (c["name"] == "tower_compatibility") {
            seen = true;
            EXPECT_EQ(c["size"], 8);
        }
    EXPECT_TRUE(seen);
}

TEST(ExitCodes, UsageErrorsForEveryCommand) {
    for (const auto& spec : mlab::cli::command_table()) {
        auto args = minimal_invocation(spec);
        auto unknown = args;
        unknown.push_back("--no-such-option=1");
        EXPECT_EQ(run(unknown).code, 2) << spec.name;
        for (const auto& o : spec.options) {
            if (!o.required) continue;
            std::vector<std::string> missing{spec.name};
            for (std::size_t k = 1; k < args.size(); ++k)
                if (args[k].rfind("--" + o.name + "=", 0) != 0) missing.push_back(args[k]);
            EXPECT_EQ(run(missing).code, 2) << spec.name << " without --" << o.name;
        }
        bool has_ring = false;
        for (const auto& o : spec.options) has_ring = has_ring || o.name == "ring";
        if (has_ring) {
            auto bad_ring = args;
            bad_ring.push_back("--ring=QQ[x1,");
            EXPECT_EQ(run(bad_ring).code, 2) << spec.name;
        }
    }
}

TEST(ExitCodes, MinimalInvocationsDoNotReportUsageErrors) {
    for (const auto& spec : mlab::cli::command_table()) {
        if (spec.name == "selftest" || spec.name == "corollary-241") continue;
        Invocation r = run(minimal_invocation(spec));
        EXPECT_NE(r.code, 2) << spec.name << ": " << r.err;
    }
}

TEST(ExitCodes, ParseErrors) {
    EXPECT_EQ(run({"member", "--ring", "QQ[x,y]", "--ideal", "x^2-y", "--poly", "x^4-z"}).code, 2);
    EXPECT_EQ(run({"parse", "--ring", "QQ[x]", "--poly", "x^"}).code, 2);
    EXPECT_EQ(run({"parse", "--ring", "QQ[x]", "--poly", "(x+1"}).code, 2);
    EXPECT_EQ(run({"parse", "--ring", "F4[x]", "--poly", "x"}).code, 2);
    EXPECT_EQ(run({"dim", "--ring", "QQ[x]", "--ideal", "x", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"alpha", "--ring", "QQ[x1,x2]", "--i", "1", "--levels", "many"}).code, 2);
    EXPECT_EQ(run({"no-such-command"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST(ExitCodes, InvalidParametersAreUsageErrors) {
    // i = n is rejected for the equichar tower, mixed towers need a prime
    EXPECT_EQ(run({"alpha", "--ring", "QQ[x1,x2]", "--i", "2"}).code, 2);
    EXPECT_EQ(run({"alpha", "--ring", "QQ[x1,x2]", "--i", "1", "--variant", "mixed"}).code, 2);
    EXPECT_EQ(run({"alpha", "--ring", "QQ[x1,x2]", "--i", "1", "--variant", "sideways"}).code, 2);
    EXPECT_EQ(run({"cech", "--ring", "QQ[x1,x2]", "--gens", "x1,x2", "--mu=-1"}).code, 2);
    EXPECT_EQ(run({"cech", "--ring", "QQ[x1,x2]", "--gens", "x1+x2", "--mu=-1,-1"}).code, 2);
    EXPECT_EQ(run({"alpha-witness", "--ring", "QQ[x1,x2]", "--i", "1", "--f", "0"}).code, 2);
    EXPECT_EQ(run({"selftest", "--scope", "medium"}).code, 2);
}

TEST(ExitCodes, ResourceBoundsAndInconclusive) {
    auto report = run_json({"gb", "--ring", "QQ[x,y,z]", "--ideal", "x^5+y^4+z^3-1, x^3+y^3+z^2-1, x^2*y^2+z^5-1",
                            "--step-cap", "10"},
                           3);
    EXPECT_EQ(report["verdict"], "inconclusive");
    report = run_json({"alpha-witness", "--ring", "Zp(2)[x1,x2]", "--i", "1", "--variant", "mixed-p-in-I", "--f", "64*x2",
                       "--max-level", "5"},
                      3);
    EXPECT_EQ(report["verdict"], "inconclusive");
    EXPECT_EQ(run({"alpha", "--ring", "QQ[x1,x2]", "--i", "1", "--levels", "30"}).code, 3);
}

TEST(ExitCodes, HelpIsNotAnError) {
    Invocation r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("alpha-witness"), std::string::npos);
}

TEST(ExitCodes, QuietPrintsNothing) {
    Invocation r = run({"dim", "--ring", "QQ[x1]", "--ideal", "x1", "--quiet"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
}

TEST(Determinism, SameArgvSameReport) {
    auto strip = [](json j) {
        j.erase("timing");
        return j;
    };
    for (std::vector<std::string> args :
         {std::vector<std::string>{"corollary-241", "--seed", "9", "--count", "5"},
          std::vector<std::string>{"selftest", "--seed", "3"},
          std::vector<std::string>{"gb", "--ring", "F101[x,y]", "--ideal", "x^3-y, y^2-x"}}) {
        EXPECT_EQ(strip(run_json(args)), strip(run_json(args))) << args[0];
    }
    auto a = run_json({"corollary-241", "--seed", "1", "--count", "5"});
    auto b = run_json({"corollary-241", "--seed", "2", "--count", "5"});
    EXPECT_NE(a["payload"]["cases"], b["payload"]["cases"]);
}

TEST(Corpus, EveryShippedFilePasses) {
    auto outcomes = mlab::cli::run_corpus(MLAB_CORPUS_DIR);
    EXPECT_GE(outcomes.size(), 10u);
    for (const auto& o : outcomes) EXPECT_TRUE(o.passed) << o.file << ": " << o.message;
}

TEST(Corpus, SubsetMatching) {
    json actual = json::parse(R"({"a": 1, "b": {"c": [1, 2], "d": "x"}})");
    EXPECT_TRUE(mlab::cli::json_contains(actual, json::parse(R"({"b": {"d": "x"}})")));
    EXPECT_FALSE(mlab::cli::json_contains(actual, json::parse(R"({"b": {"c": [1]}})")));
    EXPECT_FALSE(mlab::cli::json_contains(actual, json::parse(R"({"e": 1})")));
}
