#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "cli.hpp"

using namespace weingarten;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string trimmed(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
    return s;
}

} // namespace

TEST(Cli, DocumentedExamples) {
    auto r = call({"wg", "orthogonal", "--n", "2", "--type", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(parse_rational_function(trimmed(r.out)), parse_rational_function("-1/(d^3+d^2-2d)"));
    r = call({"moment", "unitary", "--i", "1,1", "--j", "1,1", "--ibar", "1,1", "--jbar", "1,1", "--at", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(trimmed(r.out), "1");
    EXPECT_EQ(call({"wg", "unitary", "--n", "2", "--class", "bogus"}).code, 2);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(call({}).code, 2);
    EXPECT_EQ(call({"frobnicate"}).code, 2);
    EXPECT_EQ(call({"wg", "orthogonal", "--n", "2", "--bogus-flag"}).code, 2);
    EXPECT_EQ(call({"wg", "orthogonal"}).code, 2);
    EXPECT_EQ(call({"wg", "unitary", "--n", "3", "--class", "2,1,1"}).code, 2);
    EXPECT_EQ(call({"moment", "orthogonal", "--i", "1,3", "--j", "1,1", "--at", "2"}).code, 2);
    EXPECT_EQ(call({"moment", "orthogonal", "--i", "1,1", "--j", "1"}).code, 2);
    EXPECT_EQ(call({"table", "--group", "orthogonal", "--n", "2", "--latex", "--json"}).code, 2);
    EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, MathFailures) {
    const auto pole = call({"wg", "orthogonal", "--n", "3", "--type", "3", "--at", "2"});
    EXPECT_EQ(pole.code, 1);
    EXPECT_NE(pole.err.find("pole"), std::string::npos);
    EXPECT_EQ(call({"wg", "unitary", "--n", "9"}).code, 1);
    EXPECT_EQ(call({"wg", "orthogonal", "--n", "6"}).code, 1);
    EXPECT_EQ(call({"wg", "unitary", "--n", "2", "--cap", "1"}).code, 1);
}

TEST(Cli, CapFromEnvironment) {
    ::setenv("WEINGARTEN_UNITARY_CAP", "2", 1);
    EXPECT_EQ(call({"wg", "unitary", "--n", "3"}).code, 1);
    EXPECT_EQ(call({"wg", "unitary", "--n", "3", "--cap", "3"}).code, 0);
    ::setenv("WEINGARTEN_UNITARY_CAP", "zero", 1);
    EXPECT_EQ(call({"wg", "unitary", "--n", "1"}).code, 2);
    ::unsetenv("WEINGARTEN_UNITARY_CAP");
    EXPECT_EQ(call({"wg", "unitary", "--n", "3"}).code, 0);
}

TEST(Cli, JsonRoundTripsByteForByte) {
    const std::vector<std::vector<std::string>> commands{
        {"wg", "orthogonal", "--n", "3", "--json"},
        {"wg", "unitary", "--n", "4", "--at", "7", "--json"},
        {"wg", "symplectic", "--n", "2", "--json"},
        {"moment", "orthogonal", "--i", "1,1,2,2", "--j", "1,1,2,2", "--json"},
        {"moment", "unitary", "--i", "1,2", "--j", "2,1", "--ibar", "1,2", "--jbar", "1,2", "--at", "3", "--json"},
        {"moment", "symplectic", "--i", "1,3", "--j", "2,4", "--d", "2", "--json"},
        {"table", "--group", "orthogonal", "--n", "4", "--up-to", "--json"},
        {"asymptotics", "--group", "orthogonal", "--n", "3", "--json"},
        {"verify", "--group", "orthogonal", "--d", "2", "--samples", "2000", "--count", "3", "--json"},
        {"selftest", "--json"},
    };
    for (const auto& c : commands) {
        const auto r = call(c);
        ASSERT_EQ(r.code, 0) << c[0] << " " << r.err;
        const auto parsed = nlohmann::json::parse(r.out);
        EXPECT_EQ(parsed.dump() + "\n", r.out) << c[0];
    }
    // the serialized rational function parses back to the same value
    const auto r = call({"wg", "orthogonal", "--n", "2", "--type", "1,1", "--json"});
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(rational_function_from_json(j["entries"][0]["value"]), wg_orthogonal(2).at({1, 1}));
}

TEST(Cli, AtMatchesSymbolicEvaluation) {
    const std::vector<std::vector<std::string>> symbolic{
        {"wg", "orthogonal", "--n", "3", "--type", "2,1"},
        {"wg", "unitary", "--n", "3", "--class", "3"},
        {"wg", "symplectic", "--n", "2", "--type", "1,1"},
        {"moment", "orthogonal", "--i", "1,1,2,2", "--j", "1,2,1,2"},
        {"moment", "unitary", "--i", "1,2", "--j", "1,2", "--ibar", "1,2", "--jbar", "2,1"},
    };
    for (const auto& c : symbolic) {
        const auto f = parse_rational_function(trimmed(call(c).out));
        for (int d : {3, 4, 7, 10}) {
            auto withAt = c;
            withAt.push_back("--at");
            withAt.push_back(std::to_string(d));
            const auto r = call(withAt);
            ASSERT_EQ(r.code, 0) << r.err;
            EXPECT_EQ(trimmed(r.out), to_short_string(f(d))) << c[0] << " " << c[1] << " d=" << d;
        }
    }
}

TEST(Cli, TableLayouts) {
    const auto latex = call({"table", "--group", "orthogonal", "--n", "4", "--up-to", "--latex"});
    EXPECT_EQ(latex.code, 0);
    EXPECT_NE(latex.out.find("\\Wg ([2,2]) &= \\frac{d^2+5d+18}{d(d-1)(d-2)(d-3)(d+1)(d+2)(d+4)(d+6)},\\\\"), std::string::npos);
    EXPECT_NE(latex.out.find("\\Wg ([2]) &= \\frac{-1}{d(d-1)(d+2)},\\\\"), std::string::npos);
    EXPECT_TRUE(latex.out.ends_with(".\n\\end{align*}\n"));
    const auto text = call({"table", "--group", "symplectic", "--n", "1"});
    EXPECT_EQ(text.out, "Wg([1]) = -1/d\n");
}

TEST(Cli, MomentsAndAsymptotics) {
    auto r = call({"moment", "symplectic", "--i", "1,2", "--j", "1,2", "--d", "1"});
    EXPECT_EQ(trimmed(r.out), "1/2");
    r = call({"moment", "entries", "--group", "unitary", "--d", "2", "--query", "1,1;1,1;1,1*;1,1*"});
    EXPECT_EQ(trimmed(r.out), "1,1;1,1;1,1*;1,1*\t1/3");
    EXPECT_EQ(call({"moment", "entries", "--group", "unitary", "--d", "2", "--query", "1,1;1,x"}).code, 2);
    EXPECT_EQ(call({"asymptotics", "--group", "orthogonal", "--n", "4"}).code, 0);
    EXPECT_EQ(call({"asymptotics", "--group", "unitary", "--n", "5"}).code, 0);
}

TEST(Cli, VerifyAndSelftest) {
    auto r = call({"verify", "--group", "symplectic", "--d", "1", "--samples", "20000", "--seed", "3", "--query", "1,1;1,1*",
                   "--query", "1,2;2,1"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("1,1;1,1*\t1/2"), std::string::npos);
    EXPECT_EQ(call({"verify", "--group", "unitary", "--d", "2", "--query", "3,1;1,1*"}).code, 2);
    // same seed, same numbers
    const auto a = call({"verify", "--group", "unitary", "--d", "3", "--samples", "5000", "--seed", "9", "--json"});
    const auto b = call({"verify", "--group", "unitary", "--d", "3", "--samples", "5000", "--seed", "9", "--json"});
    EXPECT_EQ(a.out, b.out);
    r = call({"selftest"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}
