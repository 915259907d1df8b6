#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "cohn/cli.hpp"
#include "cohn/serialize.hpp"

using namespace cohn;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult invoke(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"cohn"};
    argv.insert(argv.end(), args);
    std::ostringstream out, err;
    int code = run_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return CliResult{code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse_args builds a search config") {
    RunConfig cfg = parse_args({"search", "--a", "2", "--b", "3", "--kmax", "40", "--nmin", "2",
                                "--nmax", "20", "--mode", "brute", "--out", "json"});
    CHECK(cfg.cmd == Subcommand::search);
    CHECK(cfg.family_a == 2);
    CHECK(cfg.family_b == 3);
    CHECK(cfg.k_max == 40);
    CHECK(cfg.n_min == 2);
    CHECK(cfg.n_max == 20);
    CHECK_FALSE(cfg.pruned);
    CHECK(cfg.output == OutputFormat::json);
}

TEST_CASE("parse_args validates flag combinations up front") {
    CHECK_THROWS_AS(parse_args({"search", "--kmax", "10", "--mode", "pruned"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_args({"search", "--kmax", "10", "--qset", "3,5"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_args({"search", "--kmax", "10", "--nmin", "9", "--nmax", "3"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_args({"search"}), std::invalid_argument);          // --kmax missing
    CHECK_THROWS_AS(parse_args({"nu", "--p", "3"}), std::invalid_argument);  // --n missing
    CHECK_THROWS_AS(parse_args({"nu", "--p", "3", "--n", "63", "--bogus", "1"}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_args({}), std::invalid_argument);
    CHECK_THROWS_AS(parse_args({"nu", "--p", "3", "--n", "-5"}), std::invalid_argument);
    CHECK_THROWS_AS(parse_args({"search", "--kmax", "10", "--mode", "sideways"}),
                    std::invalid_argument);
}

TEST_CASE("parse_args splits --qset on commas") {
    RunConfig cfg =
        parse_args({"search", "--kmax", "50", "--mode", "pruned", "--qset", "3,5,7"});
    CHECK(cfg.pruned);
    CHECK(cfg.q_set == std::vector<std::uint64_t>{3, 5, 7});
}

TEST_CASE("--help is not an error") {
    CHECK_THROWS_AS(parse_args({"--help"}), HelpRequested);
    CliResult r = invoke({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("search") != std::string::npos);
}

TEST_CASE("nu subcommand matches the worked example") {
    CliResult r = invoke({"nu", "--p", "3", "--n", "63"});
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");

    r = invoke({"nu", "--p", "3", "--n", "63", "--out", "json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("schema") == 1);
    CHECK(j.at("valuation") == 2);
    CHECK(j.at("derivation") == "direct");
    CHECK(j.at("subject") == "63");
}

TEST_CASE("lte subcommand") {
    CliResult r = invoke({"lte", "--a", "4", "--b", "1", "--k", "3", "--p", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");

    r = invoke({"lte", "--a", "2", "--b", "1", "--k", "5", "--p", "2"});
    CHECK(r.code == 1);  // precondition violation is a usage-class error
    CHECK(r.err.find("p does not divide a-b") != std::string::npos);
}

TEST_CASE("constraints subcommand, table and json") {
    CliResult r = invoke({"constraints", "--q", "5"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "q = 5\n"
          "prime  min_exponent\n"
          "    2  3\n"
          "    3  4\n"
          "    5  4\n");

    r = invoke({"constraints", "--q", "5", "--out", "json"});
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("bounds") == nlohmann::json({{"2", 3}, {"3", 4}, {"5", 4}}));
    ConstraintSet cs = constraint_set_from_json(j);
    CHECK(cs == small_prime_constraints(Prime(5)));

    r = invoke({"constraints", "--q", "11", "--full", "--out", "json"});
    j = nlohmann::json::parse(r.out);
    CHECK(j.at("bound") ==
          nlohmann::json({{"2", 9}, {"3", 10}, {"5", 10}, {"7", 10}, {"11", 2}}));

    r = invoke({"constraints", "--q", "2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("q must be odd") != std::string::npos);

    r = invoke({"constraints", "--q", "9"});
    CHECK(r.code == 1);  // 9 is not prime
}

TEST_CASE("audit subcommand round-trips its trail") {
    CliResult r = invoke({"audit", "--q", "13", "--out", "json"});
    CHECK(r.code == 0);
    AuditTrail parsed = audit_trail_from_json(nlohmann::json::parse(r.out));
    CHECK(parsed == induction_audit(Prime(13)));
}

TEST_CASE("endgame subcommand") {
    CliResult r = invoke({"endgame", "--k", "3", "--q", "3", "--out", "json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("contradiction") == true);
    CHECK(j.at("a") == "7");
    CHECK(j.at("b") == "26");

    r = invoke({"endgame", "--k", "2", "--q", "3"});
    CHECK(r.code == 1);
}

TEST_CASE("search emits JSON lines that re-parse to the producing report") {
    CliResult r = invoke({"search", "--a", "2", "--b", "3", "--kmax", "40", "--nmin", "2",
                          "--nmax", "20", "--mode", "brute", "--out", "json"});
    CHECK(r.code == 0);
    SearchReport parsed = report_from_jsonl(r.out);
    SearchReport direct = brute_force_search(EquationFamily(2, 3), 40, 2, 20);
    CHECK(parsed == direct);
    CHECK(parsed.solutions.empty());

    CliResult pruned = invoke({"search", "--kmax", "60", "--mode", "pruned", "--qset", "3,5",
                               "--out", "json"});
    CHECK(pruned.code == 0);
    SearchReport pruned_parsed = report_from_jsonl(pruned.out);
    SearchOptions opt;
    CHECK(pruned_parsed ==
          pruned_search(EquationFamily(2, 3), 60, {Prime(3), Prime(5)}, opt));
}

TEST_CASE("search solutions appear on stdout and in the summary") {
    CliResult r = invoke({"search", "--a", "3", "--b", "5", "--kmax", "20", "--nmin", "2",
                          "--nmax", "10", "--out", "json"});
    CHECK(r.code == 0);
    SearchReport parsed = report_from_jsonl(r.out);
    REQUIRE(parsed.solutions.size() == 1);
    CHECK(parsed.solutions[0].k == 1);
    CHECK(parsed.solutions[0].x == 2);
    CHECK(parsed.solutions[0].n == 3);
}

TEST_CASE("identical config gives byte-identical output for any worker count") {
    CliResult w1 = invoke({"search", "--kmax", "200", "--mode", "pruned", "--qset", "3,5,7",
                           "--workers", "1", "--out", "json"});
    CliResult w3 = invoke({"search", "--kmax", "200", "--mode", "pruned", "--qset", "3,5,7",
                           "--workers", "3", "--out", "json"});
    CHECK(w1.code == 0);
    CHECK(w1.out == w3.out);

    CliResult t1 = invoke({"search", "--kmax", "30", "--workers", "1"});
    CliResult t2 = invoke({"search", "--kmax", "30", "--workers", "2"});
    CHECK(t1.out == t2.out);
}

TEST_CASE("audit at the largest desk-scale q succeeds through the CLI") {
    CliResult r = invoke({"audit", "--q", "101", "--out", "json"});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
}
