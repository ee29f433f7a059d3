#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "unary/cli.hpp"
#include "unary/errors.hpp"
#include "unary/io.hpp"

using namespace unary;
using namespace unary::test;
namespace fs = std::filesystem;

namespace {

const fs::path fixtures = UNARY_FIXTURE_DIR;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string fx(const char* name) { return (fixtures / name).string(); }

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out;
    std::ostringstream err;
    const int code = unary::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "unary-cli-tests";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("UAF round trip on every fixture") {
    std::size_t seen = 0;
    for (const auto& entry : fs::directory_iterator(fixtures)) {
        if (entry.path().extension() != ".uaf") {
            continue;
        }
        ++seen;
        const std::string text = slurp(entry.path());
        INFO(entry.path().filename().string());
        const UafDocument doc = parse_uaf(text);
        CHECK(print_uaf(doc) == text);
        CHECK(parse_uaf(print_uaf(doc)) == doc);
    }
    CHECK(seen >= 8);
}

TEST_CASE("UAF parsing details") {
    const UafDocument c = parse_uaf(slurp(fixtures / "commented.uaf.in"));
    CHECK(std::get<ChrobakNF>(c) == ChrobakNF::parse("01", {"1"}));
    const UafDocument g = parse_uaf(slurp(fixtures / "two_cycles.uaf"));
    CHECK(std::get<UnaryNfa>(g).num_states() == 7);
    CHECK(as_chrobak(parse_uaf(slurp(fixtures / "evens.uaf"))) == evens());
    CHECK(as_nfa(parse_uaf(slurp(fixtures / "evens.uaf"))).num_states() == 2);
    CHECK_THROWS_AS(parse_uaf(""), ParseError);
    CHECK_THROWS_AS(parse_uaf("uaf 2\nkind nfa\n"), ParseError);
    CHECK_THROWS_AS(parse_uaf("uaf 1\nkind dfa\n"), ParseError);
    CHECK_THROWS_AS(parse_uaf("uaf 1\nkind nfa\nstates 2\nedge 0 2\n"), ParseError);
    CHECK_THROWS_AS(parse_uaf("uaf 1\nkind nfa\nstates 2\nbogus 1\n"), ParseError);
    CHECK_THROWS_AS(parse_uaf("uaf 1\nkind chrobak\nstem 012\n"), ParseError);
    CHECK_THROWS_AS(parse_uaf("uaf 1\nkind chrobak\nstem -\ncycle\n"), ParseError);
}

TEST_CASE("DIMACS") {
    const CnfInstance c = parse_dimacs(slurp(fixtures / "sat.cnf"));
    CHECK(c.num_vars == 3);
    CHECK(c.clauses == std::vector<std::vector<int>>{{1, 2}, {-2, 3}, {-1, -3}});
    CHECK(parse_dimacs(print_dimacs(c)) == c);
    CHECK_THROWS_AS(parse_dimacs("1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n1\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 2\n1 0\n"), ParseError);
    CHECK(print_manifest({{"modulus", "175"}, {"primes", "5 7"}}) == "modulus 175\nprimes 5 7\n");
}

TEST_CASE("cli examples") {
    CHECK(run_cli({"compare", "--relation", "subset", fx("evens.uaf"), fx("all.uaf")}).code == 0);
    const Result u = run_cli({"universal", fx("odds.uaf")});
    CHECK(u.code == 1);
    CHECK(u.out == "witness 0\n");
    const Result p = run_cli({"gen", "prop1", "--cnf", fx("unsat.cnf")});
    REQUIRE(p.code == 0);
    CHECK(run_cli({"universal", "-"}, p.out).code == 0);
    const Result s = run_cli({"gen", "prop1", "--cnf", fx("sat.cnf")});
    CHECK(run_cli({"universal", "-"}, s.out).code == 1);
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"universal", "/nonexistent/file.uaf"}).code == 2);
    CHECK(run_cli({"complement", fx("ambiguous.uaf")}).code == 2);
    CHECK(run_cli({"universal", "--mode", "exact", fx("ambiguous.uaf")}).code == 2);
    CHECK(run_cli({"oracle", "bits", fx("mixed.uaf"), "--cap", "3"}).code == 3);
    CHECK(run_cli({"ambiguity", fx("twin_loops.uaf"), "--steps", "1"}).code != 0);
    CHECK(run_cli({"eval", "E . E = E", "--bind", "E=" + fx("evens.uaf")}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("cli commands") {
    const Result conv = run_cli({"convert", fx("two_cycles.uaf")});
    REQUIRE(conv.code == 0);
    const ChrobakNF c = std::get<ChrobakNF>(parse_uaf(conv.out));
    CHECK(oracle_equal(c, std::get<UnaryNfa>(parse_uaf(slurp(fixtures / "two_cycles.uaf")))));
    CHECK(run_cli({"convert", "--to", "nfa", fx("evens.uaf")}).out ==
          "uaf 1\nkind nfa\nstates 2\nstart 0\naccept 0\nedge 0 1\nedge 1 0\n");
    CHECK(run_cli({"convert", "--to", "determinize", fx("mixed.uaf")}).code == 0);

    CHECK(run_cli({"complement", fx("evens.uaf")}).out == slurp(fixtures / "odds.uaf"));
    const Result un = run_cli({"op", "union", fx("evens.uaf"), fx("odds.uaf")});
    CHECK(oracle_equal(std::get<ChrobakNF>(parse_uaf(un.out)), all_words()));
    CHECK(run_cli({"op", "intersect", fx("evens.uaf"), fx("odds.uaf")}).out ==
          slurp(fixtures / "empty.uaf"));
    CHECK(run_cli({"op", "star", fx("length_two.uaf")}).out == slurp(fixtures / "evens.uaf"));
    CHECK(run_cli({"op", "concat-bits", fx("evens.uaf"), fx("odds.uaf")}).out ==
          slurp(fixtures / "odds.uaf"));
    const Result cat = run_cli({"op", "concat", fx("evens.uaf"), fx("length_two.uaf")});
    CHECK(std::get<UnaryNfa>(parse_uaf(cat.out)).num_states() == 5);
    const Result du = run_cli({"op", "disjoint-union", fx("evens.uaf"), fx("odds.uaf")});
    CHECK(oracle_equal(std::get<ChrobakNF>(parse_uaf(du.out)), all_words()));
    CHECK(run_cli({"op", "symdiff", fx("evens.uaf"), fx("evens.uaf")}).out ==
          slurp(fixtures / "empty.uaf"));
    CHECK(run_cli({"op", "union", fx("evens.uaf")}).code == 2);

    const Result eq = run_cli({"compare", "--relation", "equal", fx("evens.uaf"), fx("odds.uaf")});
    CHECK(eq.code == 1);
    CHECK(eq.out == "witness 0\n");
    CHECK(run_cli({"universal", "--mode", "modular", fx("all.uaf")}).code == 0);
    CHECK(run_cli({"universal", "--mode", "exact", fx("mixed.uaf")}).out == "witness 0\n");
    CHECK(run_cli({"inclusion", fx("evens.uaf"), fx("all.uaf")}).code == 0);
    const Result inc = run_cli({"inclusion", fx("all.uaf"), fx("evens.uaf")});
    CHECK(inc.code == 1);
    CHECK(inc.out == "witness 1\n");

    CHECK(run_cli({"ambiguity", fx("evens.uaf")}).out == "unambiguous\n");
    const Result amb = run_cli({"ambiguity", fx("ambiguous.uaf")});
    CHECK(amb.code == 1);
    CHECK(amb.out == "ambiguous\nwitness 2\n");
    const Result twin = run_cli({"ambiguity", fx("two_cycles.uaf")});
    CHECK(twin.out == "ambiguous\nwitness 2\n");

    const Result ev = run_cli({"eval", "E | O = ALL", "--bind", "E=" + fx("evens.uaf"), "--bind",
                           "O=" + fx("odds.uaf")});
    CHECK(ev.code == 0);
    CHECK(ev.out == "true\n");
    CHECK(run_cli({"eval", "E . O", "--allow-concat", "--bind", "E=" + fx("evens.uaf"), "--bind",
               "O=" + fx("odds.uaf")})
              .out == slurp(fixtures / "odds.uaf"));

    CHECK(run_cli({"oracle", "bits", fx("evens.uaf")}).out == "threshold 0\nperiod 2\nbits 10\n");
    CHECK(run_cli({"oracle", "subset", fx("evens.uaf"), fx("all.uaf")}).code == 0);
    CHECK(run_cli({"oracle", "universal", fx("odds.uaf")}).out == "witness 0\n");
    CHECK(run_cli({"oracle", "equal", fx("evens.uaf"), fx("odds.uaf")}).code == 1);
}

TEST_CASE("cli generators write files") {
    const fs::path dir = scratch();
    const std::string prefix = (dir / "blowup").string();
    REQUIRE(run_cli({"gen", "concat-blowup", "--m", "4", "--prefix", prefix}).code == 0);
    CHECK(slurp(prefix + ".manifest") == "modulus 175\nresidue 173\nprimes 5 7\nk 2\n");
    const Result concat = run_cli({"op", "concat-bits", prefix + ".u.uaf", prefix + ".h.uaf"});
    const Result missing = run_cli({"complement", "-"}, concat.out);
    const ChrobakNF k = std::get<ChrobakNF>(parse_uaf(missing.out));
    REQUIRE(k.cycles().size() == 1);
    CHECK(k.cycles()[0].size() == 175);
    CHECK(k.cycles()[0].count() == 1);
    CHECK(k.cycles()[0][173]);

    const std::string fprefix = (dir / "formula").string();
    REQUIRE(run_cli({"gen", "formula", "--cnf", fx("unsat.cnf"), "--prefix", fprefix}).code == 0);
    const Result truth = run_cli({"eval", "(H1 & H2) . K = ALL", "--allow-concat", "--bind",
                              "H1=" + fprefix + ".h1.uaf", "--bind", "H2=" + fprefix + ".h2.uaf",
                              "--bind", "K=" + fprefix + ".k.uaf"});
    CHECK(truth.out == "true\n");

    const std::string manifest = (dir / "prop1.manifest").string();
    REQUIRE(run_cli({"gen", "prop1", "--cnf", "-", "--manifest", manifest}, slurp(fixtures / "unsat.cnf"))
                .code == 0);
    CHECK(slurp(manifest) == "primes 11 13\ngroups 1 2\n");
    CHECK(run_cli({"gen", "formula", "--cnf", fx("unsat.cnf")}).code == 2);
}

TEST_CASE("cli bench is deterministic without timing") {
    const Result a = run_cli({"bench", "--suite", "star-bound", "--no-time", "--jobs", "3"});
    const Result b = run_cli({"bench", "--suite", "star-bound", "--no-time"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("case,algorithm,n_in,n_out,time_ms,verdict\n", 0) == 0);
    CHECK(run_cli({"bench", "--suite", "nope"}).code == 2);
}
