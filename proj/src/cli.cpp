#include "unary/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "unary/bench.hpp"
#include "unary/chrobak.hpp"
#include "unary/decision.hpp"
#include "unary/errors.hpp"
#include "unary/hardness.hpp"
#include "unary/io.hpp"
#include "unary/oracle.hpp"
#include "unary/regops.hpp"

namespace unary::cli {

namespace {

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;

    UafDocument load(const std::string& path) const { return parse_uaf(read_input(path, in)); }
    ChrobakNF load_chrobak(const std::string& path) const { return as_chrobak(load(path)); }

    void write(const std::string& path, const std::string& text) const {
        if (path == "-") {
            out << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f || !(f << text)) {
            throw ParseError("cannot write " + path);
        }
    }
};

// Witnesses are checked against membership before they are printed.
int report(const Io& io, const RelationVerdict& v, const std::function<bool(const Natural&)>& valid) {
    if (v.holds) {
        io.out << "holds\n";
        return exit_ok;
    }
    if (!v.witness || !valid(v.witness->value)) {
        throw std::logic_error("witness failed its membership check");
    }
    io.out << "witness " << to_decimal(v.witness->value) << "\n";
    return exit_relation_fails;
}

std::function<bool(const Natural&)> separates(const ChrobakNF& a, const ChrobakNF& b) {
    return [a, b](const Natural& l) { return a.accepts(l) && !b.accepts(l); };
}

std::function<bool(const Natural&)> differs(const ChrobakNF& a, const ChrobakNF& b) {
    return [a, b](const Natural& l) { return a.accepts(l) != b.accepts(l); };
}

std::function<bool(const Natural&)> rejected_by(const ChrobakNF& a) {
    return [a](const Natural& l) { return !a.accepts(l); };
}

// Least length accepted by `c`, if any.
std::optional<Natural> least_accepted(const ChrobakNF& c) {
    for (std::size_t i = 0; i < c.stem_length(); ++i) {
        if (c.stem()[i]) {
            return Natural(i);
        }
    }
    std::optional<std::size_t> best;
    for (const auto& cyc : c.cycles()) {
        for (std::size_t j = 0; j < cyc.size(); ++j) {
            if (cyc[j]) {
                best = std::min(best.value_or(j), j);
                break;
            }
        }
    }
    if (!best) {
        return std::nullopt;
    }
    return Natural(c.stem_length() + *best);
}

std::string join(const std::vector<std::uint64_t>& xs) {
    std::string s;
    for (auto x : xs) {
        s += (s.empty() ? "" : " ") + std::to_string(x);
    }
    return s;
}

// Groups as space separated lists of 1-based clause indices joined by commas.
std::string groups_text(const std::vector<std::vector<std::size_t>>& groups) {
    std::string s;
    for (const auto& g : groups) {
        std::string one;
        for (auto j : g) {
            one += (one.empty() ? "" : ",") + std::to_string(j + 1);
        }
        s += (s.empty() ? "" : " ") + (one.empty() ? std::string("-") : one);
    }
    return s;
}

struct Options {
    std::string input = "-";
    std::string second;
    std::string output = "-";
    std::string convert_to = "chrobak";
    std::string op_name;
    std::string relation = "subset";
    std::string mode = "thm2";
    std::size_t steps = default_ambiguity_steps;
    std::string formula;
    std::vector<std::string> binds;
    bool allow_concat = false;
    std::string gen_kind;
    std::string cnf;
    std::size_t m = 4;
    std::string prefix;
    std::string manifest;
    std::string oracle_kind;
    std::size_t cap = default_oracle_cap;
    std::string suite;
    std::string csv = "-";
    std::size_t jobs = 1;
    bool no_time = false;
    std::uint64_t seed = 1;
};

int do_convert(const Io& io, const Options& o) {
    const UafDocument doc = io.load(o.input);
    if (o.convert_to == "nfa") {
        io.write(o.output, print_uaf(as_nfa(doc)));
    } else if (o.convert_to == "chrobak") {
        io.write(o.output, print_uaf(as_chrobak(doc)));
    } else if (o.convert_to == "normalize") {
        io.write(o.output, print_uaf(normalize(as_chrobak(doc))));
    } else {
        io.write(o.output, print_uaf(determinize(as_chrobak(doc))));
    }
    return exit_ok;
}

int do_op(const Io& io, const Options& o) {
    const UafDocument a = io.load(o.input);
    const bool unary_op = o.op_name == "star";
    if (!unary_op && o.second.empty()) {
        throw ParseError("op " + o.op_name + " needs two input files");
    }
    if (unary_op) {
        io.write(o.output, print_uaf(star(as_nfa(a))));
        return exit_ok;
    }
    const UafDocument b = io.load(o.second);
    std::string text;
    if (o.op_name == "intersect") {
        text = print_uaf(intersect(as_chrobak(a), as_chrobak(b)));
    } else if (o.op_name == "union") {
        text = print_uaf(union_ufa(as_chrobak(a), as_chrobak(b)));
    } else if (o.op_name == "symdiff") {
        text = print_uaf(symdiff_ufa(as_chrobak(a), as_chrobak(b)));
    } else if (o.op_name == "concat") {
        text = print_uaf(concat_nfa(as_nfa(a), as_nfa(b)));
    } else if (o.op_name == "concat-bits") {
        text = print_uaf(concat_via_bits(as_chrobak(a), as_chrobak(b)));
    } else if (std::holds_alternative<UnaryNfa>(a) && std::holds_alternative<UnaryNfa>(b)) {
        text = print_uaf(disjoint_union(std::get<UnaryNfa>(a), std::get<UnaryNfa>(b)));
    } else {
        text = print_uaf(disjoint_union(as_chrobak(a), as_chrobak(b)));
    }
    io.write(o.output, text);
    return exit_ok;
}

int do_compare(const Io& io, const Options& o) {
    const ChrobakNF a = io.load_chrobak(o.input);
    const ChrobakNF b = io.load_chrobak(o.second);
    if (o.relation == "equal") {
        return report(io, nfa_equal(a, b), differs(a, b));
    }
    return report(io, nfa_subset(a, b), separates(a, b));
}

int do_universal(const Io& io, const Options& o) {
    const ChrobakNF c = io.load_chrobak(o.input);
    if (o.mode == "thm2") {
        return report(io, nfa_universal(c), rejected_by(c));
    }
    const auto mode = o.mode == "exact" ? UniversalMode::Exact : UniversalMode::Modular;
    RelationVerdict v;
    v.holds = ufa_universal(c, mode);
    if (!v.holds) {
        const auto least = least_accepted(complement_ufa(c));
        if (!least) {
            throw std::logic_error("non-universal automaton with an empty complement");
        }
        v.witness = WitnessLength{*least, std::nullopt};
    }
    return report(io, v, rejected_by(c));
}

int do_inclusion(const Io& io, const Options& o) {
    const ChrobakNF a = io.load_chrobak(o.input);
    const ChrobakNF b = io.load_chrobak(o.second);
    return report(io, ufa_inclusion(a, b), separates(a, b));
}

int do_ambiguity(const Io& io, const Options& o) {
    const UafDocument doc = io.load(o.input);
    AmbiguityReport r;
    std::function<bool(const Natural&)> check;
    if (const auto* c = std::get_if<ChrobakNF>(&doc)) {
        r = ambiguity_chrobak(*c);
    } else {
        r = ambiguity_nfa(std::get<UnaryNfa>(doc), o.steps);
    }
    switch (r.verdict) {
        case Ambiguity::Unambiguous:
            io.out << "unambiguous\n";
            return exit_ok;
        case Ambiguity::Ambiguous:
            io.out << "ambiguous\nwitness " << to_decimal(r.witness->value) << "\n";
            return exit_relation_fails;
        case Ambiguity::UnknownBeyondBound:
            break;
    }
    io.out << "unknown beyond " << r.bound_used.value_or(o.steps) << "\n";
    return exit_guard;
}

int do_eval(const Io& io, const Options& o) {
    std::map<std::string, ChrobakNF> bindings;
    for (const auto& b : o.binds) {
        const auto eq = b.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ParseError("--bind expects NAME=FILE, got '" + b + "'");
        }
        bindings[b.substr(0, eq)] = io.load_chrobak(b.substr(eq + 1));
    }
    const FormulaValue v = eval_formula(parse_formula(o.formula), bindings, {o.allow_concat});
    if (const auto* truth = std::get_if<bool>(&v)) {
        io.out << (*truth ? "true\n" : "false\n");
        return *truth ? exit_ok : exit_relation_fails;
    }
    io.write(o.output, print_uaf(std::get<ChrobakNF>(v)));
    return exit_ok;
}

int do_gen(const Io& io, const Options& o) {
    if (o.gen_kind == "concat-blowup") {
        if (o.prefix.empty()) {
            throw ParseError("gen concat-blowup needs --prefix");
        }
        const BlowupInstance inst = gen_concat_blowup(o.m);
        io.write(o.prefix + ".u.uaf", print_uaf(inst.u));
        io.write(o.prefix + ".h.uaf", print_uaf(inst.h));
        io.write(o.prefix + ".manifest",
                 print_manifest({{"modulus", to_decimal(inst.meta.expected_complement.modulus)},
                                 {"residue", to_decimal(inst.meta.expected_complement.residue)},
                                 {"primes", join(inst.meta.primes.primes)},
                                 {"k", std::to_string(inst.meta.k)}}));
        return exit_ok;
    }
    if (o.cnf.empty()) {
        throw ParseError("gen " + o.gen_kind + " needs --cnf");
    }
    const CnfInstance cnf = parse_dimacs(read_input(o.cnf, io.in));
    if (o.gen_kind == "prop1") {
        const auto [u, meta] = gen_universality_nfa(cnf);
        io.write(o.output, print_uaf(u));
        if (!o.manifest.empty()) {
            io.write(o.manifest, print_manifest({{"primes", join(meta.primes.primes)},
                                                 {"groups", groups_text(meta.clauses_of)}}));
        }
        return exit_ok;
    }
    if (o.prefix.empty()) {
        throw ParseError("gen formula needs --prefix");
    }
    const FormulaInstance inst = gen_formula_instance(cnf);
    io.write(o.prefix + ".h1.uaf", print_uaf(inst.h1));
    io.write(o.prefix + ".h2.uaf", print_uaf(inst.h2));
    io.write(o.prefix + ".k.uaf", print_uaf(inst.k));
    io.write(o.prefix + ".manifest",
             print_manifest({{"modulus", std::to_string(inst.meta.block_width)},
                             {"primes", join(inst.meta.primes.primes)},
                             {"groups", groups_text(inst.meta.groups)}}));
    return exit_ok;
}

int do_oracle(const Io& io, const Options& o) {
    const TrajectoryResult a = oracle_bits(io.load_chrobak(o.input), o.cap);
    if (o.oracle_kind == "bits") {
        if (!a.exact) {
            io.out << "inexact after " << a.bits.size() << "\n";
            return exit_guard;
        }
        io.out << "threshold " << a.threshold << "\nperiod " << a.period << "\nbits "
               << (a.bits.size() == 0 ? std::string("-") : a.bits.to_string()) << "\n";
        return exit_ok;
    }
    if (o.oracle_kind == "universal") {
        const RelationVerdict v = oracle_universal(a);
        return report(io, v, [&](const Natural& l) { return !a.accepts(to_size(l).value()); });
    }
    if (o.second.empty()) {
        throw ParseError("oracle " + o.oracle_kind + " needs two input files");
    }
    const TrajectoryResult b = oracle_bits(io.load_chrobak(o.second), o.cap);
    const Relation rel = o.oracle_kind == "equal" ? Relation::Equal : Relation::Subset;
    const RelationVerdict v = oracle_relation(rel, a, b);
    return report(io, v, [&](const Natural& l) {
        const std::size_t x = to_size(l).value();
        return rel == Relation::Equal ? a.accepts(x) != b.accepts(x) : a.accepts(x) && !b.accepts(x);
    });
}

int do_bench(const Io& io, const Options& o) {
    io.write(o.csv, to_csv(run_suite(o.suite, o.jobs, o.seed), !o.no_time));
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    Options o;
    CLI::App app{"Unary finite automata toolkit", "unary"};
    app.require_subcommand(1);

    auto* convert = app.add_subcommand("convert", "Convert between nfa and chrobak forms");
    convert->add_option("input", o.input, "UAF file or -")->required();
    convert->add_option("--to", o.convert_to)
        ->check(CLI::IsMember({"nfa", "chrobak", "normalize", "determinize"}));
    convert->add_option("-o,--output", o.output);

    auto* complement = app.add_subcommand("complement", "Complement of an unambiguous automaton");
    complement->add_option("input", o.input)->required();
    complement->add_option("-o,--output", o.output);

    auto* op = app.add_subcommand("op", "Regular operation");
    op->add_option("name", o.op_name)
        ->required()
        ->check(CLI::IsMember(
            {"intersect", "union", "symdiff", "star", "concat", "concat-bits", "disjoint-union"}));
    op->add_option("input", o.input)->required();
    op->add_option("second", o.second);
    op->add_option("-o,--output", o.output);

    auto* compare = app.add_subcommand("compare", "Subset or equality of two automata");
    compare->add_option("--relation", o.relation)->check(CLI::IsMember({"subset", "equal"}));
    compare->add_option("input", o.input)->required();
    compare->add_option("second", o.second)->required();

    auto* universal = app.add_subcommand("universal", "Universality");
    universal->add_option("input", o.input)->required();
    universal->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "modular", "thm2"}));

    auto* inclusion = app.add_subcommand("inclusion", "Inclusion into an unambiguous automaton");
    inclusion->add_option("input", o.input)->required();
    inclusion->add_option("second", o.second)->required();

    auto* ambiguity = app.add_subcommand("ambiguity", "Ambiguity test");
    ambiguity->add_option("input", o.input)->required();
    ambiguity->add_option("--steps", o.steps)->check(CLI::PositiveNumber);

    auto* eval = app.add_subcommand("eval", "Evaluate a formula over bound automata");
    eval->add_option("formula", o.formula)->required();
    eval->add_option("--bind", o.binds, "NAME=FILE");
    eval->add_flag("--allow-concat", o.allow_concat);
    eval->add_option("-o,--output", o.output);

    auto* gen = app.add_subcommand("gen", "Hardness instance generators");
    gen->add_option("kind", o.gen_kind)
        ->required()
        ->check(CLI::IsMember({"prop1", "formula", "concat-blowup"}));
    gen->add_option("--cnf", o.cnf, "DIMACS file or -");
    gen->add_option("--m", o.m);
    gen->add_option("--prefix", o.prefix, "Output file prefix");
    gen->add_option("--manifest", o.manifest);
    gen->add_option("-o,--output", o.output);

    auto* oracle = app.add_subcommand("oracle", "Brute-force reference checks");
    oracle->add_option("kind", o.oracle_kind)
        ->required()
        ->check(CLI::IsMember({"subset", "equal", "universal", "bits"}));
    oracle->add_option("input", o.input)->required();
    oracle->add_option("second", o.second);
    oracle->add_option("--cap", o.cap)->check(CLI::PositiveNumber);

    auto* bench = app.add_subcommand("bench", "Measurement suites");
    bench->add_option("--suite", o.suite)->required()->check(CLI::IsMember(suite_names()));
    bench->add_option("--csv", o.csv);
    bench->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
    bench->add_flag("--no-time", o.no_time);
    bench->add_option("--seed", o.seed);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_input_error;
    }

    const Io io{in, out, err};
    const std::map<CLI::App*, std::function<int()>> commands = {
        {convert, [&] { return do_convert(io, o); }},
        {complement,
         [&] {
             io.write(o.output, print_uaf(complement_ufa(io.load_chrobak(o.input))));
             return static_cast<int>(exit_ok);
         }},
        {op, [&] { return do_op(io, o); }},
        {compare, [&] { return do_compare(io, o); }},
        {universal, [&] { return do_universal(io, o); }},
        {inclusion, [&] { return do_inclusion(io, o); }},
        {ambiguity, [&] { return do_ambiguity(io, o); }},
        {eval, [&] { return do_eval(io, o); }},
        {gen, [&] { return do_gen(io, o); }},
        {oracle, [&] { return do_oracle(io, o); }},
        {bench, [&] { return do_bench(io, o); }},
    };
    try {
        for (const auto& [sub, command] : commands) {
            if (sub->parsed()) {
                return command();
            }
        }
        return exit_input_error;
    } catch (const AmbiguousInput& e) {
        err << "error: " << e.what() << " (two runs on length " << e.witness() << ")\n";
        return exit_input_error;
    } catch (const GuardExceeded& e) {
        err << "guard exceeded: " << e.what() << "\n";
        return exit_guard;
    } catch (const Inexact& e) {
        err << "inexact: " << e.what() << "\n";
        return exit_guard;
    } catch (const TooLarge& e) {
        err << "too large: " << e.what() << "\n";
        return exit_guard;
    } catch (const RecursionOverflow& e) {
        err << "recursion overflow: " << e.what() << "\n";
        return exit_guard;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_input_error;
    }
}

}  // namespace unary::cli
