#include "unary/io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "unary/chrobak.hpp"
#include "unary/errors.hpp"

namespace unary {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> words;
};

std::vector<Line> tokenize_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        pos = end + 1;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        std::istringstream in{std::string(raw)};
        std::vector<std::string> words{std::istream_iterator<std::string>(in),
                                       std::istream_iterator<std::string>()};
        if (!words.empty()) {
            out.push_back({number, std::move(words)});
        }
        if (end == text.size()) {
            break;
        }
    }
    return out;
}

[[noreturn]] void fail(const Line& line, const std::string& what) {
    throw ParseError("line " + std::to_string(line.number) + ": " + what);
}

std::uint64_t number_of(const Line& line, const std::string& word) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
    if (ec != std::errc{} || ptr != word.data() + word.size()) {
        fail(line, "expected a natural number, got '" + word + "'");
    }
    return v;
}

Bits bits_of(const Line& line, const std::string& word) {
    if (word.find_first_not_of("01") != std::string::npos) {
        fail(line, "expected a bit string, got '" + word + "'");
    }
    return Bits::from_string(word);
}

std::vector<State> id_list(const Line& line, std::size_t states) {
    std::vector<State> ids;
    for (std::size_t i = 1; i < line.words.size(); ++i) {
        const auto v = number_of(line, line.words[i]);
        if (v >= states) {
            fail(line, "state id " + line.words[i] + " out of range");
        }
        ids.push_back(static_cast<State>(v));
    }
    return ids;
}

UnaryNfa parse_nfa_body(const std::vector<Line>& lines) {
    if (lines.size() < 3 || lines[2].words[0] != "states" || lines[2].words.size() != 2) {
        throw ParseError("nfa document needs a 'states N' line after the kind");
    }
    const auto states = number_of(lines[2], lines[2].words[1]);
    std::vector<State> starts;
    std::vector<State> accepts;
    std::vector<std::pair<State, State>> edges;
    bool seen_start = false;
    bool seen_accept = false;
    for (std::size_t i = 3; i < lines.size(); ++i) {
        const auto& line = lines[i];
        const auto& key = line.words[0];
        if (key == "start") {
            if (seen_start) {
                fail(line, "duplicate start line");
            }
            seen_start = true;
            starts = id_list(line, states);
        } else if (key == "accept") {
            if (seen_accept) {
                fail(line, "duplicate accept line");
            }
            seen_accept = true;
            accepts = id_list(line, states);
        } else if (key == "edge") {
            if (line.words.size() != 3) {
                fail(line, "edge needs two state ids");
            }
            const auto ids = id_list(line, states);
            edges.emplace_back(ids[0], ids[1]);
        } else {
            fail(line, "unknown key '" + key + "'");
        }
    }
    return UnaryNfa::from_edges(states, std::move(starts), std::move(accepts), edges);
}

ChrobakNF parse_chrobak_body(const std::vector<Line>& lines) {
    if (lines.size() < 3 || lines[2].words[0] != "stem" || lines[2].words.size() != 2) {
        throw ParseError("chrobak document needs a 'stem' line after the kind");
    }
    const auto& stem_word = lines[2].words[1];
    Bits stem = stem_word == "-" ? Bits{} : bits_of(lines[2], stem_word);
    std::vector<Bits> cycles;
    for (std::size_t i = 3; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.words[0] != "cycle" || line.words.size() != 2) {
            fail(line, "expected 'cycle <bits>'");
        }
        cycles.push_back(bits_of(line, line.words[1]));
    }
    return ChrobakNF(std::move(stem), std::move(cycles));
}

void append_ids(std::string& out, const char* key, const std::vector<State>& ids) {
    out += key;
    for (auto id : ids) {
        out += ' ';
        out += std::to_string(id);
    }
    out += '\n';
}

}  // namespace

UafDocument parse_uaf(std::string_view text) {
    const auto lines = tokenize_lines(text);
    if (lines.empty() || lines[0].words != std::vector<std::string>{"uaf", "1"}) {
        throw ParseError("missing 'uaf 1' header");
    }
    if (lines.size() < 2 || lines[1].words.size() != 2 || lines[1].words[0] != "kind") {
        throw ParseError("missing 'kind' line");
    }
    const auto& kind = lines[1].words[1];
    if (kind == "nfa") {
        return parse_nfa_body(lines);
    }
    if (kind == "chrobak") {
        return parse_chrobak_body(lines);
    }
    fail(lines[1], "unknown kind '" + kind + "'");
}

std::string print_uaf(const UnaryNfa& a) {
    std::string out = "uaf 1\nkind nfa\nstates " + std::to_string(a.num_states()) + "\n";
    append_ids(out, "start", a.starts());
    append_ids(out, "accept", a.accepts());
    for (std::size_t u = 0; u < a.num_states(); ++u) {
        for (auto v : a.succ(static_cast<State>(u))) {
            out += "edge " + std::to_string(u) + " " + std::to_string(v) + "\n";
        }
    }
    return out;
}

std::string print_uaf(const ChrobakNF& c) {
    std::string out = "uaf 1\nkind chrobak\nstem ";
    out += c.stem().size() == 0 ? "-" : c.stem().to_string();
    out += '\n';
    for (const auto& cyc : c.cycles()) {
        out += "cycle " + cyc.to_string() + "\n";
    }
    return out;
}

std::string print_uaf(const UafDocument& doc) {
    return std::visit([](const auto& x) { return print_uaf(x); }, doc);
}

ChrobakNF as_chrobak(const UafDocument& doc) {
    if (const auto* c = std::get_if<ChrobakNF>(&doc)) {
        return *c;
    }
    return nfa_to_chrobak(std::get<UnaryNfa>(doc));
}

UnaryNfa as_nfa(const UafDocument& doc) {
    if (const auto* a = std::get_if<UnaryNfa>(&doc)) {
        return *a;
    }
    return chrobak_to_nfa(std::get<ChrobakNF>(doc));
}

CnfInstance parse_dimacs(std::string_view text) {
    CnfInstance c;
    bool header = false;
    std::size_t declared = 0;
    std::vector<int> current;
    for (const auto& line : tokenize_lines(text)) {
        if (line.words[0][0] == 'c') {
            continue;
        }
        if (line.words[0] == "p") {
            if (header || line.words.size() != 4 || line.words[1] != "cnf") {
                fail(line, "expected a single 'p cnf V C' header");
            }
            header = true;
            c.num_vars = number_of(line, line.words[2]);
            declared = number_of(line, line.words[3]);
            continue;
        }
        if (!header) {
            fail(line, "clause before the 'p cnf' header");
        }
        for (const auto& w : line.words) {
            int lit = 0;
            const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), lit);
            if (ec != std::errc{} || ptr != w.data() + w.size()) {
                fail(line, "expected a literal, got '" + w + "'");
            }
            if (lit == 0) {
                c.clauses.push_back(std::move(current));
                current.clear();
            } else {
                current.push_back(lit);
            }
        }
    }
    if (!header) {
        throw ParseError("missing 'p cnf' header");
    }
    if (!current.empty()) {
        throw ParseError("last clause is not 0-terminated");
    }
    if (c.clauses.size() != declared) {
        throw ParseError("header declares " + std::to_string(declared) + " clauses, found " +
                         std::to_string(c.clauses.size()));
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return c;
}

std::string print_dimacs(const CnfInstance& c) {
    std::string out =
        "p cnf " + std::to_string(c.num_vars) + " " + std::to_string(c.clauses.size()) + "\n";
    for (const auto& clause : c.clauses) {
        for (int lit : clause) {
            out += std::to_string(lit) + " ";
        }
        out += "0\n";
    }
    return out;
}

std::string print_manifest(const Manifest& m) {
    std::string out;
    for (const auto& [key, value] : m) {
        out += key + " " + value + "\n";
    }
    return out;
}

std::string read_input(const std::string& path, std::istream& stdin_stream) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(stdin_stream), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read " + path);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace unary
