#include <cctype>
#include <string>
#include <utility>

#include "unary/chrobak.hpp"
#include "unary/decision.hpp"
#include "unary/errors.hpp"
#include "unary/regops.hpp"

namespace unary {

namespace {

using Kind = FormulaNode::Kind;

enum class Tok {
    Ident,
    LParen,
    RParen,
    Union,
    Inter,
    Minus,
    SymDiff,
    Dot,
    StarPostfix,
    Tilde,
    Eq,
    Neq,
    Subset,
    AndOp,
    OrOp,
    NotOp,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

std::vector<Token> tokenize(std::string_view s) {
    // Multi-byte spellings first so that prefixes do not shadow them.
    static const std::pair<std::string_view, Tok> symbols[] = {
        {"∪", Tok::Union},  {"∩", Tok::Inter},   {"⊆", Tok::Subset},
        {"≠", Tok::Neq},    {"·", Tok::Dot},     {"Δ", Tok::SymDiff},
        {"△", Tok::SymDiff}, {"¬", Tok::NotOp},  {"&&", Tok::AndOp},
        {"||", Tok::OrOp},       {"==", Tok::Eq},          {"!=", Tok::Neq},
        {"<=", Tok::Subset},     {"(", Tok::LParen},       {")", Tok::RParen},
        {"|", Tok::Union},       {"&", Tok::Inter},        {"-", Tok::Minus},
        {"\\", Tok::Minus},      {"^", Tok::SymDiff},      {".", Tok::Dot},
        {"*", Tok::StarPostfix}, {"~", Tok::Tilde},        {"=", Tok::Eq},
        {"!", Tok::NotOp},
    };
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (std::isalnum(c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) {
                ++j;
            }
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
            i = j;
            continue;
        }
        bool matched = false;
        for (const auto& [text, kind] : symbols) {
            if (s.substr(i, text.size()) == text) {
                out.push_back({kind, std::string(text), i});
                i += text.size();
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw ParseError("formula: unexpected character at offset " + std::to_string(i));
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

Formula node(Kind kind, std::vector<Formula> args = {}, std::string name = {}) {
    return std::make_shared<const FormulaNode>(FormulaNode{kind, std::move(name), std::move(args)});
}

// Precedence, loosest first: or, and, not, comparison, union-like,
// intersection, concatenation, prefix/postfix operators.
class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Formula parse() {
        Formula f = disjunction();
        expect(Tok::End, "end of formula");
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    bool accept(Tok k) {
        if (peek().kind == k) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool accept_word(std::string_view w) {
        if (peek().kind == Tok::Ident && peek().text == w) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(Tok k, const char* what) {
        if (!accept(k)) {
            throw ParseError(std::string("formula: expected ") + what + " at offset " +
                             std::to_string(peek().offset));
        }
    }

    Formula disjunction() {
        Formula f = conjunction();
        while (accept(Tok::OrOp) || accept_word("or")) {
            f = node(Kind::Or, {f, conjunction()});
        }
        return f;
    }
    Formula conjunction() {
        Formula f = negation();
        while (accept(Tok::AndOp) || accept_word("and")) {
            f = node(Kind::And, {f, negation()});
        }
        return f;
    }
    Formula negation() {
        if (accept(Tok::NotOp) || accept_word("not")) {
            return node(Kind::Not, {negation()});
        }
        return comparison();
    }
    Formula comparison() {
        Formula lhs = union_expr();
        if (accept(Tok::Eq)) {
            return node(Kind::Equal, {lhs, union_expr()});
        }
        if (accept(Tok::Neq)) {
            return node(Kind::NotEqual, {lhs, union_expr()});
        }
        if (accept(Tok::Subset)) {
            return node(Kind::Subset, {lhs, union_expr()});
        }
        return lhs;
    }
    Formula union_expr() {
        Formula f = intersection();
        for (;;) {
            if (accept(Tok::Union)) {
                f = node(Kind::Union, {f, intersection()});
            } else if (accept(Tok::Minus)) {
                f = node(Kind::Difference, {f, intersection()});
            } else if (accept(Tok::SymDiff)) {
                f = node(Kind::SymDiff, {f, intersection()});
            } else {
                return f;
            }
        }
    }
    Formula intersection() {
        Formula f = concatenation();
        while (accept(Tok::Inter)) {
            f = node(Kind::Intersection, {f, concatenation()});
        }
        return f;
    }
    Formula concatenation() {
        Formula f = postfix();
        while (accept(Tok::Dot)) {
            f = node(Kind::Concat, {f, postfix()});
        }
        return f;
    }
    Formula postfix() {
        Formula f = prefix();
        while (accept(Tok::StarPostfix)) {
            f = node(Kind::Star, {f});
        }
        return f;
    }
    Formula prefix() {
        if (accept(Tok::Tilde)) {
            return node(Kind::Complement, {prefix()});
        }
        return atom();
    }
    Formula call(Kind kind) {
        expect(Tok::LParen, "'('");
        Formula inner = disjunction();
        expect(Tok::RParen, "')'");
        return node(kind, {inner});
    }
    Formula atom() {
        if (accept(Tok::LParen)) {
            Formula f = disjunction();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (peek().kind != Tok::Ident) {
            throw ParseError("formula: expected operand at offset " + std::to_string(peek().offset));
        }
        const std::string word = toks_[pos_++].text;
        const bool is_call = peek().kind == Tok::LParen;
        if (is_call && word == "complement") {
            return call(Kind::Complement);
        }
        if (is_call && word == "star") {
            return call(Kind::Star);
        }
        if (is_call && word == "universal") {
            return call(Kind::IsUniversal);
        }
        if (is_call && word == "empty") {
            return call(Kind::IsEmpty);
        }
        if (word == "ALL") {
            return node(Kind::All);
        }
        if (word == "EMPTY") {
            return node(Kind::Empty);
        }
        return node(Kind::Name, {}, word);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

class Evaluator {
public:
    Evaluator(const std::map<std::string, ChrobakNF>& bindings, EvalOptions options)
        : bindings_(bindings), options_(options) {}

    FormulaValue eval(const Formula& f) {
        switch (f->kind) {
            case Kind::Equal:
                return equal(lang(f->args[0]), lang(f->args[1]));
            case Kind::NotEqual:
                return !equal(lang(f->args[0]), lang(f->args[1]));
            case Kind::Subset:
                return subset(lang(f->args[0]), lang(f->args[1]));
            case Kind::IsUniversal:
                return universal(lang(f->args[0]));
            case Kind::IsEmpty: {
                const ChrobakNF c = lang(f->args[0]);
                return c.stem().none() && normalize(c).cycles().empty();
            }
            case Kind::And:
                return boolean(f->args[0]) && boolean(f->args[1]);
            case Kind::Or:
                return boolean(f->args[0]) || boolean(f->args[1]);
            case Kind::Not:
                return !boolean(f->args[0]);
            default:
                return lang(f);
        }
    }

private:
    bool boolean(const Formula& f) {
        FormulaValue v = eval(f);
        if (!std::holds_alternative<bool>(v)) {
            throw ParseError("formula: expected a comparison, got a language");
        }
        return std::get<bool>(v);
    }

    ChrobakNF lang(const Formula& f) {
        switch (f->kind) {
            case Kind::Name: {
                auto it = bindings_.find(f->name);
                if (it == bindings_.end()) {
                    throw ParseError("formula: unbound name " + f->name);
                }
                return it->second;
            }
            case Kind::All:
                return ChrobakNF::parse("", {"1"});
            case Kind::Empty:
                return ChrobakNF{};
            case Kind::Complement:
                return complement_ufa(lang(f->args[0]));
            case Kind::Star:
                return star(chrobak_to_nfa(lang(f->args[0])));
            case Kind::Union:
                return union_ufa(lang(f->args[0]), lang(f->args[1]));
            case Kind::Intersection:
                return intersect(lang(f->args[0]), lang(f->args[1]));
            case Kind::Difference:
                return intersect(lang(f->args[0]), complement_ufa(lang(f->args[1])));
            case Kind::SymDiff:
                return symdiff_ufa(lang(f->args[0]), lang(f->args[1]));
            case Kind::Concat:
                if (!options_.allow_concat) {
                    throw ConcatDisallowed("concatenation needs the allow-concat flag");
                }
                return concat_via_bits(lang(f->args[0]), lang(f->args[1]));
            default:
                throw ParseError("formula: expected a language, got a comparison");
        }
    }

    // The density test and the strided inclusion check need an unambiguous
    // right operand; otherwise fall back to the prime-basis comparison.
    static bool subset(const ChrobakNF& a, const ChrobakNF& b) {
        if (is_unambiguous(b)) {
            return ufa_inclusion(a, b).holds;
        }
        return nfa_subset(a, b).holds;
    }
    static bool equal(const ChrobakNF& a, const ChrobakNF& b) { return subset(a, b) && subset(b, a); }
    static bool universal(const ChrobakNF& c) {
        if (is_unambiguous(c)) {
            return ufa_universal(c);
        }
        return nfa_universal(c).holds;
    }

    const std::map<std::string, ChrobakNF>& bindings_;
    EvalOptions options_;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).parse(); }

FormulaValue eval_formula(const Formula& f, const std::map<std::string, ChrobakNF>& bindings,
                          EvalOptions options) {
    return Evaluator(bindings, options).eval(f);
}

}  // namespace unary
