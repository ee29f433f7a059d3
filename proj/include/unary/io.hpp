#ifndef UNARY_IO_HPP
#define UNARY_IO_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "unary/automaton.hpp"
#include "unary/cnf.hpp"

namespace unary {

/// A parsed UAF v1 document.
using UafDocument = std::variant<UnaryNfa, ChrobakNF>;

/// Reads UAF v1 text:
///
///     uaf 1
///     kind nfa            | kind chrobak
///     states N            | stem 0110   (or "-" for the empty stem)
///     start i j ...       | cycle 10    (zero or more)
///     accept i j ...
///     edge u v            (one per edge)
///
/// Blank lines and text after '#' are ignored. Throws ParseError.
UafDocument parse_uaf(std::string_view text);

/// Canonical UAF text; parse_uaf(print_uaf(x)) == x.
std::string print_uaf(const UnaryNfa& a);
std::string print_uaf(const ChrobakNF& c);
std::string print_uaf(const UafDocument& doc);

/// The document as a Chrobak form (an nfa document is converted).
ChrobakNF as_chrobak(const UafDocument& doc);
/// The document as a graph (a chrobak document is expanded).
UnaryNfa as_nfa(const UafDocument& doc);

/// DIMACS CNF: comment lines start with 'c', one "p cnf V C" header, clauses
/// are 0-terminated and may span lines. Throws ParseError.
CnfInstance parse_dimacs(std::string_view text);
std::string print_dimacs(const CnfInstance& c);

/// Generator side output: one "key value" line per entry.
using Manifest = std::vector<std::pair<std::string, std::string>>;
std::string print_manifest(const Manifest& m);

/// Reads a whole file, or stdin for "-". Throws ParseError when unreadable.
std::string read_input(const std::string& path, std::istream& stdin_stream);

}  // namespace unary

#endif  // UNARY_IO_HPP
