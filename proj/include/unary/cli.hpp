#ifndef UNARY_CLI_HPP
#define UNARY_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace unary::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_relation_fails = 1,
    exit_input_error = 2,
    exit_guard = 3,
};

/// Runs one command line (without the program name). Reads "-" inputs from
/// `in` and writes "-" outputs to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace unary::cli

#endif  // UNARY_CLI_HPP
