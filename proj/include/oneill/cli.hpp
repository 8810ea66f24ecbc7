// Command-line front end of oneill_lab.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "oneill/verifier.hpp"

namespace oneill {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown for --help; what() is the help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// args excludes the program name.
RunConfig parse_command_line(const std::vector<std::string>& args);

// Parses, runs and writes the report; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oneill
