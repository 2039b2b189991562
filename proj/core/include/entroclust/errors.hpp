#pragma once

#include <stdexcept>
#include <string>

namespace entroclust {

// Thrown when a theoretical result is evaluated outside its hypotheses
// (e.g. ||a|| < 2R). Distinct from std::domain_error, which signals bad
// input, so callers can tell "theory does not apply" from "garbage in".
class hypothesis_error : public std::runtime_error {
public:
    explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

// Dataset file parsing failure; carries the offending position.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                             std::to_string(column)),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace entroclust
