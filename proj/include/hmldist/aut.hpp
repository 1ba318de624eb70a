// Aldebaran (.aut) reader/writer.
//
// Format: a header `des (initial, transitions, states)` followed by one
// transition per line, `(src, label, dst)`. Labels are quoted when they
// contain anything besides alphanumeric characters.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hmldist/lts.hpp"

namespace hmldist {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

Lts parse_aut(std::string_view text);
std::string write_aut(const Lts& lts);

}  // namespace hmldist
