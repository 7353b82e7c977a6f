#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cslbg {

//! Malformed input file (bad header, bad token, wrong column count).
class parse_error : public std::runtime_error {
  public:
    parse_error(const std::string& file, std::size_t line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what)
        , line_(line)
    {
    }

    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

//! Structurally valid input that violates a documented invariant.
class validation_error : public std::runtime_error {
  public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cslbg
