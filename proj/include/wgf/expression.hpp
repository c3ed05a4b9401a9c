#pragma once

#include <functional>
#include <string>

#include "wgf/errors.hpp"

namespace wgf {

// Parses a tiny arithmetic expression in one variable x: numbers, x,
// + - * / ^ (right-associative), parentheses, log(...) and exp(...).
// Used for custom energy densities supplied in config files. Throws
// input_error on malformed input.
std::function<double(double)> parse_expression(const std::string& text);

}  // namespace wgf
