#pragma once

// Configuration files for `eval`:
//
//   # comment
//   n 3
//   angles 1 0 1/7 2/7 3/7 4/7 5/7 6/7
//   ranks  2 1 3 5 7 2 4 6
//
// `angles k ...` and `ranks k ...` give factor k (1-based); each factor needs
// at least one of them, and when both appear they must agree.

#include <string_view>

#include "thnorm/cocycle.hpp"

namespace thnorm {

/// Throws ParseError (with line and field) on malformed input and
/// ValidationError when ranks and angles disagree.
Configuration parse_config(std::string_view text);

/// Inverse of parse_config: ranks for every factor, plus angles when present.
std::string format_config(const Configuration& cfg);

}  // namespace thnorm
