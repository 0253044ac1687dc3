#pragma once

#include <string>
#include <string_view>
#include <vector>

// Parsing of config values.
//   scalar:   1.5, 2e-3, pi, 2*pi, pi/4, 3*pi/2
//   list:     item,item,...   (each item a scalar or a range)
//   ranges:   lin:a:b:n   n points, both ends included
//             grid:a:b:n  n points on [a, b)
//             log:a:b:n   n log-spaced points, both ends included (a, b > 0)
//             a:b         integers a..b (integer lists only)
// Lists must be finite and strictly increasing; violations throw ConfigError.
namespace cavqfi::grammar {

double parse_scalar(std::string_view text);

std::vector<double> parse_real_list(std::string_view text);

/// Integer grid. Real-valued ranges (lin/log) are rounded to the nearest
/// integer and duplicates dropped.
std::vector<int> parse_int_list(std::string_view text);

std::string trim(std::string_view text);

}  // namespace cavqfi::grammar
