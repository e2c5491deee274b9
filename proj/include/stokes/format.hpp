#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace stokes {

/// Shortest-loss text form of a real: 17 significant digits, so parsing it
/// back yields the identical double.
std::string fmt17(double value);

/// Parses a full real token; throws std::invalid_argument on trailing junk.
double parse_real(std::string_view text);

/// Splits one CSV line on commas (no quoting is produced by this library).
std::vector<std::string> split_csv(std::string_view line);

}  // namespace stokes
