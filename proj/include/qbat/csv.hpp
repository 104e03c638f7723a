#pragma once

#include <string>

namespace qbat {

/// Locale-independent decimal formatting with 12 significant digits,
/// matching the CSV contract of the command-line tools.
std::string format_sig(double x);

/// Shortest round-trip formatting (used for labels and resolved settings).
std::string format_short(double x);

}  // namespace qbat
