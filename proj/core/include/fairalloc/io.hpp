// Instance CSV I/O.
//
// Format: header `r1,r2,...,rm`, one agent per data row, positive decimal
// demands. Loading normalizes rows (max entry -> 1). Saving writes enough
// digits to round-trip doubles exactly.
#pragma once

#include <iosfwd>
#include <string>

#include "fairalloc/core.hpp"

namespace fairalloc {

Instance load_instance(std::istream& in, const std::string& origin = "<stream>");
Instance load_instance_file(const std::string& path);

void save_instance(std::ostream& out, const Instance& inst);
void save_instance_file(const std::string& path, const Instance& inst);

// Shortest decimal form that round-trips the double (std::to_chars).
std::string format_double(double v);

}  // namespace fairalloc
