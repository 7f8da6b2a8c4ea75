#pragma once

#include <cstdint>
#include <string>

namespace ocm {

// Human-facing numeric output: 6 significant digits.
std::string format_human(double v);
// Machine-facing CSV output: shortest representation that round-trips.
std::string format_full(double v);

std::string format_int(std::int64_t v);

} // namespace ocm
