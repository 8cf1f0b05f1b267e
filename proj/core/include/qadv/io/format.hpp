#pragma once

#include <string>

namespace qadv::io {

/// Shortest decimal string that parses back to the same double.
/// Non-finite values become "nan", "inf" or "-inf".
std::string format_double(double value);

}  // namespace qadv::io
