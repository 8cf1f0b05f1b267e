#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qadv::io {

std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws Errc::Io on characters outside the standard alphabet or bad padding.
std::vector<std::uint8_t> base64_decode(std::string_view text);

/// Little-endian IEEE-754 packing of a double array.
std::string encode_f64(std::span<const double> values);
std::vector<double> decode_f64(std::string_view text);

}  // namespace qadv::io
