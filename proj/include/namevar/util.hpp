// Small shared helpers: errors, text IO, splitting, hashing, number formatting.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace namevar {

// Exit codes used by the CLI: 2 input error, 3 config error, 4 internal.
struct Error : std::runtime_error {
  std::string code;
  int exit_code;
  Error(std::string c, int ec, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)), exit_code(ec) {}
};

[[noreturn]] inline void fail_input(const std::string& code, const std::string& msg) {
  throw Error(code, 2, msg);
}
[[noreturn]] inline void fail_config(const std::string& code, const std::string& msg) {
  throw Error(code, 3, msg);
}
[[noreturn]] inline void fail_internal(const std::string& msg) {
  throw Error("E_INTERNAL", 4, msg);
}

std::vector<std::string_view> split(std::string_view s, char sep);

std::string read_text(const std::string& path);
std::vector<std::string> read_lines(const std::string& path);
// Writes to path + ".tmp" then renames, so readers never see partial files.
void atomic_write_text(const std::string& path, std::string_view content);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

// Shortest round-trip decimal form of a double; parse + re-emit is bit-stable.
std::string fmt_double(double v);
// Fixed-point with the given precision, for CSV cells.
std::string fmt_fixed(double v, int precision);

double parse_double(std::string_view s);
std::uint64_t parse_u64(std::string_view s);
std::int64_t parse_i64(std::string_view s);

}  // namespace namevar
