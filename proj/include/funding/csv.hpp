#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace funding {

// 12 significant digits; enough to make determinism byte-testable without
// printing noise digits.
std::string fmt_g12(double v);

// RFC 4180 quoting: fields containing comma, quote, or newline are quoted,
// embedded quotes doubled.
std::string csv_escape(std::string_view field);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Parses one CSV line (no embedded newlines in fields).
std::vector<std::string> parse_csv_row(std::string_view line);

// Reads a whole CSV file; first row must equal `header` (parsed fields).
// Returns nullopt and sets error on mismatch or unreadable file.
std::optional<std::vector<std::vector<std::string>>> read_csv(
    const std::string& path, const std::vector<std::string>& header, std::string* error);

// Writes `content` to path atomically (write temp file, then rename).
bool write_file_atomic(const std::string& path, const std::string& content, std::string* error);

// Same, but the producer streams into the temp file; avoids buffering large
// artifacts in memory.
bool write_file_atomic_stream(const std::string& path,
                              const std::function<void(std::ostream&)>& producer,
                              std::string* error);

}  // namespace funding
