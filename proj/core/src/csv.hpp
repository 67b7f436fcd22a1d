#pragma once

// Minimal comma-separated reader/writer helpers for the table exports.

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "pagrowth/error.hpp"

namespace pagrowth::csv {

// Shortest representation that parses back to the same double.
inline std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

class Reader {
 public:
  using Row = std::vector<std::string>;

  Reader(std::istream& in, std::string_view expected_header) : in_(in) {
    std::string header;
    while (std::getline(in_, header)) {
      ++line_;
      if (!header.empty() && header.back() == '\r') header.pop_back();
      if (header.empty() || header.front() == '#') continue;
      if (header != expected_header) {
        throw ParseError(line_, "expected header '" + std::string(expected_header) +
                                    "', got '" + header + "'");
      }
      columns_ = 1;
      for (char c : expected_header) columns_ += (c == ',');
      return;
    }
    throw ParseError(line_, "missing header '" + std::string(expected_header) + "'");
  }

  std::optional<Row> next() {
    std::string text;
    while (std::getline(in_, text)) {
      ++line_;
      if (!text.empty() && text.back() == '\r') text.pop_back();
      if (text.empty() || text.front() == '#') continue;
      Row row;
      std::size_t start = 0;
      while (true) {
        auto comma = text.find(',', start);
        row.emplace_back(text.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (row.size() != columns_) {
        throw ParseError(line_, "expected " + std::to_string(columns_) + " columns, got " +
                                    std::to_string(row.size()));
      }
      return row;
    }
    return std::nullopt;
  }

  std::size_t line() const { return line_; }

  bool is_empty(const Row& row, std::size_t i) const { return row[i].empty(); }

  double get_double(const Row& row, std::size_t i) const {
    double value = 0;
    const auto& s = row[i];
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError(line_, "bad number '" + s + "'");
    }
    return value;
  }

  std::uint64_t get_uint64(const Row& row, std::size_t i) const {
    return parse_int<std::uint64_t>(row[i]);
  }
  std::uint32_t get_uint32(const Row& row, std::size_t i) const {
    return parse_int<std::uint32_t>(row[i]);
  }
  std::int64_t get_int64(const Row& row, std::size_t i) const {
    return parse_int<std::int64_t>(row[i]);
  }

 private:
  template <typename T>
  T parse_int(const std::string& s) const {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError(line_, "bad integer '" + s + "'");
    }
    return value;
  }

  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t columns_ = 0;
};

}  // namespace pagrowth::csv
