/*
 * Copyright 2026 the optionmc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

// Small line/field helpers shared by the file parsers.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "core/error.hpp"

namespace omc::text {

inline std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(trim(s.substr(start)));
      break;
    }
    fields.push_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
  return fields;
}

inline double parse_double(std::string_view s, const std::string& context) {
  const std::string buf{trim(s)};
  char* end = nullptr;
  const double value = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size())
    fail(errc::parse, context + ": expected a number, got '" + buf + "'");
  return value;
}

inline std::uint64_t parse_u64(std::string_view s, const std::string& context) {
  const auto t = trim(s);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    fail(errc::parse, context + ": expected a non-negative integer, got '" + std::string(t) + "'");
  return value;
}

} // namespace omc::text
