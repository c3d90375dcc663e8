// Copyright 2026 The holoq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "holoq/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace holoq {

void JsonWriter::prefix() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!has_element_.empty()) {
    if (has_element_.back()) out_.push_back(',');
    has_element_.back() = true;
  }
}

JsonWriter& JsonWriter::begin_object() {
  prefix();
  out_.push_back('{');
  has_element_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_.push_back('}');
  has_element_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  prefix();
  out_.push_back('[');
  has_element_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_.push_back(']');
  has_element_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
  prefix();
  write_string(name);
  out_.push_back(':');
  // The upcoming value belongs to this key; it must not emit its own comma.
  pending_key_ = true;
  return *this;
}

std::string JsonWriter::format_double(double v) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("cannot serialize a non-finite double");
  }
  std::array<char, 40> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

JsonWriter& JsonWriter::value(double v) {
  prefix();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
  prefix();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  prefix();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  prefix();
  out_ += v ? "true" : "false";
  return *this;
}

void JsonWriter::write_string(std::string_view v) {
  out_.push_back('"');
  for (char c : v) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\r': out_ += "\\r"; break;
      case '\t': out_ += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          constexpr char hex[] = "0123456789abcdef";
          out_ += "\\u00";
          out_.push_back(hex[(c >> 4) & 0xf]);
          out_.push_back(hex[c & 0xf]);
        } else {
          out_.push_back(c);
        }
    }
  }
  out_.push_back('"');
}

JsonWriter& JsonWriter::value(std::string_view v) {
  prefix();
  write_string(v);
  return *this;
}

JsonWriter& JsonWriter::null() {
  prefix();
  out_ += "null";
  return *this;
}

JsonWriter& JsonWriter::raw(std::string_view pre_serialized) {
  prefix();
  out_ += pre_serialized;
  return *this;
}

std::string JsonWriter::str() && {
  return std::move(out_);
}

}  // namespace holoq
