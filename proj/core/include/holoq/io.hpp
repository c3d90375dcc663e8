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

#ifndef HOLOQ_IO_HPP_
#define HOLOQ_IO_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace holoq {

// Streaming JSON writer with deterministic output: keys appear in insertion
// order and every double is rendered with 17 significant digits,
// locale-independent, so identical results serialize to identical bytes.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);
  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  // Keeps string literals from decaying to the bool overload.
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& null();

  // Splice an already-serialized JSON value (object, array or scalar).
  JsonWriter& raw(std::string_view pre_serialized);

  std::string str() &&;

  // Format one double the way the writer does (17 significant digits).
  static std::string format_double(double v);

 private:
  void prefix();
  void write_string(std::string_view v);

  std::string out_;
  // Per nesting level: whether at least one element was already emitted.
  std::vector<bool> has_element_;
  bool pending_key_ = false;
};

}  // namespace holoq

#endif  // HOLOQ_IO_HPP_
