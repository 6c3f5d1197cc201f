// Copyright 2026 The Phraselette Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Small text helpers shared by every module. Offsets exposed to users are
// Unicode scalar-value offsets; strings are stored as UTF-8.
namespace phraselette::text {

// Number of Unicode scalar values in a UTF-8 string. Throws InvalidArgument
// on malformed UTF-8.
std::size_t codepoint_length(std::string_view utf8);

// Byte offset of the codepoint at index `cp_index` (cp_index may equal the
// codepoint length, which maps to utf8.size()).
std::size_t byte_offset(std::string_view utf8, std::size_t cp_index);

bool is_valid_utf8(std::string_view utf8);

// Length in bytes of the UTF-8 sequence starting with `lead`, 1 for invalid
// lead bytes.
std::size_t utf8_sequence_length(unsigned char lead);

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool starts_with_space(std::string_view s);
bool is_all_space(std::string_view s);

std::string_view trim(std::string_view s);

// Whitespace-delimited words.
std::vector<std::string_view> split_words(std::string_view s);
std::size_t word_count(std::string_view s);

// Alternating runs of whitespace and non-whitespace; concatenation of the
// result equals the input.
std::vector<std::string_view> split_runs(std::string_view s);

std::string to_lower_ascii(std::string_view s);
std::string to_upper_ascii(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// 64-bit FNV-1a, used wherever a stable cross-run hash is needed.
std::uint64_t fnv1a(std::string_view s, std::uint64_t seed = 14695981039346656037ull);

std::string hex(std::uint64_t value, int digits = 16);

}  // namespace phraselette::text
