// Copyright 2026 The sortbench Authors
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

// One point-to-point message and its wire encoding.
//
// Frame layout, all integers little-endian:
//
//   offset  size  field
//        0     4  magic          0x4D534F52
//        4     1  version        1
//        5     1  element_type   1 = int64
//        6     2  padding        0
//        8     4  message_tag
//       12     4  source_rank
//       16     4  dest_rank
//       20     4  padding        0 (aligns length)
//       24     8  length         element count
//       32     8  reserved       0
//       40  8*len payload        int64 elements
//
// Decoders reject frames whose padding or reserved bytes are nonzero.

#ifndef SORTBENCH_TRANSPORT_ENVELOPE_HPP
#define SORTBENCH_TRANSPORT_ENVELOPE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sortbench/types.hpp"

namespace sortbench::transport {

enum class ElementType : std::uint8_t { kInt64 = 1 };

struct Envelope {
  ElementArray payload;
  ElementType element_type = ElementType::kInt64;
  std::uint32_t tag = 0;
  std::uint32_t source = 0;
  std::uint32_t dest = 0;

  [[nodiscard]] std::size_t length() const noexcept { return payload.size(); }

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

class WireError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint32_t kWireMagic = 0x4D534F52;
inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr std::size_t kHeaderSize = 40;

struct FrameHeader {
  ElementType element_type;
  std::uint32_t tag;
  std::uint32_t source;
  std::uint32_t dest;
  std::uint64_t length;

  /// Header plus payload bytes.
  [[nodiscard]] std::size_t frame_size() const noexcept {
    return kHeaderSize + static_cast<std::size_t>(length) * sizeof(Element);
  }
};

/// Appends the frame for `env` to `out`. Throws WireError when
/// source == dest.
void encode_into(const Envelope& env, std::vector<std::uint8_t>& out);

std::vector<std::uint8_t> encode(const Envelope& env);

/// Validates and parses the first kHeaderSize bytes of `bytes`.
FrameHeader decode_header(std::span<const std::uint8_t> bytes);

/// Parses exactly one frame; `bytes` must hold nothing else.
Envelope decode(std::span<const std::uint8_t> bytes);

}  // namespace sortbench::transport

#endif  // SORTBENCH_TRANSPORT_ENVELOPE_HPP
