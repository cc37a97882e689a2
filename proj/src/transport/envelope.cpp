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

#include "sortbench/transport/envelope.hpp"

#include <limits>
#include <string>

namespace sortbench::transport {

namespace {

template <class U>
void put_le(std::uint8_t* p, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    p[i] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(v) >> (8 * i));
  }
}

template <class U>
U get_le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return static_cast<U>(v);
}

constexpr std::uint64_t kMaxLength =
    (std::numeric_limits<std::size_t>::max() - kHeaderSize) / sizeof(Element);

}  // namespace

void encode_into(const Envelope& env, std::vector<std::uint8_t>& out) {
  if (env.source == env.dest) {
    throw WireError("envelope source and dest are both rank " + std::to_string(env.source));
  }
  const std::size_t base = out.size();
  out.resize(base + kHeaderSize + env.payload.size() * sizeof(Element), 0);
  std::uint8_t* p = out.data() + base;
  put_le<std::uint32_t>(p + 0, kWireMagic);
  p[4] = kWireVersion;
  p[5] = static_cast<std::uint8_t>(env.element_type);
  put_le<std::uint32_t>(p + 8, env.tag);
  put_le<std::uint32_t>(p + 12, env.source);
  put_le<std::uint32_t>(p + 16, env.dest);
  put_le<std::uint64_t>(p + 24, env.payload.size());
  std::uint8_t* q = p + kHeaderSize;
  for (Element v : env.payload) {
    put_le<std::uint64_t>(q, static_cast<std::uint64_t>(v));
    q += sizeof(Element);
  }
}

std::vector<std::uint8_t> encode(const Envelope& env) {
  std::vector<std::uint8_t> out;
  encode_into(env, out);
  return out;
}

FrameHeader decode_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) throw WireError("truncated frame header");
  const std::uint8_t* p = bytes.data();
  if (get_le<std::uint32_t>(p) != kWireMagic) throw WireError("bad frame magic");
  if (p[4] != kWireVersion) throw WireError("unsupported frame version " + std::to_string(p[4]));
  if (p[5] != static_cast<std::uint8_t>(ElementType::kInt64)) {
    throw WireError("unknown element type " + std::to_string(p[5]));
  }
  if (get_le<std::uint16_t>(p + 6) != 0 || get_le<std::uint32_t>(p + 20) != 0 ||
      get_le<std::uint64_t>(p + 32) != 0) {
    throw WireError("nonzero padding or reserved bytes in frame header");
  }
  FrameHeader h{};
  h.element_type = ElementType::kInt64;
  h.tag = get_le<std::uint32_t>(p + 8);
  h.source = get_le<std::uint32_t>(p + 12);
  h.dest = get_le<std::uint32_t>(p + 16);
  h.length = get_le<std::uint64_t>(p + 24);
  if (h.source == h.dest) throw WireError("frame source equals dest");
  if (h.length > kMaxLength) throw WireError("frame length overflows");
  return h;
}

Envelope decode(std::span<const std::uint8_t> bytes) {
  const FrameHeader h = decode_header(bytes);
  if (bytes.size() != h.frame_size()) {
    throw WireError("frame is " + std::to_string(bytes.size()) + " bytes, header says " +
                    std::to_string(h.frame_size()));
  }
  Envelope env;
  env.element_type = h.element_type;
  env.tag = h.tag;
  env.source = h.source;
  env.dest = h.dest;
  env.payload.resize(h.length);
  const std::uint8_t* q = bytes.data() + kHeaderSize;
  for (auto& v : env.payload) {
    v = static_cast<Element>(get_le<std::uint64_t>(q));
    q += sizeof(Element);
  }
  return env;
}

}  // namespace sortbench::transport
