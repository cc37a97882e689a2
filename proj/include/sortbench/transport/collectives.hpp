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

// Rooted collectives built from point-to-point messages: the root loops over
// the other ranks. Every rank in the world must make the same call with the
// same root.

#ifndef SORTBENCH_TRANSPORT_COLLECTIVES_HPP
#define SORTBENCH_TRANSPORT_COLLECTIVES_HPP

#include <optional>
#include <span>

#include "sortbench/transport/world.hpp"

namespace sortbench::transport {

inline constexpr std::uint32_t kScatterTag = kReservedTagBase + 1;
inline constexpr std::uint32_t kGatherTag = kReservedTagBase + 2;
inline constexpr std::uint32_t kBcastTag = kReservedTagBase + 3;

/// Splits the root's buffer into size() equal contiguous chunks; rank i gets
/// [i * len / size, (i + 1) * len / size). Only the root passes a buffer.
/// The root throws before sending anything if len is not divisible by size().
ElementArray scatter(RankContext& ctx, std::optional<std::span<const Element>> sendbuf,
                     int root = 0);

/// Concatenates every rank's buffer in rank order at the root. Non-roots get
/// nullopt. The root throws if any rank's length differs from its own.
std::optional<ElementArray> gather(RankContext& ctx, std::span<const Element> sendbuf,
                                   int root = 0);

/// Every rank returns a copy of the root's data. Only the root passes data.
ElementArray bcast(RankContext& ctx, std::optional<std::span<const Element>> data, int root = 0);

}  // namespace sortbench::transport

#endif  // SORTBENCH_TRANSPORT_COLLECTIVES_HPP
