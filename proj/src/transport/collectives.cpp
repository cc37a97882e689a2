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

#include "sortbench/transport/collectives.hpp"

#include <stdexcept>
#include <string>

namespace sortbench::transport {

namespace {

void check_root(const RankContext& ctx, int root, const char* op) {
  if (root < 0 || root >= ctx.size()) {
    throw std::invalid_argument(std::string(op) + ": root " + std::to_string(root) +
                                " is outside the world");
  }
}

void check_buffer_role(const RankContext& ctx, bool has_buffer, int root, const char* op) {
  if (ctx.rank() == root && !has_buffer) {
    throw std::invalid_argument(std::string(op) + ": root must supply a buffer");
  }
  if (ctx.rank() != root && has_buffer) {
    throw std::invalid_argument(std::string(op) + ": only the root supplies a buffer");
  }
}

}  // namespace

ElementArray scatter(RankContext& ctx, std::optional<std::span<const Element>> sendbuf,
                     int root) {
  check_root(ctx, root, "scatter");
  check_buffer_role(ctx, sendbuf.has_value(), root, "scatter");
  if (ctx.rank() != root) return ctx.recv(root, kScatterTag);

  const auto p = static_cast<std::size_t>(ctx.size());
  if (sendbuf->size() % p != 0) {
    throw std::invalid_argument("scatter: length " + std::to_string(sendbuf->size()) +
                                " is not divisible by world size " + std::to_string(p));
  }
  const std::size_t chunk = sendbuf->size() / p;
  for (int r = 0; r < ctx.size(); ++r) {
    if (r == root) continue;
    ctx.send(sendbuf->subspan(static_cast<std::size_t>(r) * chunk, chunk), r, kScatterTag);
  }
  auto own = sendbuf->subspan(static_cast<std::size_t>(root) * chunk, chunk);
  return ElementArray(own.begin(), own.end());
}

std::optional<ElementArray> gather(RankContext& ctx, std::span<const Element> sendbuf, int root) {
  check_root(ctx, root, "gather");
  if (ctx.rank() != root) {
    ctx.send(sendbuf, root, kGatherTag);
    return std::nullopt;
  }
  ElementArray out;
  out.reserve(sendbuf.size() * static_cast<std::size_t>(ctx.size()));
  for (int r = 0; r < ctx.size(); ++r) {
    if (r == root) {
      out.insert(out.end(), sendbuf.begin(), sendbuf.end());
      continue;
    }
    ElementArray part = ctx.recv(r, kGatherTag);
    if (part.size() != sendbuf.size()) {
      throw std::invalid_argument("gather: rank " + std::to_string(r) + " sent " +
                                  std::to_string(part.size()) + " elements, root has " +
                                  std::to_string(sendbuf.size()));
    }
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

ElementArray bcast(RankContext& ctx, std::optional<std::span<const Element>> data, int root) {
  check_root(ctx, root, "bcast");
  check_buffer_role(ctx, data.has_value(), root, "bcast");
  if (ctx.rank() != root) return ctx.recv(root, kBcastTag);
  for (int r = 0; r < ctx.size(); ++r) {
    if (r != root) ctx.send(*data, r, kBcastTag);
  }
  return ElementArray(data->begin(), data->end());
}

}  // namespace sortbench::transport
