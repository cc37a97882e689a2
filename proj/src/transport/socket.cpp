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

// Loopback TCP backend.
//
// Bootstrap, per rank:
//   1. open a listener on an ephemeral port;
//   2. rank 0 collects every rank's port over the rendezvous port and sends
//      the full table back to each of them;
//   3. each rank connects to all lower ranks and accepts from all higher
//      ranks, so every pair shares exactly one connection. The connecting
//      side opens with a hello frame naming itself.
// Bootstrap messages use the normal frame format with kBootstrapTag.
//
// After bootstrap each endpoint runs a writer thread (drains the send queue,
// which is what makes send eager) and a reader thread (polls all peers,
// reassembles frames, delivers them into the mailbox).

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <thread>
#include <utility>
#include <vector>

#include "fabric.hpp"

namespace sortbench::transport::detail {

namespace {

constexpr std::uint32_t kBootstrapTag = 0xFFFFFFFFu;
// Blocking waits wake this often to notice an abort.
constexpr int kPollSliceMs = 50;

[[noreturn]] void throw_errno(const std::string& what) {
  throw TransportError(what + ": " + std::strerror(errno));
}

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
  Fd& operator=(Fd&& o) noexcept {
    if (this != &o) {
      reset();
      fd_ = std::exchange(o.fd_, -1);
    }
    return *this;
  }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }

  [[nodiscard]] int get() const noexcept { return fd_; }
  [[nodiscard]] bool valid() const noexcept { return fd_ >= 0; }

  void reset() noexcept {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

sockaddr_in loopback(std::uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  return addr;
}

Fd listen_loopback(std::uint16_t port, int backlog) {
  Fd fd(::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0));
  if (!fd.valid()) throw_errno("socket");
  int one = 1;
  ::setsockopt(fd.get(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  auto addr = loopback(port);
  if (::bind(fd.get(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    throw_errno("bind 127.0.0.1:" + std::to_string(port));
  }
  if (::listen(fd.get(), backlog) != 0) throw_errno("listen");
  return fd;
}

std::uint16_t local_port(const Fd& fd) {
  sockaddr_in addr{};
  socklen_t len = sizeof(addr);
  if (::getsockname(fd.get(), reinterpret_cast<sockaddr*>(&addr), &len) != 0) {
    throw_errno("getsockname");
  }
  return ntohs(addr.sin_port);
}

void tune(const Fd& fd) {
  int one = 1;
  ::setsockopt(fd.get(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

// Bootstrap I/O: bounded by the world deadline and interruptible by abort.
class Bootstrap {
 public:
  Bootstrap(Clock::time_point deadline, const std::atomic<bool>& aborted)
      : deadline_(deadline), aborted_(aborted) {}

  void wait_for(const Fd& fd, short events) const {
    for (;;) {
      if (aborted_.load()) throw ShutdownError("world aborted during socket bootstrap");
      const auto now = Clock::now();
      if (now >= deadline_) throw TimeoutError("socket bootstrap passed the world deadline");
      const auto left =
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline_ - now).count();
      pollfd p{fd.get(), events, 0};
      const int rc = ::poll(&p, 1, static_cast<int>(std::min<long long>(left + 1, kPollSliceMs)));
      if (rc < 0 && errno != EINTR) throw_errno("poll");
      if (rc > 0) return;
    }
  }

  Fd accept(const Fd& listener) const {
    wait_for(listener, POLLIN);
    Fd fd(::accept4(listener.get(), nullptr, nullptr, SOCK_CLOEXEC));
    if (!fd.valid()) throw_errno("accept");
    tune(fd);
    return fd;
  }

  Fd connect(std::uint16_t port) const {
    Fd fd(::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0));
    if (!fd.valid()) throw_errno("socket");
    auto addr = loopback(port);
    if (::connect(fd.get(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
      throw_errno("connect 127.0.0.1:" + std::to_string(port));
    }
    tune(fd);
    return fd;
  }

  void read_exact(const Fd& fd, std::uint8_t* buf, std::size_t n) const {
    while (n > 0) {
      wait_for(fd, POLLIN);
      const ssize_t got = ::recv(fd.get(), buf, n, 0);
      if (got == 0) throw TransportError("peer closed during socket bootstrap");
      if (got < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        throw_errno("recv");
      }
      buf += got;
      n -= static_cast<std::size_t>(got);
    }
  }

  Envelope read_frame(const Fd& fd) const {
    std::vector<std::uint8_t> bytes(kHeaderSize);
    read_exact(fd, bytes.data(), kHeaderSize);
    const FrameHeader h = decode_header(bytes);
    bytes.resize(h.frame_size());
    read_exact(fd, bytes.data() + kHeaderSize, h.frame_size() - kHeaderSize);
    Envelope env = decode(bytes);
    if (env.tag != kBootstrapTag) throw TransportError("unexpected frame during socket bootstrap");
    return env;
  }

 private:
  Clock::time_point deadline_;
  const std::atomic<bool>& aborted_;
};

void write_all(int fd, const std::uint8_t* data, std::size_t n) {
  while (n > 0) {
    const ssize_t put = ::send(fd, data, n, MSG_NOSIGNAL);
    if (put < 0) {
      if (errno == EINTR) continue;
      throw_errno("send");
    }
    data += put;
    n -= static_cast<std::size_t>(put);
  }
}

void write_frame(const Fd& fd, const Envelope& env) {
  const auto bytes = encode(env);
  write_all(fd.get(), bytes.data(), bytes.size());
}

Envelope hello(int from, int to, ElementArray payload) {
  Envelope env;
  env.payload = std::move(payload);
  env.tag = kBootstrapTag;
  env.source = static_cast<std::uint32_t>(from);
  env.dest = static_cast<std::uint32_t>(to);
  return env;
}

class SocketEndpoint final : public Endpoint {
 public:
  SocketEndpoint(int rank, std::vector<Fd> peers) : rank_(rank), peers_(std::move(peers)) {
    if (::pipe2(wake_, O_CLOEXEC) != 0) throw_errno("pipe2");
    writer_ = std::thread([this] { write_loop(); });
    reader_ = std::thread([this] { read_loop(); });
  }

  ~SocketEndpoint() override {
    close();
    ::close(wake_[0]);
    ::close(wake_[1]);
  }

  void send(Envelope env) override {
    std::vector<std::uint8_t> bytes;
    encode_into(env, bytes);
    {
      std::lock_guard lock(out_mu_);
      if (!write_error_.empty()) throw TransportError(write_error_);
      if (stopping_) throw ShutdownError("socket endpoint closed");
      outbox_.emplace_back(env.dest, std::move(bytes));
    }
    out_cv_.notify_one();
  }

  ElementArray recv(std::uint32_t source, std::uint32_t tag,
                    Clock::time_point deadline) override {
    return mailbox_.take(source, tag, deadline);
  }

  Mailbox& mailbox() { return mailbox_; }

  void close() {
    {
      std::lock_guard lock(out_mu_);
      if (stopping_) return;
      stopping_ = true;
    }
    out_cv_.notify_all();
    // Unblocks a writer stuck on a full socket buffer.
    for (auto& p : peers_) {
      if (p.valid()) ::shutdown(p.get(), SHUT_RDWR);
    }
    const char byte = 0;
    [[maybe_unused]] auto rc = ::write(wake_[1], &byte, 1);
    if (writer_.joinable()) writer_.join();
    if (reader_.joinable()) reader_.join();
    mailbox_.shutdown("world closed");
  }

 private:
  void write_loop() {
    for (;;) {
      std::pair<std::uint32_t, std::vector<std::uint8_t>> item;
      {
        std::unique_lock lock(out_mu_);
        out_cv_.wait(lock, [this] { return stopping_ || !outbox_.empty(); });
        if (stopping_) return;
        item = std::move(outbox_.front());
        outbox_.pop_front();
      }
      try {
        write_all(peers_[item.first].get(), item.second.data(), item.second.size());
      } catch (const std::exception& e) {
        std::lock_guard lock(out_mu_);
        write_error_ = "rank " + std::to_string(rank_) + " lost its link to rank " +
                       std::to_string(item.first) + ": " + e.what();
        return;
      }
    }
  }

  void read_loop() {
    struct Link {
      std::size_t peer;
      std::vector<std::uint8_t> buf;
    };
    std::vector<Link> links;
    for (std::size_t i = 0; i < peers_.size(); ++i) {
      if (peers_[i].valid()) links.push_back({i, {}});
    }
    std::vector<std::uint8_t> chunk(1 << 16);
    std::vector<pollfd> fds;
    while (!links.empty()) {
      fds.clear();
      fds.push_back({wake_[0], POLLIN, 0});
      for (const auto& l : links) fds.push_back({peers_[l.peer].get(), POLLIN, 0});
      if (::poll(fds.data(), fds.size(), -1) < 0) {
        if (errno == EINTR) continue;
        mailbox_.shutdown(std::string("poll failed: ") + std::strerror(errno));
        return;
      }
      if (fds[0].revents != 0) return;

      for (std::size_t k = links.size(); k-- > 0;) {
        if (fds[k + 1].revents == 0) continue;
        Link& link = links[k];
        const ssize_t got = ::recv(peers_[link.peer].get(), chunk.data(), chunk.size(), 0);
        if (got <= 0) {
          if (got < 0 && (errno == EINTR || errno == EAGAIN)) continue;
          // Peer hung up. Anything it sent is already delivered.
          links.erase(links.begin() + static_cast<std::ptrdiff_t>(k));
          continue;
        }
        link.buf.insert(link.buf.end(), chunk.begin(), chunk.begin() + got);
        try {
          drain_frames(link.peer, link.buf);
        } catch (const std::exception& e) {
          mailbox_.shutdown("corrupt frame from rank " + std::to_string(link.peer) + ": " +
                            e.what());
          return;
        }
      }
    }
  }

  void drain_frames(std::size_t peer, std::vector<std::uint8_t>& buf) {
    std::size_t at = 0;
    while (buf.size() - at >= kHeaderSize) {
      std::span<const std::uint8_t> rest(buf.data() + at, buf.size() - at);
      const FrameHeader h = decode_header(rest);
      if (rest.size() < h.frame_size()) break;
      Envelope env = decode(rest.first(h.frame_size()));
      if (env.source != peer || env.dest != static_cast<std::uint32_t>(rank_)) {
        throw WireError("frame addressed " + std::to_string(env.source) + "->" +
                        std::to_string(env.dest) + " on the wrong link");
      }
      mailbox_.deliver(std::move(env));
      at += h.frame_size();
    }
    buf.erase(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(at));
  }

  int rank_;
  std::vector<Fd> peers_;
  Mailbox mailbox_;
  int wake_[2] = {-1, -1};

  std::mutex out_mu_;
  std::condition_variable out_cv_;
  std::deque<std::pair<std::uint32_t, std::vector<std::uint8_t>>> outbox_;
  bool stopping_ = false;
  std::string write_error_;

  std::thread writer_;
  std::thread reader_;
};

class SocketFabric final : public Fabric {
 public:
  SocketFabric(int size, std::uint16_t rendezvous_port)
      : size_(size), endpoints_(static_cast<std::size_t>(size)) {
    if (size > 1) {
      rendezvous_ = listen_loopback(rendezvous_port, size + 8);
      rendezvous_port_ = local_port(rendezvous_);
    }
  }

  ~SocketFabric() override { close(); }

  Endpoint& attach(int rank, Clock::time_point deadline) override {
    const Bootstrap io(deadline, aborted_);
    std::vector<Fd> peers(static_cast<std::size_t>(size_));

    if (size_ > 1) {
      Fd listener = listen_loopback(0, size_ + 8);
      const auto ports = exchange_ports(rank, local_port(listener), io);

      for (int lower = 0; lower < rank; ++lower) {
        Fd fd = io.connect(static_cast<std::uint16_t>(ports[static_cast<std::size_t>(lower)]));
        write_frame(fd, hello(rank, lower, {rank}));
        peers[static_cast<std::size_t>(lower)] = std::move(fd);
      }
      for (int pending = size_ - 1 - rank; pending > 0; --pending) {
        Fd fd = io.accept(listener);
        const Envelope h = io.read_frame(fd);
        const auto from = static_cast<std::size_t>(h.source);
        if (h.source <= static_cast<std::uint32_t>(rank) || from >= peers.size() ||
            peers[from].valid()) {
          throw TransportError("unexpected hello from rank " + std::to_string(h.source));
        }
        peers[from] = std::move(fd);
      }
    }

    auto ep = std::make_unique<SocketEndpoint>(rank, std::move(peers));
    SocketEndpoint& ref = *ep;
    {
      std::lock_guard lock(mu_);
      endpoints_[static_cast<std::size_t>(rank)] = std::move(ep);
      if (aborted_) ref.mailbox().shutdown(abort_reason_);
    }
    return ref;
  }

  void abort(const std::string& reason) override {
    std::lock_guard lock(mu_);
    if (!aborted_.exchange(true)) abort_reason_ = reason;
    for (auto& ep : endpoints_) {
      if (ep) ep->mailbox().shutdown(abort_reason_);
    }
  }

  void close() override {
    std::vector<std::unique_ptr<SocketEndpoint>> eps;
    {
      std::lock_guard lock(mu_);
      eps = std::move(endpoints_);
      endpoints_.clear();
    }
    for (auto& ep : eps) {
      if (ep) ep->close();
    }
    eps.clear();
    rendezvous_.reset();
  }

 private:
  // Returns every rank's listener port, indexed by rank.
  std::vector<Element> exchange_ports(int rank, std::uint16_t my_port, const Bootstrap& io) {
    std::vector<Element> ports(static_cast<std::size_t>(size_), 0);
    if (rank == 0) {
      ports[0] = my_port;
      std::vector<Fd> links(static_cast<std::size_t>(size_));
      for (int pending = size_ - 1; pending > 0; --pending) {
        Fd fd = io.accept(rendezvous_);
        const Envelope h = io.read_frame(fd);
        const auto from = static_cast<std::size_t>(h.source);
        if (from == 0 || from >= links.size() || links[from].valid() || h.payload.size() != 1) {
          throw TransportError("bad rendezvous hello from rank " + std::to_string(h.source));
        }
        ports[from] = h.payload[0];
        links[from] = std::move(fd);
      }
      for (int r = 1; r < size_; ++r) {
        write_frame(links[static_cast<std::size_t>(r)], hello(0, r, ports));
      }
      return ports;
    }
    Fd fd = io.connect(rendezvous_port_);
    write_frame(fd, hello(rank, 0, {static_cast<Element>(my_port)}));
    Envelope table = io.read_frame(fd);
    if (table.payload.size() != static_cast<std::size_t>(size_)) {
      throw TransportError("rendezvous port table has the wrong size");
    }
    return std::move(table.payload);
  }

  int size_;
  Fd rendezvous_;
  std::uint16_t rendezvous_port_ = 0;
  std::mutex mu_;
  std::atomic<bool> aborted_{false};
  std::string abort_reason_;
  std::vector<std::unique_ptr<SocketEndpoint>> endpoints_;
};

}  // namespace

std::unique_ptr<Fabric> make_socket_fabric(int size, std::uint16_t rendezvous_port) {
  return std::make_unique<SocketFabric>(size, rendezvous_port);
}

}  // namespace sortbench::transport::detail
