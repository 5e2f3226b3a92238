#pragma once

// Minimal POSIX UDP sockets: a wildcard-bound receiver and a connected-less sender.

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "hipjerk/error.hpp"

namespace hipjerk::net {

inline constexpr std::size_t kMaxDatagram = 65536;

inline std::string errno_message(int err) { return std::strerror(err); }

/// Owns a file descriptor.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  Socket(Socket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Socket& operator=(Socket&& other) noexcept {
    if (this != &other) {
      reset();
      fd_ = std::exchange(other.fd_, -1);
    }
    return *this;
  }
  ~Socket() { reset(); }

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }

  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

struct Datagram {
  std::string payload;
  sockaddr_in from{};
};

/// UDP socket bound to 0.0.0.0:port. Port 0 asks the kernel for a free port.
class BoundSocket {
 public:
  explicit BoundSocket(std::uint16_t port) : sock_(::socket(AF_INET, SOCK_DGRAM, 0)) {
    if (!sock_.valid()) throw Error(ErrorCode::BindError, "socket(): " + errno_message(errno));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    addr.sin_port = htons(port);
    if (::bind(sock_.fd(), reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
      throw Error(ErrorCode::BindError,
                  "cannot bind 0.0.0.0:" + std::to_string(port) + ": " + errno_message(errno));
    }
    socklen_t len = sizeof(addr);
    ::getsockname(sock_.fd(), reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
  }

  std::uint16_t port() const { return port_; }

  /// Waits until `deadline` for one datagram; nullopt on timeout.
  std::optional<Datagram> receive_until(std::chrono::steady_clock::time_point deadline) {
    using namespace std::chrono;
    while (true) {
      const auto now = steady_clock::now();
      if (now >= deadline) return std::nullopt;
      const auto remaining = duration_cast<microseconds>(deadline - now);
      timespec ts{};
      ts.tv_sec = static_cast<time_t>(remaining.count() / 1'000'000);
      ts.tv_nsec = static_cast<long>((remaining.count() % 1'000'000) * 1000);
      pollfd pfd{sock_.fd(), POLLIN, 0};
      const int ready = ::ppoll(&pfd, 1, &ts, nullptr);
      if (ready < 0) {
        if (errno == EINTR) continue;
        throw Error(ErrorCode::IoError, "poll(): " + errno_message(errno));
      }
      if (ready == 0) continue;  // loop re-checks the deadline

      Datagram dg;
      dg.payload.resize(kMaxDatagram);
      socklen_t len = sizeof(dg.from);
      const ssize_t got = ::recvfrom(sock_.fd(), dg.payload.data(), dg.payload.size(), 0,
                                     reinterpret_cast<sockaddr*>(&dg.from), &len);
      if (got < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        throw Error(ErrorCode::IoError, "recvfrom(): " + errno_message(errno));
      }
      dg.payload.resize(static_cast<std::size_t>(got));
      return dg;
    }
  }

 private:
  Socket sock_;
  std::uint16_t port_ = 0;
};

/// Sends datagrams to one IPv4 destination (host name or dotted quad).
class Sender {
 public:
  Sender(const std::string& host, std::uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_DGRAM;
    addrinfo* found = nullptr;
    const int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &found);
    if (rc != 0 || found == nullptr) {
      throw Error(ErrorCode::SendError, "cannot resolve '" + host + "': " + ::gai_strerror(rc));
    }
    std::memcpy(&dest_, found->ai_addr, sizeof(dest_));
    ::freeaddrinfo(found);
    sock_ = Socket(::socket(AF_INET, SOCK_DGRAM, 0));
    if (!sock_.valid()) throw Error(ErrorCode::SendError, "socket(): " + errno_message(errno));
  }

  /// Returns false with errno set when the kernel refuses the datagram.
  bool send(std::string_view payload) {
    const ssize_t sent = ::sendto(sock_.fd(), payload.data(), payload.size(), 0,
                                  reinterpret_cast<const sockaddr*>(&dest_), sizeof(dest_));
    return sent == static_cast<ssize_t>(payload.size());
  }

 private:
  Socket sock_;
  sockaddr_in dest_{};
};

}  // namespace hipjerk::net
