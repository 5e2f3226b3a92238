#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>

#include "hipjerk/error.hpp"
#include "hipjerk/session.hpp"
#include "hipjerk/udp.hpp"
#include "hipjerk/wire_format.hpp"

namespace hipjerk {

struct ListenConfig {
  int port = 5555;
  /// Stop once this many characters have arrived (checked after each whole datagram).
  std::size_t buffer_size = 65536;
  /// Stop this many seconds after listening starts.
  double timeout = 120.0;
  /// Sampling period attached to the acquired session.
  double dt = kDefaultDt;

  void validate() const {
    if (port < 1 || port > 65535) {
      throw Error(ErrorCode::InvalidInput, "port must be in [1, 65535], got " + std::to_string(port));
    }
    if (buffer_size == 0) throw Error(ErrorCode::InvalidInput, "buffer size must be positive");
    if (!(timeout > 0.0) || !std::isfinite(timeout)) {
      throw Error(ErrorCode::InvalidInput, "timeout must be positive");
    }
    if (!(dt >= kMinDt) || !std::isfinite(dt)) {
      throw Error(ErrorCode::InvalidInput, "dt must be at least 0.020 s");
    }
  }
};

enum class Termination { BufferFull, Timeout };

inline std::string_view to_string(Termination t) {
  return t == Termination::BufferFull ? "buffer-full" : "timeout";
}

struct ListenResult {
  std::string stream;
  std::size_t datagrams = 0;
  Termination termination = Termination::Timeout;
};

/// Binds on construction so senders can start before receive() is called.
class UdpListener {
 public:
  explicit UdpListener(const ListenConfig& cfg) : cfg_(checked(cfg)), socket_(static_cast<std::uint16_t>(cfg.port)) {}

  /// Same contract, bound to a kernel-chosen free port (see port()).
  static UdpListener on_free_port(ListenConfig cfg) {
    cfg.port = 1;
    cfg.validate();
    return UdpListener(cfg, net::BoundSocket(0));
  }

  std::uint16_t port() const { return socket_.port(); }
  const ListenConfig& config() const { return cfg_; }

  /// Accumulates payloads from any source in arrival order until the buffer
  /// threshold is reached or the timeout elapses, whichever comes first.
  ListenResult receive() {
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(cfg_.timeout));
    ListenResult result;
    while (auto dg = socket_.receive_until(deadline)) {
      ++result.datagrams;
      result.stream += dg->payload;
      if (result.stream.size() >= cfg_.buffer_size) {
        result.termination = Termination::BufferFull;
        return result;
      }
    }
    if (result.datagrams == 0) {
      throw Error(ErrorCode::EmptyAcquisition,
                  "no datagrams on port " + std::to_string(port()) + " within " +
                      std::to_string(cfg_.timeout) + " s");
    }
    result.termination = Termination::Timeout;
    return result;
  }

 private:
  UdpListener(const ListenConfig& cfg, net::BoundSocket socket) : cfg_(cfg), socket_(std::move(socket)) {}

  static const ListenConfig& checked(const ListenConfig& cfg) {
    cfg.validate();
    return cfg;
  }

  ListenConfig cfg_;
  net::BoundSocket socket_;
};

inline ListenResult listen(const ListenConfig& cfg) { return UdpListener(cfg).receive(); }

inline Session session_from_stream(std::string_view stream, double dt, std::string source) {
  const ParseReport parsed = parse_stream(stream);
  Session session;
  session.records = parsed.records;
  session.dt = dt;
  session.source = std::move(source);
  session.diagnostics = SessionDiagnostics::from(parsed);
  return session;
}

struct Acquisition {
  Session session;
  std::size_t datagrams = 0;
  std::size_t bytes = 0;
  Termination termination = Termination::Timeout;
};

inline Acquisition acquire(UdpListener& listener) {
  const ListenResult raw = listener.receive();
  return {session_from_stream(raw.stream, listener.config().dt,
                              "udp 0.0.0.0:" + std::to_string(listener.port())),
          raw.datagrams, raw.stream.size(), raw.termination};
}

inline Session acquire_session(UdpListener& listener) { return acquire(listener).session; }

inline Session acquire_session(const ListenConfig& cfg) {
  UdpListener listener(cfg);
  return acquire_session(listener);
}

}  // namespace hipjerk
