#include <gtest/gtest.h>

#include <chrono>
#include <thread>

#include "hipjerk/acquisition.hpp"
#include "udp_helpers.hpp"

namespace hipjerk {
namespace {

using namespace std::chrono_literals;
using Clock = std::chrono::steady_clock;

ListenConfig quick(double timeout, std::size_t buffer = 65536) {
  ListenConfig cfg;
  cfg.timeout = timeout;
  cfg.buffer_size = buffer;
  return cfg;
}

TEST(ListenConfig, Validation) {
  EXPECT_NO_THROW(ListenConfig{}.validate());
  ListenConfig c;
  c.port = 0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.port = 70000;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.buffer_size = 0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.timeout = 0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.dt = 0.019;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Listen, ConcatenatesInArrivalOrderUntilTimeout) {
  UdpListener listener = UdpListener::on_free_port(quick(0.3));
  testing_udp::send_to(listener.port(), "1,2,3#");
  testing_udp::send_to(listener.port(), "4,5,6#");
  const auto start = Clock::now();
  const ListenResult r = listener.receive();
  const auto elapsed = Clock::now() - start;
  EXPECT_EQ(r.stream, "1,2,3#4,5,6#");
  EXPECT_EQ(r.datagrams, 2u);
  EXPECT_EQ(r.termination, Termination::Timeout);
  EXPECT_GE(elapsed, 290ms);
  EXPECT_LT(elapsed, 800ms);
}

TEST(Listen, BufferConditionKeepsWholeDatagram) {
  UdpListener listener = UdpListener::on_free_port(quick(5.0, 7));
  testing_udp::send_to(listener.port(), "1,2,3#4,5,6#");
  const auto start = Clock::now();
  const ListenResult r = listener.receive();
  EXPECT_LT(Clock::now() - start, 1s);
  EXPECT_EQ(r.stream, "1,2,3#4,5,6#");
  EXPECT_EQ(r.termination, Termination::BufferFull);
}

TEST(Listen, AcceptsAnySource) {
  UdpListener listener = UdpListener::on_free_port(quick(0.3));
  std::thread a([&] { testing_udp::send_to(listener.port(), "1,1,1#"); });
  a.join();
  std::thread b([&] { testing_udp::send_to(listener.port(), "2,2,2#", "localhost"); });
  b.join();
  testing_udp::send_to(listener.port(), "3,3,3#");
  EXPECT_EQ(listener.receive().stream, "1,1,1#2,2,2#3,3,3#");
}

TEST(Listen, EmptyAcquisition) {
  UdpListener listener = UdpListener::on_free_port(quick(0.1));
  try {
    listener.receive();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyAcquisition);
  }
}

TEST(Listen, BindErrorWhenPortTaken) {
  UdpListener first = UdpListener::on_free_port(quick(0.1));
  ListenConfig cfg = quick(0.1);
  cfg.port = first.port();
  try {
    UdpListener second(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BindError);
  }
}

TEST(AcquireSession, ParsesAndAttachesMetadata) {
  UdpListener listener = UdpListener::on_free_port(quick(0.2));
  testing_udp::send_to(listener.port(), "10,20,30#40,50,");
  const Acquisition acq = acquire(listener);
  ASSERT_EQ(acq.session.records.size(), 1u);
  EXPECT_EQ(acq.session.records[0], (AngleTriple{10, 20, 30}));
  EXPECT_TRUE(acq.session.diagnostics.trailing_partial);
  EXPECT_EQ(acq.session.dt, kDefaultDt);
  EXPECT_EQ(acq.datagrams, 1u);
  EXPECT_NE(acq.session.source.find(std::to_string(listener.port())), std::string::npos);
}

TEST(AcquireSession, PropagatesEmptyAcquisition) {
  UdpListener listener = UdpListener::on_free_port(quick(0.05));
  EXPECT_THROW(acquire_session(listener), Error);
}

}  // namespace
}  // namespace hipjerk
