#pragma once

// Newline-delimited JSON line protocol for external labelers and
// continuation generators. One request line out, one response line in; the
// response must echo the request id. A connection carries at most one
// in-flight request.
//
//   labeler request       {"id": 7, "task": "tagging", "tokens": ["a", "b"]}
//   labeler response      {"id": 7, "labels": ["X", "Y"]}  or  {"id": 7, "label": "X"}
//   continuation request  {"id": 3, "prefix": ["a"]}
//   continuation response {"id": 3, "continuation": ["b", "c"]}
//   error response        {"id": 3, "error": "empty prefix"}

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace increval {

using namespace std::chrono_literals;

inline constexpr std::chrono::milliseconds kDefaultCallTimeout = 30s;

struct EndpointSpec {
  enum class Transport { kSubprocess, kTcp };

  Transport transport = Transport::kSubprocess;
  std::string command;  // run through /bin/sh -c
  std::string host;
  std::uint16_t port = 0;
  std::chrono::milliseconds timeout = kDefaultCallTimeout;
};

// Parses "external:<command line>" or "tcp:<host>:<port>".
EndpointSpec parse_endpoint(std::string_view text);
std::string describe(const EndpointSpec& spec);

class LineChannel {
 public:
  virtual ~LineChannel() = default;

  // Throws Error(kBrokenPipe) when the peer is gone.
  virtual void send_line(std::string_view line) = 0;
  // Returns one line without its terminator. Throws Error(kTimeout) or
  // Error(kBrokenPipe) on end of stream.
  virtual std::string receive_line(std::chrono::milliseconds timeout) = 0;
};

// Spawns the command with its stdin/stdout connected to the channel.
std::unique_ptr<LineChannel> spawn_subprocess(const std::string& command);
std::unique_ptr<LineChannel> connect_tcp(const std::string& host, std::uint16_t port);
std::unique_ptr<LineChannel> open_channel(const EndpointSpec& spec);

// Sends `request` (which must carry an integer "id") and returns the parsed
// response. Throws Error(kMalformedResponse) for non-JSON or id-less
// responses, Error(kIdMismatch) when the ids differ and Error(kRemoteError)
// for error responses.
nlohmann::json external_call(LineChannel& channel, const nlohmann::json& request,
                             std::chrono::milliseconds timeout);

// Channel plus request-id bookkeeping.
class Endpoint {
 public:
  Endpoint(std::unique_ptr<LineChannel> channel, std::chrono::milliseconds timeout);
  explicit Endpoint(const EndpointSpec& spec);

  // Assigns the next id to `request` and performs the call.
  nlohmann::json call(nlohmann::json request);

 private:
  std::unique_ptr<LineChannel> channel_;
  std::chrono::milliseconds timeout_;
  std::int64_t next_id_ = 1;
};

}  // namespace increval
