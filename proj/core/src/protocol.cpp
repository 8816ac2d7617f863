#include "increval/protocol.hpp"

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <mutex>
#include <thread>

#include "increval/error.hpp"

extern char** environ;

namespace increval {
namespace {

using Clock = std::chrono::steady_clock;

// Writes to a closed pipe must surface as EPIPE rather than kill the process.
void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] {
    struct sigaction action {};
    action.sa_handler = SIG_IGN;
    sigaction(SIGPIPE, &action, nullptr);
  });
}

class FdLineReader {
 public:
  explicit FdLineReader(int fd) : fd_(fd) {}

  std::string read_line(std::chrono::milliseconds timeout) {
    const auto deadline = Clock::now() + timeout;
    for (;;) {
      if (const auto pos = buffer_.find('\n'); pos != std::string::npos) {
        std::string line = buffer_.substr(0, pos);
        buffer_.erase(0, pos + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - Clock::now());
      if (left.count() <= 0) {
        throw Error(ErrorCode::kTimeout, "no response within " +
                                             std::to_string(timeout.count()) + " ms");
      }
      pollfd pfd{fd_, POLLIN, 0};
      const int ready = ::poll(&pfd, 1, static_cast<int>(left.count()));
      if (ready < 0) {
        if (errno == EINTR) continue;
        throw Error(ErrorCode::kIo, std::string("poll failed: ") + std::strerror(errno));
      }
      if (ready == 0) continue;
      char chunk[4096];
      const ssize_t got = ::read(fd_, chunk, sizeof chunk);
      if (got < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        throw Error(ErrorCode::kBrokenPipe, std::string("read failed: ") + std::strerror(errno));
      }
      if (got == 0) throw Error(ErrorCode::kBrokenPipe, "endpoint closed its output stream");
      buffer_.append(chunk, static_cast<std::size_t>(got));
    }
  }

 private:
  int fd_;
  std::string buffer_;
};

void write_all(int fd, std::string_view data, bool is_socket) {
  while (!data.empty()) {
    const ssize_t put = is_socket ? ::send(fd, data.data(), data.size(), MSG_NOSIGNAL)
                                  : ::write(fd, data.data(), data.size());
    if (put < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kBrokenPipe, std::string("write failed: ") + std::strerror(errno));
    }
    data.remove_prefix(static_cast<std::size_t>(put));
  }
}

class SubprocessChannel final : public LineChannel {
 public:
  explicit SubprocessChannel(const std::string& command) {
    ignore_sigpipe();
    int to_child[2];
    int from_child[2];
    if (::pipe2(to_child, O_CLOEXEC) != 0 || ::pipe2(from_child, O_CLOEXEC) != 0) {
      throw Error(ErrorCode::kIo, std::string("pipe failed: ") + std::strerror(errno));
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, to_child[0], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, from_child[1], STDOUT_FILENO);

    // Own process group, so teardown also reaches children the shell forks.
    posix_spawnattr_t attr;
    posix_spawnattr_init(&attr);
    posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
    posix_spawnattr_setpgroup(&attr, 0);

    const char* argv[] = {"sh", "-c", command.c_str(), nullptr};
    const int rc = ::posix_spawn(&pid_, "/bin/sh", &actions, &attr,
                                 const_cast<char* const*>(argv), environ);
    posix_spawn_file_actions_destroy(&actions);
    posix_spawnattr_destroy(&attr);
    ::close(to_child[0]);
    ::close(from_child[1]);
    if (rc != 0) {
      ::close(to_child[1]);
      ::close(from_child[0]);
      throw Error(ErrorCode::kIo, "cannot start '" + command + "': " + std::strerror(rc));
    }
    write_fd_ = to_child[1];
    read_fd_ = from_child[0];
    reader_.emplace(read_fd_);
  }

  ~SubprocessChannel() override {
    ::close(write_fd_);
    ::close(read_fd_);
    int status = 0;
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(pid_, &status, WNOHANG) == pid_) break;
      std::this_thread::sleep_for(10ms);
      if (i == 49) {
        ::kill(-pid_, SIGKILL);
        ::waitpid(pid_, &status, 0);
      }
    }
    // Leftovers of a shell pipeline or background job.
    ::kill(-pid_, SIGKILL);
  }

  void send_line(std::string_view line) override {
    std::string data(line);
    data.push_back('\n');
    write_all(write_fd_, data, false);
  }

  std::string receive_line(std::chrono::milliseconds timeout) override {
    return reader_->read_line(timeout);
  }

 private:
  pid_t pid_ = -1;
  int write_fd_ = -1;
  int read_fd_ = -1;
  std::optional<FdLineReader> reader_;
};

class TcpChannel final : public LineChannel {
 public:
  TcpChannel(const std::string& host, std::uint16_t port) : reader_(-1) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* found = nullptr;
    const std::string service = std::to_string(port);
    if (const int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &found); rc != 0) {
      throw Error(ErrorCode::kIo, "cannot resolve " + host + ": " + ::gai_strerror(rc));
    }
    for (addrinfo* ai = found; ai != nullptr; ai = ai->ai_next) {
      const int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
      if (fd < 0) continue;
      if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
        fd_ = fd;
        break;
      }
      ::close(fd);
    }
    ::freeaddrinfo(found);
    if (fd_ < 0) {
      throw Error(ErrorCode::kIo, "cannot connect to " + host + ":" + service);
    }
    reader_ = FdLineReader(fd_);
  }

  ~TcpChannel() override { ::close(fd_); }

  void send_line(std::string_view line) override {
    std::string data(line);
    data.push_back('\n');
    write_all(fd_, data, true);
  }

  std::string receive_line(std::chrono::milliseconds timeout) override {
    return reader_.read_line(timeout);
  }

 private:
  int fd_ = -1;
  FdLineReader reader_;
};

}  // namespace

EndpointSpec parse_endpoint(std::string_view text) {
  EndpointSpec spec;
  if (text.starts_with("external:")) {
    spec.transport = EndpointSpec::Transport::kSubprocess;
    spec.command = std::string(text.substr(9));
    if (spec.command.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "external endpoint needs a command");
    }
    return spec;
  }
  if (text.starts_with("tcp:")) {
    const std::string_view rest = text.substr(4);
    const auto colon = rest.rfind(':');
    unsigned port = 0;
    if (colon == std::string_view::npos || colon == 0) {
      throw Error(ErrorCode::kInvalidArgument, "expected tcp:<host>:<port>");
    }
    const std::string_view digits = rest.substr(colon + 1);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || port == 0 ||
        port > 65535) {
      throw Error(ErrorCode::kInvalidArgument, "invalid port '" + std::string(digits) + "'");
    }
    spec.transport = EndpointSpec::Transport::kTcp;
    spec.host = std::string(rest.substr(0, colon));
    spec.port = static_cast<std::uint16_t>(port);
    return spec;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown endpoint '" + std::string(text) +
                  "' (expected external:<command> or tcp:<host>:<port>)");
}

std::string describe(const EndpointSpec& spec) {
  if (spec.transport == EndpointSpec::Transport::kTcp) {
    return "tcp:" + spec.host + ":" + std::to_string(spec.port);
  }
  return "external:" + spec.command;
}

std::unique_ptr<LineChannel> spawn_subprocess(const std::string& command) {
  return std::make_unique<SubprocessChannel>(command);
}

std::unique_ptr<LineChannel> connect_tcp(const std::string& host, std::uint16_t port) {
  return std::make_unique<TcpChannel>(host, port);
}

std::unique_ptr<LineChannel> open_channel(const EndpointSpec& spec) {
  if (spec.transport == EndpointSpec::Transport::kTcp) return connect_tcp(spec.host, spec.port);
  return spawn_subprocess(spec.command);
}

nlohmann::json external_call(LineChannel& channel, const nlohmann::json& request,
                             std::chrono::milliseconds timeout) {
  if (!request.contains("id") || !request["id"].is_number_integer()) {
    throw Error(ErrorCode::kInvalidArgument, "request needs an integer id");
  }
  channel.send_line(request.dump());
  const std::string line = channel.receive_line(timeout);

  nlohmann::json response = nlohmann::json::parse(line, nullptr, false);
  if (response.is_discarded() || !response.is_object()) {
    throw Error(ErrorCode::kMalformedResponse, "response is not a JSON object: " + line);
  }
  const auto id = response.find("id");
  if (id == response.end() || !id->is_number_integer()) {
    throw Error(ErrorCode::kMalformedResponse, "response has no integer id",
                ErrorContext{std::nullopt, std::nullopt, "/id", {}});
  }
  if (id->get<std::int64_t>() != request["id"].get<std::int64_t>()) {
    throw Error(ErrorCode::kIdMismatch,
                "expected id " + request["id"].dump() + ", got " + id->dump());
  }
  if (const auto remote = response.find("error"); remote != response.end()) {
    throw Error(ErrorCode::kRemoteError,
                remote->is_string() ? remote->get<std::string>() : remote->dump(),
                ErrorContext{std::nullopt, std::nullopt, "/error", {}});
  }
  return response;
}

Endpoint::Endpoint(std::unique_ptr<LineChannel> channel, std::chrono::milliseconds timeout)
    : channel_(std::move(channel)), timeout_(timeout) {}

Endpoint::Endpoint(const EndpointSpec& spec) : Endpoint(open_channel(spec), spec.timeout) {}

nlohmann::json Endpoint::call(nlohmann::json request) {
  request["id"] = next_id_++;
  return external_call(*channel_, request, timeout_);
}

}  // namespace increval
