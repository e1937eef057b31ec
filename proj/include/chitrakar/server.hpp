#pragma once

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "error.hpp"
#include "pipeline.hpp"
#include "uncross.hpp"

namespace chitrakar {

inline constexpr int kApiSchemaVersion = 1;

// JSON metadata served by GET /candidates.
inline nlohmann::json candidates_json(const std::vector<CandidateRecord>& records) {
  auto arr = nlohmann::json::array();
  for (const auto& r : records)
    arr.push_back({{"id", r.id},
                   {"seed", r.seed},
                   {"points", r.curve.size()},
                   {"tour_length_px", r.tour_length},
                   {"est_time_min", r.est_time_min}});
  return arr;
}

// HTTP endpoints for the gallery:
//   GET  /candidates          metadata array
//   GET  /candidates/{id}.svg curve image
//   POST /select {"id": int}  first valid selection wins
//   GET  /healthz
// and, when a UI directory is given, its static files at /.
class SelectionServer {
 public:
  explicit SelectionServer(const std::vector<CandidateRecord>& records,
                           std::optional<std::filesystem::path> ui_dir = std::nullopt)
      : records_(records) {
    if (records_.empty()) throw InvalidArgument("no candidates to serve");
    for (const auto& r : records_)
      if (!verify_jordan(r.curve.tour(), r.curve.points()).empty())
        throw InvariantError("candidate " + std::to_string(r.id) + " is not a Jordan curve");
    // httplib also sets SO_REUSEPORT, which would let a second server share a busy port.
    server_.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
    });
    routes(ui_dir);
  }

  SelectionServer(const SelectionServer&) = delete;
  SelectionServer& operator=(const SelectionServer&) = delete;

  ~SelectionServer() { stop(); }

  // Binds and starts serving in a background thread. Port 0 picks a free port.
  // Returns the bound port.
  int start(const std::string& host, int port) {
    if (port == 0) {
      port_ = server_.bind_to_any_port(host);
    } else {
      port_ = server_.bind_to_port(host, port) ? port : -1;
    }
    if (port_ < 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    return port_;
  }

  int port() const noexcept { return port_; }

  // Blocks until a valid selection arrives.
  std::size_t wait() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return selected_.has_value(); });
    return *selected_;
  }

  std::optional<std::size_t> wait_for(std::chrono::milliseconds timeout) {
    std::unique_lock lock(mutex_);
    cv_.wait_for(lock, timeout, [&] { return selected_.has_value(); });
    return selected_;
  }

  std::optional<std::size_t> selected() const {
    std::lock_guard lock(mutex_);
    return selected_;
  }

  void stop() {
    if (thread_.joinable()) {
      server_.stop();
      thread_.join();
    }
  }

 private:
  void routes(const std::optional<std::filesystem::path>& ui_dir) {
    const std::string version = std::to_string(kApiSchemaVersion);
    server_.set_logger([this](const httplib::Request& req, const httplib::Response& res) {
      publish_selection(req, res);
    });
    server_.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("ok", "text/plain");
    });
    server_.Get("/candidates", [this, version](const httplib::Request&, httplib::Response& res) {
      res.set_header("X-Schema-Version", version);
      res.set_content(candidates_json(records_).dump(), "application/json");
    });
    server_.Get(R"(/candidates/(\d+)\.svg)", [this](const httplib::Request& req, httplib::Response& res) {
      const auto id = parse_id(req.matches[1].str());
      if (!id) {
        res.status = 404;
        return;
      }
      res.set_content(records_[*id].svg, "image/svg+xml");
    });
    server_.Post("/select", [this](const httplib::Request& req, httplib::Response& res) {
      handle_select(req, res);
    });
    if (ui_dir && std::filesystem::is_directory(*ui_dir)) {
      server_.set_mount_point("/", ui_dir->string());
    } else {
      server_.Get("/", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("gallery UI not bundled; candidate metadata at /candidates\n", "text/plain");
      });
    }
  }

  std::optional<std::size_t> parse_id(const std::string& s) const {
    try {
      const unsigned long v = std::stoul(s);
      if (v < records_.size()) return static_cast<std::size_t>(v);
    } catch (...) {
    }
    return std::nullopt;
  }

  void handle_select(const httplib::Request& req, httplib::Response& res) {
    auto reject = [&](int status, const std::string& why) {
      res.status = status;
      res.set_content(nlohmann::json{{"error", why}}.dump(), "application/json");
    };
    const auto body = nlohmann::json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("id") ||
        !body["id"].is_number_integer())
      return reject(400, "body must be {\"id\": int}");
    const auto id = body["id"].get<long long>();
    if (id < 0 || static_cast<std::size_t>(id) >= records_.size())
      return reject(400, "id out of range");
    {
      std::lock_guard lock(mutex_);
      if (latched_ && *latched_ != static_cast<std::size_t>(id))
        return reject(409, "candidate " + std::to_string(*latched_) + " already selected");
      latched_ = static_cast<std::size_t>(id);
    }
    res.set_content(nlohmann::json{{"selected", id}}.dump(), "application/json");
  }

  // Runs after the response has been written, so waiters never tear down the
  // server before the accepting client has its reply.
  void publish_selection(const httplib::Request& req, const httplib::Response& res) {
    if (req.path != "/select" || res.status != 200) return;
    {
      std::lock_guard lock(mutex_);
      selected_ = latched_;
    }
    cv_.notify_all();
  }

  const std::vector<CandidateRecord>& records_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = -1;
  mutable std::mutex mutex_;
  std::condition_variable cv_;
  std::optional<std::size_t> latched_;   // decided by the first valid POST
  std::optional<std::size_t> selected_;  // published once its reply is sent
};

// Serves until a valid selection arrives and returns the chosen id.
inline std::size_t serve_selection(const std::vector<CandidateRecord>& records, const std::string& host,
                                   int port,
                                   std::optional<std::filesystem::path> ui_dir = std::nullopt) {
  SelectionServer server(records, std::move(ui_dir));
  server.start(host, port);
  return server.wait();
}

}  // namespace chitrakar
