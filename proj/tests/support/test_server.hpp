#pragma once

#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <thread>

#include "httplib.h"

#include "assograph/service.hpp"

namespace fixture {

/// Service on an ephemeral loopback port with a private data directory.
class TestServer {
 public:
  explicit TestServer(assograph::ServiceConfig config = {}) {
    std::random_device rd;
    data_dir_ = std::filesystem::temp_directory_path() /
                ("assograph-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    config.data_dir = data_dir_.string();
    service_ = std::make_unique<assograph::Service>(config);
    service_->install(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  TestServer(const TestServer&) = delete;
  TestServer& operator=(const TestServer&) = delete;

  ~TestServer() {
    server_.stop();
    thread_.join();
    std::error_code ec;
    std::filesystem::remove_all(data_dir_, ec);
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(10, 0);
    return c;
  }

  int port() const { return port_; }
  const std::filesystem::path& data_dir() const { return data_dir_; }
  assograph::Service& service() { return *service_; }

 private:
  std::filesystem::path data_dir_;
  std::unique_ptr<assograph::Service> service_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace fixture
