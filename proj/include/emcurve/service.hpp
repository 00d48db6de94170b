#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "emcurve/sweep.hpp"

namespace emcurve {

struct HttpResponse {
  int status = 200;
  std::string body;
  std::map<std::string, std::string> headers;
};

using QueryParams = std::map<std::string, std::string>;

struct ServiceConfig {
  std::optional<std::filesystem::path> field_path;  // default for /api/field
  std::chrono::milliseconds timeout{10000};
  int retry_after_seconds = 2;
};

/// JSON text with every floating-point number written as %.17g.
std::string dump_json17(const nlohmann::json& j);

/// Handlers for the HTTP facade. Every handler is a pure function of its
/// query; the only shared state is the default field, read once in the
/// constructor and never modified.
class Service {
public:
  explicit Service(ServiceConfig config);

  /// GET /api/curve?ax&ay&bx&by&cx&cy[&domain=x0,x1,y0,y1][&cell=h]
  HttpResponse curve(const QueryParams& q) const;
  /// GET /api/field[?path=file.csv]
  HttpResponse field(const QueryParams& q) const;
  /// GET /api/colormap
  HttpResponse colormap() const;

  /// Routes by path; unknown paths give 404.
  HttpResponse handle(const std::string& path, const QueryParams& q) const;

  const ServiceConfig& config() const { return config_; }

private:
  ServiceConfig config_;
  std::optional<EpsilonField> default_field_;
  std::string default_field_error_;
};

/// HTTP front end for a Service, with permissive CORS headers.
class HttpServer {
public:
  explicit HttpServer(const Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds host:port (port 0 picks a free port) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called from another thread.
  void listen();
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Blocking convenience wrapper: bind and listen.
void serve(const Service& service, const std::string& host, int port);

}  // namespace emcurve
