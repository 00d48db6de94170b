#include "emcurve/service.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

#include <httplib.h>

#include "emcurve/render.hpp"

namespace emcurve {

using nlohmann::json;

namespace {

void dump_into(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += json(k).dump();
        out += ':';
        dump_into(v, out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_into(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_real(v) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

// Bad request input; carried to a 400 response.
struct BadRequest : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

double parse_number(const std::string& name, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const char* begin = text.data();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw BadRequest("parameter " + name + " is not a finite number: '" + text + "'");
  }
  return v;
}

double required(const QueryParams& q, const std::string& name) {
  const auto it = q.find(name);
  if (it == q.end()) throw BadRequest("missing parameter " + name);
  return parse_number(name, it->second);
}

Domain parse_domain(const std::string& text) {
  std::vector<double> v;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(',', start);
    v.push_back(parse_number("domain", text.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (v.size() != 4) throw BadRequest("domain must be x0,x1,y0,y1");
  try {
    return Domain(v[0], v[1], v[2], v[3]);
  } catch (const std::invalid_argument& e) {
    throw BadRequest(e.what());
  }
}

json point_json(Point p) { return json::array({p.x, p.y}); }

HttpResponse json_response(int status, const json& body) {
  return {status, dump_json17(body), {{"Content-Type", "application/json"}}};
}

HttpResponse error_response(int status, const std::string& message) {
  return json_response(status, json{{"error", message}, {"status", status}});
}

json field_json(const EpsilonField& f, const std::string& source) {
  json records = json::array();
  for (const auto& r : f.records) {
    json rec{{"u", r.u}, {"v", r.v}, {"closed", r.closed}};
    if (r.epsilon) rec["epsilon"] = *r.epsilon;
    records.push_back(std::move(rec));
  }
  return json{{"source", source},
              {"count", f.records.size()},
              {"u_values", f.u_values},
              {"v_values", f.v_values},
              {"epsilon0", kEpsilon0},
              {"records", std::move(records)}};
}

// Grids finer than this are refused rather than left to the timeout.
constexpr double kMaxTraceCells = 4.0e6;

}  // namespace

std::string dump_json17(const json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

Service::Service(ServiceConfig config) : config_(std::move(config)) {
  if (!config_.field_path) return;
  try {
    default_field_ = load_field(*config_.field_path);
  } catch (const std::exception& e) {
    default_field_error_ = e.what();
  }
}

HttpResponse Service::curve(const QueryParams& q) const {
  std::optional<Triangle> tri;
  Domain dom;
  double cell = 0.0;
  try {
    const Point a{required(q, "ax"), required(q, "ay")};
    const Point b{required(q, "bx"), required(q, "by")};
    const Point c{required(q, "cx"), required(q, "cy")};
    try {
      tri.emplace(a, b, c);
    } catch (const GeometryError& e) {
      throw BadRequest(e.what());
    }
    if (auto it = q.find("domain"); it != q.end()) dom = parse_domain(it->second);
    cell = dom.width() / 400.0;
    if (auto it = q.find("cell"); it != q.end()) cell = parse_number("cell", it->second);
    if (!(cell > 0.0)) throw BadRequest("cell must be positive");
    if (dom.width() / cell * (dom.height() / cell) > kMaxTraceCells) {
      throw BadRequest("cell too small for the domain");
    }
  } catch (const BadRequest& e) {
    return error_response(400, e.what());
  }

  const Triangle& t = *tri;
  const Deadline deadline(config_.timeout);
  try {
    TraceOptions topts;
    topts.deadline = deadline;
    const auto branches = trace(t, dom, cell, topts);
    const bool closed = is_closed(t, dom);

    json body;
    body["triangle"] = json{{"A", point_json(t.a())}, {"B", point_json(t.b())}, {"C", point_json(t.c())}};
    body["domain"] = json::array({dom.x_min, dom.x_max, dom.y_min, dom.y_max});
    body["cell"] = cell;
    json jb = json::array();
    for (const auto& br : branches) {
      json pts = json::array();
      for (const auto& p : br.points) pts.push_back(point_json(p));
      jb.push_back(json{{"label", br.label}, {"closed", br.closed}, {"points", std::move(pts)}});
    }
    body["branches"] = std::move(jb);
    body["closed"] = closed;

    static const char* const kSides[] = {"BC", "CA", "AB"};
    const IntersectionSet is = side_line_intersections(t);
    json ji = json::array();
    for (int i = 0; i < 6; ++i) {
      if (!is.points[static_cast<std::size_t>(i)]) continue;
      const Point p = *is.points[static_cast<std::size_t>(i)];
      ji.push_back(json{{"label", IntersectionSet::label(i)},
                        {"side", kSides[IntersectionSet::side_of(i)]},
                        {"x", p.x},
                        {"y", p.y}});
    }
    body["intersections"] = std::move(ji);
    body["epsilon0"] = kEpsilon0;

    if (!closed) {
      body["message"] = "curve is open in the domain; epsilon is undefined";
      return json_response(422, body);
    }
    ScanlineOptions sopts;
    sopts.deadline = deadline;
    const EpsilonResult r = epsilon_scanline(t, dom, 1e-4, sopts);
    body["epsilon"] = *r.epsilon;
    body["margin"] = *r.epsilon - kEpsilon0;
    body["area_curve"] = r.area_curve;
    body["area_triangle"] = r.area_triangle;
    body["error_estimate"] = r.error_estimate;
    body["method"] = to_string(r.method);
    return json_response(200, body);
  } catch (const TimeoutError&) {
    HttpResponse resp = error_response(503, "computation exceeded the service timeout; retry later");
    resp.headers["Retry-After"] = std::to_string(config_.retry_after_seconds);
    return resp;
  } catch (const ConvergenceError& e) {
    return error_response(500, e.what());
  }
}

HttpResponse Service::field(const QueryParams& q) const {
  if (auto it = q.find("path"); it != q.end()) {
    const std::filesystem::path p(it->second);
    std::error_code ec;
    if (!std::filesystem::is_regular_file(p, ec)) return error_response(404, "field file not found: " + p.string());
    try {
      return json_response(200, field_json(load_field(p), p.string()));
    } catch (const std::exception& e) {
      return error_response(500, e.what());
    }
  }
  if (default_field_) return json_response(200, field_json(*default_field_, config_.field_path->string()));
  if (!config_.field_path) return error_response(404, "no field configured");
  if (!std::filesystem::exists(*config_.field_path)) {
    return error_response(404, "field file not found: " + config_.field_path->string());
  }
  return error_response(500, default_field_error_);
}

HttpResponse Service::colormap() const {
  const ColorMapSpec spec;
  auto rgb = [](Rgb c) { return json::array({c.r, c.g, c.b}); };
  return json_response(
      200, json{{"eps_min", spec.eps_min},
                {"eps_max", spec.eps_max},
                {"band_count", spec.band_count},
                {"presets", json::array({0.825, 1.0, 2.0, 18.0})},
                {"band_index", "floor((eps - eps_min) / (eps_max - eps_min) * band_count), clamped to band_count - 1; none below eps_min"},
                {"band_hue_deg", "240 * (1 - band / (band_count - 1)), saturation 1, value 1"},
                {"background", rgb(spec.background)},
                {"open_curve", rgb(spec.open_curve)},
                {"degenerate", rgb(spec.degenerate)}});
}

HttpResponse Service::handle(const std::string& path, const QueryParams& q) const {
  if (path == "/api/curve") return curve(q);
  if (path == "/api/field") return field(q);
  if (path == "/api/colormap") return colormap();
  return error_response(404, "no such endpoint: " + path);
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(const Service& service) : impl_(std::make_unique<Impl>()) {
  auto cors = [](httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  };
  impl_->server.Get(R"(/api/.*)", [&service, cors](const httplib::Request& req, httplib::Response& res) {
    QueryParams q;
    for (const auto& [k, v] : req.params) q.emplace(k, v);
    const HttpResponse r = service.handle(req.path, q);
    res.status = r.status;
    for (const auto& [k, v] : r.headers) {
      if (k != "Content-Type") res.set_header(k, v);
    }
    cors(res);
    res.set_content(r.body, "application/json");
  });
  impl_->server.Options(R"(/api/.*)", [cors](const httplib::Request&, httplib::Response& res) {
    cors(res);
    res.status = 204;
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void serve(const Service& service, const std::string& host, int port) {
  HttpServer server(service);
  server.bind(host, port);
  server.listen();
}

}  // namespace emcurve
