// emcurve: command-line front end for the Erdos-Mordell curve toolkit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emcurve/algebraic_curve.hpp"
#include "emcurve/area_epsilon.hpp"
#include "emcurve/render.hpp"
#include "emcurve/service.hpp"
#include "emcurve/sweep.hpp"

using namespace emcurve;

namespace {

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw CLI::ValidationError(what, "not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.size() != expected) {
    throw CLI::ValidationError(what, "expected " + std::to_string(expected) + " comma-separated numbers");
  }
  return out;
}

Triangle parse_triangle(const std::string& text) {
  const auto v = parse_list(text, 6, "--triangle");
  return Triangle({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]});
}

Domain parse_domain(const std::string& text) {
  const auto v = parse_list(text, 4, "--domain");
  return Domain(v[0], v[1], v[2], v[3]);
}

std::string fmt(double v) { return format_real(v); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Erdos-Mordell curve toolkit"};
  app.require_subcommand(1);

  // octic
  auto* octic = app.add_subcommand("octic", "Octic polynomial of one sign case, in the canonical frame");
  std::string tri_text, case_text = "+,+,+", eval_text;
  octic->add_option("--triangle", tri_text, "ax,ay,bx,by,cx,cy")->required();
  octic->add_option("--case", case_text, "signs of the three linear forms, e.g. +,-,+");
  octic->add_option("--eval", eval_text, "x,y in the canonical frame");

  // trace
  auto* tr = app.add_subcommand("trace", "Trace the zero level of g as polylines");
  std::string domain_text = "-1000,1000,-1000,1000", out_path;
  double cell = 0.0;
  tr->add_option("--triangle", tri_text, "ax,ay,bx,by,cx,cy")->required();
  tr->add_option("--domain", domain_text, "x0,x1,y0,y1");
  tr->add_option("--cell", cell, "grid cell size (default width/400)");
  tr->add_option("--out", out_path, "CSV output (default stdout)");

  // epsilon
  auto* eps = app.add_subcommand("epsilon", "Area excess of the curve over the triangle");
  std::string method_text = "pixel";
  double step = 0.0, tol = 1e-6;
  int threads = 0;
  eps->add_option("--triangle", tri_text, "ax,ay,bx,by,cx,cy")->required();
  eps->add_option("--method", method_text, "pixel or scanline")->check(CLI::IsMember({"pixel", "scanline"}));
  eps->add_option("--domain", domain_text, "x0,x1,y0,y1");
  auto* step_opt = eps->add_option("--step", step, "pixel size (default width/2000)");
  auto* tol_opt = eps->add_option("--tol", tol, "relative tolerance of the scanline method");
  step_opt->excludes(tol_opt);
  eps->add_option("--threads", threads, "workers for the pixel method");

  // epsilon0
  auto* eps0 = app.add_subcommand("epsilon0", "Area excess for the equilateral triangle");
  double tol0 = 1e-6;
  eps0->add_option("--tol", tol0, "tolerance (>= 1e-9)");

  // sweep
  auto* sw = app.add_subcommand("sweep", "Sweep vertex A over a grid with B(-100,0), C(100,0)");
  std::string u_text = "-600:600:50", v_text = "-600:600:50";
  double pixel_step = 2.0;
  bool full = false;
  sw->add_option("--u", u_text, "lo:hi:step");
  sw->add_option("--v", v_text, "lo:hi:step");
  auto* ps_opt = sw->add_option("--pixel-step", pixel_step, "pixel size");
  sw->add_option("--out", out_path, "field CSV")->required();
  sw->add_option("--threads", threads, "workers (default $EMCURVE_THREADS or all cores)");
  sw->add_option("--method", method_text, "pixel or scanline")->check(CLI::IsMember({"pixel", "scanline"}));
  auto* full_opt = sw->add_flag("--full", full, "unit grid steps and unit pixels over -600..600");
  full_opt->excludes(ps_opt);

  // verify
  auto* ver = app.add_subcommand("verify", "Check a field against eps >= eps0 - slack");
  std::string field_path;
  double epsilon0 = kEpsilon0, slack = 0.01;
  ver->add_option("--field", field_path, "field CSV")->required();
  ver->add_option("--epsilon0", epsilon0, "reference constant");
  ver->add_option("--slack", slack, "allowed shortfall");

  // render-field
  auto* rf = app.add_subcommand("render-field", "Banded heatmap of a field (PPM)");
  ColorMapSpec cmap;
  int cell_px = 8;
  rf->add_option("--field", field_path, "field CSV")->required();
  rf->add_option("--eps-max", cmap.eps_max, "top of the colour range");
  rf->add_option("--eps-min", cmap.eps_min, "bottom of the colour range");
  rf->add_option("--bands", cmap.band_count, "number of bands");
  rf->add_option("--cell-px", cell_px, "pixels per grid cell");
  rf->add_option("--out", out_path, "PPM output")->required();

  // render-curve
  auto* rc = app.add_subcommand("render-curve", "Shaded region, curve and triangle (PPM)");
  int size = 800;
  rc->add_option("--triangle", tri_text, "ax,ay,bx,by,cx,cy")->required();
  rc->add_option("--domain", domain_text, "x0,x1,y0,y1");
  rc->add_option("--size", size, "image width in pixels");
  rc->add_option("--out", out_path, "PPM output")->required();

  // serve
  auto* srv = app.add_subcommand("serve", "HTTP API");
  int port = 8080;
  std::string host = "0.0.0.0";
  double timeout_s = 10.0;
  srv->add_option("--port", port, "TCP port");
  srv->add_option("--host", host, "bind address");
  srv->add_option("--field", field_path, "default field CSV for /api/field");
  srv->add_option("--timeout", timeout_s, "per-request budget in seconds");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*octic) {
      const CanonicalPlacement cp = canonicalize(parse_triangle(tri_text));
      const OcticPolynomial p = build_octic(cp, parse_sign_case(case_text));
      if (!eval_text.empty()) {
        const auto xy = parse_list(eval_text, 2, "--eval");
        std::printf("%s\n", fmt(eval_octic(p, {xy[0], xy[1]})).c_str());
      } else {
        for (const auto& term : p.terms()) std::printf("%d %d %s\n", term.i, term.j, fmt(term.c).c_str());
      }
    } else if (*tr) {
      const Triangle t = parse_triangle(tri_text);
      const Domain dom = parse_domain(domain_text);
      TraceOptions opts;
      opts.threads = resolve_threads(0);
      const auto branches = trace(t, dom, cell > 0.0 ? cell : dom.width() / 400.0, opts);
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot write " + out_path);
      }
      std::ostream& os = out_path.empty() ? std::cout : file;
      os << "branch_id,x,y\n";
      for (const auto& br : branches) {
        for (const auto& p : br.points) os << br.label << ',' << fmt(p.x) << ',' << fmt(p.y) << '\n';
      }
      std::fprintf(stderr, "%zu branch(es), closed in domain: %s\n", branches.size(),
                   is_closed(t, dom) ? "true" : "false");
    } else if (*eps) {
      const Triangle t = parse_triangle(tri_text);
      const Domain dom = parse_domain(domain_text);
      const EpsilonMethod m = parse_epsilon_method(method_text);
      EpsilonResult r;
      if (m == EpsilonMethod::pixel) {
        if (*tol_opt) throw CLI::ValidationError("--tol", "applies to the scanline method");
        r = epsilon_pixel(t, PixelGridSpec(dom, step > 0.0 ? step : dom.width() / 2000.0), resolve_threads(threads));
      } else {
        if (*step_opt) throw CLI::ValidationError("--step", "applies to the pixel method");
        if (!is_closed(t, dom)) {
          r.method = m;
          r.area_triangle = t.area();
        } else {
          r = epsilon_scanline(t, dom, tol);
        }
      }
      std::printf("method %s\n", to_string(r.method).c_str());
      std::printf("closed %s\n", r.closed ? "true" : "false");
      std::printf("epsilon %s\n", r.epsilon ? fmt(*r.epsilon).c_str() : "");
      std::printf("area_curve %s\n", r.closed ? fmt(r.area_curve).c_str() : "");
      std::printf("area_triangle %s\n", fmt(r.area_triangle).c_str());
      if (m == EpsilonMethod::scanline && r.closed) std::printf("error_estimate %s\n", fmt(r.error_estimate).c_str());
    } else if (*eps0) {
      std::printf("%.12f\n", epsilon0_equilateral(tol0));
    } else if (*sw) {
      SweepConfig cfg = full ? SweepConfig::full() : SweepConfig{};
      cfg.u = GridRange::parse(u_text);
      cfg.v = GridRange::parse(v_text);
      if (full) {
        cfg.u.step = 1.0;
        cfg.v.step = 1.0;
      } else {
        cfg.pixel_step = pixel_step;
      }
      cfg.method = parse_epsilon_method(method_text);
      cfg.threads = threads;
      const EpsilonField f = sweep(cfg);
      save_field(f, out_path);
      const auto rep = verify_conjecture(f, kEpsilon0, 0.0);
      std::fprintf(stderr, "%zu cells, %zu closed, minimum %s at (%s, %s)\n", rep.cells_tested, rep.cells_closed,
                   rep.minimum ? fmt(*rep.minimum->epsilon).c_str() : "-",
                   rep.minimum ? fmt(rep.minimum->u).c_str() : "-", rep.minimum ? fmt(rep.minimum->v).c_str() : "-");
    } else if (*ver) {
      const auto rep = verify_conjecture(load_field(field_path), epsilon0, slack);
      std::printf("cells_tested %zu\ncells_closed %zu\n", rep.cells_tested, rep.cells_closed);
      if (rep.minimum) {
        std::printf("min_epsilon %s at %s,%s\n", fmt(*rep.minimum->epsilon).c_str(), fmt(rep.minimum->u).c_str(),
                    fmt(rep.minimum->v).c_str());
      }
      std::printf("violations %zu\n", rep.violations.size());
      for (const auto& r : rep.violations) {
        std::printf("  %s,%s epsilon %s\n", fmt(r.u).c_str(), fmt(r.v).c_str(), fmt(*r.epsilon).c_str());
      }
      return rep.verified() ? 0 : 1;
    } else if (*rf) {
      render_field(load_field(field_path), cmap, cell_px).save_ppm(out_path);
    } else if (*rc) {
      render_curve(parse_triangle(tri_text), parse_domain(domain_text), size).save_ppm(out_path);
    } else if (*srv) {
      ServiceConfig cfg;
      if (!field_path.empty()) cfg.field_path = field_path;
      cfg.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000.0));
      const Service service(cfg);
      std::fprintf(stderr, "listening on %s:%d\n", host.c_str(), port);
      serve(service, host, port);
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "emcurve: %s\n", e.what());
    return 2;
  }
  return 0;
}
