#include "emcurve/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace emcurve {

std::vector<double> GridRange::values() const {
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("grid range needs step > 0 and hi >= lo");
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  for (long k = 0; k <= n; ++k) out.push_back(lo + static_cast<double>(k) * step);
  return out;
}

namespace {

std::optional<double> parse_real(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

GridRange GridRange::parse(const std::string& text) {
  std::vector<std::string_view> parts;
  std::string_view rest(text);
  for (;;) {
    const auto pos = rest.find(':');
    parts.push_back(rest.substr(0, pos));
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  if (parts.size() != 3) throw std::invalid_argument("range must be lo:hi:step, got " + text);
  const auto lo = parse_real(parts[0]), hi = parse_real(parts[1]), step = parse_real(parts[2]);
  if (!lo || !hi || !step) throw std::invalid_argument("range must be numeric: " + text);
  GridRange r{*lo, *hi, *step};
  r.values();  // validates
  return r;
}

SweepConfig SweepConfig::full() {
  SweepConfig c;
  c.u.step = 1.0;
  c.v.step = 1.0;
  c.pixel_step = 1.0;
  return c;
}

EpsilonField EpsilonField::from_records(std::vector<SweepRecord> records) {
  EpsilonField f;
  for (const auto& r : records) {
    f.u_values.push_back(r.u);
    f.v_values.push_back(r.v);
  }
  for (auto* axis : {&f.u_values, &f.v_values}) {
    std::sort(axis->begin(), axis->end());
    axis->erase(std::unique(axis->begin(), axis->end()), axis->end());
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const SweepRecord& a, const SweepRecord& b) { return a.v != b.v ? a.v < b.v : a.u < b.u; });
  f.records = std::move(records);
  return f;
}

SweepRecord sweep_cell(const SweepConfig& config, double u, double v) {
  const Triangle t({u, v}, config.B, config.C);
  SweepRecord rec{u, v, false, std::nullopt};
  if (config.method == EpsilonMethod::pixel) {
    const EpsilonResult r = epsilon_pixel(t, PixelGridSpec(config.pixel_domain, config.pixel_step));
    rec.closed = r.closed;
    rec.epsilon = r.epsilon;
  } else {
    try {
      rec.epsilon = epsilon_scanline(t, config.pixel_domain, config.scanline_tol).epsilon;
      rec.closed = true;
    } catch (const OpenCurveError&) {
      rec.closed = false;
    }
  }
  return rec;
}

EpsilonField sweep(const SweepConfig& config) {
  const std::vector<double> us = config.u.values();
  std::vector<double> vs;
  for (double v : config.v.values()) {
    if (std::abs(v) > 1e-9 * config.v.step) vs.push_back(v);
  }

  std::vector<std::vector<SweepRecord>> rows(vs.size());
  parallel_for(vs.size(), resolve_threads(config.threads), [&](std::size_t j) {
    std::vector<SweepRecord> row;
    row.reserve(us.size());
    for (double u : us) {
      try {
        row.push_back(sweep_cell(config, u, vs[j]));
      } catch (const GeometryError&) {
        // A on the line BC: not a triangle, no record.
      }
    }
    rows[j] = std::move(row);
  });

  std::vector<SweepRecord> records;
  for (auto& row : rows) records.insert(records.end(), row.begin(), row.end());
  return EpsilonField::from_records(std::move(records));
}

ConjectureReport verify_conjecture(const EpsilonField& field, double epsilon0, double slack) {
  if (!(slack >= 0.0)) throw std::invalid_argument("slack must be non-negative");
  ConjectureReport report;
  for (const auto& r : field.records) {
    ++report.cells_tested;
    if (!r.closed || !r.epsilon) continue;
    ++report.cells_closed;
    if (!report.minimum || *r.epsilon < *report.minimum->epsilon) report.minimum = r;
    if (*r.epsilon < epsilon0 - slack) report.violations.push_back(r);
  }
  return report;
}

FieldParseError::FieldParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string field_to_csv(const EpsilonField& field) {
  std::string out = "u,v,closed,epsilon\n";
  for (const auto& r : field.records) {
    out += format_real(r.u);
    out += ',';
    out += format_real(r.v);
    out += r.closed ? ",true," : ",false,";
    if (r.epsilon) out += format_real(*r.epsilon);
    out += '\n';
  }
  return out;
}

EpsilonField field_from_csv(std::string_view text) {
  std::vector<SweepRecord> records;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != "u,v,closed,epsilon") throw FieldParseError(line_no, "expected header u,v,closed,epsilon");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;

    std::vector<std::string_view> cols;
    for (;;) {
      const auto pos = line.find(',');
      cols.push_back(line.substr(0, pos));
      if (pos == std::string_view::npos) break;
      line.remove_prefix(pos + 1);
    }
    if (cols.size() != 4) throw FieldParseError(line_no, "expected 4 columns");

    SweepRecord r;
    const auto u = parse_real(cols[0]);
    if (!u) throw FieldParseError(line_no, "u is not a number");
    const auto v = parse_real(cols[1]);
    if (!v) throw FieldParseError(line_no, "v is not a number");
    r.u = *u;
    r.v = *v;
    if (cols[2] == "true") {
      r.closed = true;
    } else if (cols[2] != "false") {
      throw FieldParseError(line_no, "closed must be true or false");
    }
    if (cols[3].empty()) {
      if (r.closed) throw FieldParseError(line_no, "closed cell without epsilon");
    } else {
      if (!r.closed) throw FieldParseError(line_no, "open cell with epsilon");
      const auto e = parse_real(cols[3]);
      if (!e) throw FieldParseError(line_no, "epsilon is not a number");
      r.epsilon = *e;
    }
    records.push_back(r);
  }
  if (!header_seen) throw FieldParseError(1, "empty file");
  return EpsilonField::from_records(std::move(records));
}

void save_field(const EpsilonField& field, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << field_to_csv(field);
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

EpsilonField load_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return field_from_csv(ss.str());
}

}  // namespace emcurve
