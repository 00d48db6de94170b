#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "emcurve/area_epsilon.hpp"
#include "emcurve/curve_tracing.hpp"

namespace emcurve {

/// Inclusive arithmetic progression lo, lo + step, ..., <= hi.
struct GridRange {
  double lo = -600.0;
  double hi = 600.0;
  double step = 50.0;

  std::vector<double> values() const;
  /// Parses "lo:hi:step".
  static GridRange parse(const std::string& text);
};

/// Vertex A = (u, v) moves over the grid while B and C stay fixed.
struct SweepConfig {
  GridRange u{};
  GridRange v{};
  Point B{-100.0, 0.0};
  Point C{100.0, 0.0};
  Domain pixel_domain = Domain::sweep_default();
  double pixel_step = 2.0;
  EpsilonMethod method = EpsilonMethod::pixel;
  double scanline_tol = 1e-4;
  int threads = 0;  // 0: EMCURVE_THREADS or hardware concurrency

  /// Unit grid steps and unit pixels over the same ranges.
  static SweepConfig full();
};

struct SweepRecord {
  double u = 0.0;
  double v = 0.0;
  bool closed = false;
  std::optional<double> epsilon;  // present iff closed

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

/// Records in (v, u) lexicographic order; u_values / v_values are the sorted
/// distinct coordinates present.
struct EpsilonField {
  std::vector<double> u_values;
  std::vector<double> v_values;
  std::vector<SweepRecord> records;

  static EpsilonField from_records(std::vector<SweepRecord> records);
  friend bool operator==(const EpsilonField&, const EpsilonField&) = default;
};

/// One record per non-degenerate cell (the v = 0 row is skipped). Rows are
/// the parallel work units and results land in index order, so the output
/// does not depend on the worker count.
EpsilonField sweep(const SweepConfig& config);

/// The epsilon of a single sweep cell, as `sweep` computes it.
SweepRecord sweep_cell(const SweepConfig& config, double u, double v);

struct ConjectureReport {
  std::size_t cells_tested = 0;
  std::size_t cells_closed = 0;
  std::optional<SweepRecord> minimum;
  std::vector<SweepRecord> violations;

  bool verified() const { return violations.empty(); }
};

ConjectureReport verify_conjecture(const EpsilonField& field, double epsilon0, double slack);

class FieldParseError : public std::runtime_error {
public:
  FieldParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// CSV with header "u,v,closed,epsilon"; reals with 17 significant digits,
/// epsilon empty for open cells.
std::string field_to_csv(const EpsilonField& field);
EpsilonField field_from_csv(std::string_view text);

void save_field(const EpsilonField& field, const std::filesystem::path& path);
EpsilonField load_field(const std::filesystem::path& path);

std::string format_real(double v);

}  // namespace emcurve
