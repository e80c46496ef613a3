#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "replab/interval_maps.hpp"

namespace replab {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

// Inclusive endpoints; a single point when n == 1.
std::vector<double> linspace(Range range, std::size_t n);

struct BifurcationOptions {
  std::size_t samples = 200;
  std::size_t burn_in = 20000;
  double x0 = 0.3;
};

struct BifurcationPoint {
  double delta;
  double x;
};

// delta_steps grid values over delta_range (normalized units). Model II
// ranges beyond the step bound raise StepValidityError.
std::vector<BifurcationPoint> bifurcation_scan(Model model, double q, Range delta_range, std::size_t delta_steps,
                                               const BifurcationOptions& options = {});

struct DiagramCell {
  std::optional<std::size_t> period;
  bool valid = true;
};

struct DiagramGrid {
  std::vector<double> delta_axis;
  std::vector<double> q_axis;
  // q-major: cells[iq * delta_axis.size() + id], q ascending.
  std::vector<DiagramCell> cells;

  std::size_t width() const { return delta_axis.size(); }
  std::size_t height() const { return q_axis.size(); }
  const DiagramCell& at(std::size_t iq, std::size_t id) const { return cells[iq * width() + id]; }
};

struct PeriodOptions {
  std::size_t burn_in = 20000;
  double tol = 1e-10;
  std::size_t max_period = 8;
  double x0 = 0.3;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Cells with q outside (0,1), or a model II step above that row's bound, are
// marked invalid.
DiagramGrid period_diagram(Model model, Range delta_range, Range q_range, std::size_t width, std::size_t height,
                           const PeriodOptions& options = {});

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb&) const = default;
};

struct ColorMap {
  std::map<std::size_t, Rgb> periods;
  Rgb beyond{255, 255, 255};  // periods without an entry
  Rgb background{0, 0, 0};    // no period, invalid

  static ColorMap standard();
  Rgb color(const DiagramCell& cell) const;
};

// Binary P6 pixmap, highest q in the top row, delta increasing to the right.
std::string render_image(const DiagramGrid& grid, const ColorMap& colors = ColorMap::standard());

// Attractor samples binned onto a width x height raster: delta to the right,
// x = 1 in the top row. Hit pixels get `ink`, the rest the background.
std::string render_bifurcation(const std::vector<BifurcationPoint>& points, Range delta_range, std::size_t width,
                               std::size_t height, Rgb ink = {255, 255, 255}, Rgb background = {0, 0, 0});

// Shortest decimal that reads back to the same double.
std::string format_number(double v);

std::string export_csv(const std::vector<BifurcationPoint>& points);
std::string export_csv(const DiagramGrid& grid);

// q, f1b6 threshold, root of F = 1 (model II condition curves); fields are
// empty where a curve is undefined.
std::string overlay_csv(const std::vector<double>& q_axis);

}  // namespace replab
