#include "replab/diagram.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <thread>

#include "replab/chaos_certify.hpp"
#include "replab/errors.hpp"
#include "replab/orbit_engine.hpp"

namespace replab {

std::vector<double> linspace(Range range, std::size_t n) {
  if (n == 0) throw DomainError("axis needs at least one point");
  if (!std::isfinite(range.lo) || !std::isfinite(range.hi)) throw DomainError("range must be finite");
  if (n == 1) return {range.lo};
  if (!(range.hi > range.lo)) throw DomainError("range must satisfy lo < hi");
  std::vector<double> axis(n);
  const double step = (range.hi - range.lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) axis[i] = range.lo + step * static_cast<double>(i);
  axis.back() = range.hi;
  return axis;
}

std::vector<BifurcationPoint> bifurcation_scan(Model model, double q, Range delta_range, std::size_t delta_steps,
                                               const BifurcationOptions& options) {
  const auto deltas = linspace(delta_range, delta_steps);
  // Validate the whole range before doing any work.
  IntervalMapSpec(model, q, deltas.back());
  std::vector<BifurcationPoint> points;
  points.reserve(deltas.size() * options.samples);
  for (double d : deltas) {
    const IntervalMapSpec spec(model, q, d);
    double x = options.x0;
    for (std::size_t i = 0; i < options.burn_in; ++i) x = eval(spec, x);
    for (std::size_t i = 0; i < options.samples; ++i) {
      x = eval(spec, x);
      points.push_back({d, x});
    }
  }
  return points;
}

DiagramGrid period_diagram(Model model, Range delta_range, Range q_range, std::size_t width, std::size_t height,
                           const PeriodOptions& options) {
  DiagramGrid grid;
  grid.delta_axis = linspace(delta_range, width);
  grid.q_axis = linspace(q_range, height);
  grid.cells.resize(width * height);
  if (!(grid.delta_axis.front() > 0.0)) throw DomainError("step range must be positive");

  const OrbitOptions orbit{options.burn_in, options.tol, options.max_period};
  auto fill_row = [&](std::size_t iq) {
    const double q = grid.q_axis[iq];
    for (std::size_t id = 0; id < width; ++id) {
      auto& cell = grid.cells[iq * width + id];
      const double d = grid.delta_axis[id];
      if (!(q > 0.0 && q < 1.0) || (model == Model::II && d > model_II_max_step_normalized(q) * (1.0 + kMembershipTol))) {
        cell.valid = false;
        continue;
      }
      cell.period = detect_period(IntervalMapSpec(model, q, d), options.x0, orbit).period;
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, height));
  if (threads <= 1) {
    for (std::size_t iq = 0; iq < height; ++iq) fill_row(iq);
    return grid;
  }
  // Rows are interleaved across workers; each writes only its own cells.
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> failures(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t iq = t; iq < height; iq += threads) fill_row(iq);
      } catch (...) {
        failures[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return grid;
}

ColorMap ColorMap::standard() {
  ColorMap m;
  m.periods = {
      {1, {255, 255, 0}}, {2, {255, 0, 0}}, {3, {0, 0, 255}},   {4, {0, 128, 0}},
      {5, {150, 75, 0}},  {6, {0, 255, 255}}, {7, {64, 64, 64}}, {8, {255, 0, 255}},
  };
  return m;
}

Rgb ColorMap::color(const DiagramCell& cell) const {
  if (!cell.valid || !cell.period) return background;
  const auto it = periods.find(*cell.period);
  return it == periods.end() ? beyond : it->second;
}

std::string render_image(const DiagramGrid& grid, const ColorMap& colors) {
  const std::size_t w = grid.width();
  const std::size_t h = grid.height();
  std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  out.reserve(out.size() + 3 * w * h);
  for (std::size_t row = 0; row < h; ++row) {
    const std::size_t iq = h - 1 - row;
    for (std::size_t id = 0; id < w; ++id) {
      const Rgb c = colors.color(grid.at(iq, id));
      out.push_back(static_cast<char>(c.r));
      out.push_back(static_cast<char>(c.g));
      out.push_back(static_cast<char>(c.b));
    }
  }
  return out;
}

std::string render_bifurcation(const std::vector<BifurcationPoint>& points, Range delta_range, std::size_t width,
                               std::size_t height, Rgb ink, Rgb background) {
  if (width == 0 || height == 0) throw DomainError("raster needs a positive size");
  std::vector<char> hit(width * height, 0);
  const double span = delta_range.hi - delta_range.lo;
  for (const auto& p : points) {
    const double u = span > 0.0 ? (p.delta - delta_range.lo) / span : 0.0;
    const auto col = std::min(width - 1, static_cast<std::size_t>(std::max(0.0, u) * static_cast<double>(width)));
    const auto up = std::min(height - 1, static_cast<std::size_t>(std::clamp(p.x, 0.0, 1.0) * static_cast<double>(height)));
    hit[(height - 1 - up) * width + col] = 1;
  }
  std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  for (char h : hit) {
    const Rgb c = h ? ink : background;
    out.push_back(static_cast<char>(c.r));
    out.push_back(static_cast<char>(c.g));
    out.push_back(static_cast<char>(c.b));
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string export_csv(const std::vector<BifurcationPoint>& points) {
  std::string out = "delta,x\n";
  for (const auto& p : points) {
    out += format_number(p.delta);
    out += ',';
    out += format_number(p.x);
    out += '\n';
  }
  return out;
}

std::string export_csv(const DiagramGrid& grid) {
  std::string out = "delta,q,period\n";
  for (std::size_t iq = 0; iq < grid.height(); ++iq) {
    for (std::size_t id = 0; id < grid.width(); ++id) {
      const auto& cell = grid.at(iq, id);
      out += format_number(grid.delta_axis[id]);
      out += ',';
      out += format_number(grid.q_axis[iq]);
      out += ',';
      if (cell.valid && cell.period) out += std::to_string(*cell.period);
      out += '\n';
    }
  }
  return out;
}

std::string overlay_csv(const std::vector<double>& q_axis) {
  std::string out = "q,f1b6,f226\n";
  for (double q : q_axis) {
    out += format_number(q);
    out += ',';
    if (q > 0.0 && q < 1.0) {
      const double qc = std::min(q, 1.0 - q);
      if (auto t = f1b6_threshold(qc)) out += format_number(*t);
      out += ',';
      out += format_number(F_unit_root(qc));
    } else {
      out += ',';
    }
    out += '\n';
  }
  return out;
}

}  // namespace replab
