#include "replab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "replab/chaos_certify.hpp"
#include "replab/diagram.hpp"
#include "replab/errors.hpp"
#include "replab/game_model.hpp"
#include "replab/interval_maps.hpp"
#include "replab/orbit_engine.hpp"

namespace replab {

namespace {

using json = nlohmann::ordered_json;

struct IoError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string model = "II";
  std::optional<std::string> q;
  std::optional<double> ga;
  std::optional<double> gb;
  std::optional<std::string> delta;
  double x0 = 0.3;
  std::size_t steps = 100;
  std::string res = "400x300";
  bool bifurcation = false;
  bool overlay = false;
  std::string out = "replicator_lab";
  std::size_t burn_in = 20000;
  std::size_t samples = 200;
  std::size_t max_period = 8;
};

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw DomainError("not a number: '" + text + "'");
  return v;
}

Range parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const double v = parse_real(text);
    return {v, v};
  }
  return {parse_real(text.substr(0, colon)), parse_real(text.substr(colon + 1))};
}

std::pair<std::size_t, std::size_t> parse_resolution(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw DomainError("resolution must look like WxH");
  const double w = parse_real(text.substr(0, x));
  const double h = parse_real(text.substr(x + 1));
  if (!(w >= 1 && h >= 1) || w != std::floor(w) || h != std::floor(h)) {
    throw DomainError("resolution must be positive integers");
  }
  return {static_cast<std::size_t>(w), static_cast<std::size_t>(h)};
}

unsigned threads_from_env() {
  const char* raw = std::getenv("REPLICATOR_LAB_THREADS");
  if (!raw) return 0;
  const std::string text(raw);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || v <= 0) {
    throw DomainError("REPLICATOR_LAB_THREADS must be a positive integer");
  }
  return static_cast<unsigned>(v);
}

// Game parameters: either gains (s = g_A + g_B) or q alone (s = 1).
struct Normalization {
  double gain_a;
  double gain_b;
  double q;
  double s;
};

Normalization normalization(const RunConfig& c, std::optional<double> q_value) {
  if (c.ga || c.gb) {
    if (q_value) throw DomainError("give either --q or --ga/--gb, not both");
    if (!c.ga || !c.gb) throw DomainError("--ga and --gb must be given together");
    const GameParams p(*c.ga, *c.gb);
    return {p.gain_a(), p.gain_b(), p.equilibrium(), p.normalizer()};
  }
  if (!q_value) throw DomainError("missing --q (or --ga/--gb)");
  const GameParams p = GameParams::normalized(*q_value);
  return {p.gain_a(), p.gain_b(), *q_value, 1.0};
}

double single_q(const RunConfig& c) {
  if (!c.q) throw DomainError("missing --q");
  return parse_real(*c.q);
}

double single_delta(const RunConfig& c) {
  if (!c.delta) throw DomainError("missing --delta");
  const double d = parse_real(*c.delta);
  return StepSize(d).value();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!f) throw IoError("write to '" + path + "' failed");
}

json params_json(const Normalization& n, double delta, Model model) {
  json j;
  j["model"] = to_string(model);
  j["raw"] = {{"gain_a", n.gain_a}, {"gain_b", n.gain_b}, {"delta", delta}};
  j["normalized"] = {{"q", n.q}, {"delta_eff", n.s * delta}};
  return j;
}

json witness_json(const LYWitness& w) {
  return {{"x0", w.x0}, {"images", w.images}, {"orientation", to_string(w.orientation)}};
}

json report_json(const RegimeReport& r) {
  json j;
  j["regime"] = to_string(r.regime);
  const auto& c = r.certificate;
  j["convergence_threshold"] = c.convergence_threshold;
  if (c.max_step) j["max_step"] = *c.max_step;
  if (c.chaos_threshold) {
    j["chaos_threshold"] = *c.chaos_threshold;
    j["chaos_threshold_kind"] = c.chaos_threshold_numeric ? "numeric" : "analytic";
  }
  if (c.two_cycle) {
    j["two_cycle"] = {{"sigma", c.two_cycle->sigma},
                      {"cycle", {c.two_cycle->sigma, 1.0 - c.two_cycle->sigma}},
                      {"multiplier", c.two_cycle->multiplier}};
  }
  if (c.witness) j["witness"] = witness_json(*c.witness);
  return j;
}

// Counts the sign of Sf on an interior grid.
json schwarzian_summary(const IntervalMapSpec& spec) {
  constexpr int kSamples = 999;
  int negative = 0, positive = 0, zero = 0, singular = 0;
  for (int k = 1; k <= kSamples; ++k) {
    const double x = static_cast<double>(k) / (kSamples + 1);
    try {
      const double s = schwarzian(spec, x);
      if (s < 0) ++negative; else if (s > 0) ++positive; else ++zero;
    } catch (const CriticalPointSingularity&) {
      ++singular;
    }
  }
  return {{"samples", kSamples}, {"negative", negative}, {"positive", positive},
          {"zero", zero}, {"singular", singular}};
}

int cmd_iterate(const RunConfig& c, std::ostream& out) {
  const Model model = parse_model(c.model);
  const auto n = normalization(c, c.q ? std::optional(single_q(c)) : std::nullopt);
  const double delta = single_delta(c);
  const IntervalMapSpec spec(model, n.q, n.s * delta);
  const auto orbit = iterate(spec, c.x0, c.steps);
  std::string text = "n,x\n";
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    text += std::to_string(i);
    text += ',';
    text += format_number(orbit[i]);
    text += '\n';
  }
  out << text;
  return kExitOk;
}

int cmd_analyze(const RunConfig& c, std::ostream& out) {
  const Model model = parse_model(c.model);
  const auto n = normalization(c, c.q ? std::optional(single_q(c)) : std::nullopt);
  const double delta = single_delta(c);
  const IntervalMapSpec spec(model, n.q, n.s * delta);

  json j = params_json(n, delta, model);
  json fps = json::array();
  for (const auto& fp : fixed_points(spec)) {
    fps.push_back({{"location", fp.location}, {"multiplier", fp.multiplier},
                   {"classification", to_string(fp.classification)}});
  }
  j["fixed_points"] = fps;
  j["critical_points"] = critical_points(spec);
  j["schwarzian"] = schwarzian_summary(spec);
  j["regime"] = report_json(classify_regime(model, n.q, n.s * delta));
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_certify(const RunConfig& c, std::ostream& out) {
  const Model model = parse_model(c.model);
  const auto n = normalization(c, c.q ? std::optional(single_q(c)) : std::nullopt);
  const double delta = single_delta(c);
  json j = params_json(n, delta, model);
  j["report"] = report_json(classify_regime(model, n.q, n.s * delta));
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_diagram(const RunConfig& c, std::ostream& out) {
  const Model model = parse_model(c.model);
  const auto [width, height] = parse_resolution(c.res);
  const Range raw_delta = parse_range(c.delta.value_or("4:16"));

  if (c.bifurcation) {
    const auto n = normalization(c, c.q ? std::optional(single_q(c)) : std::nullopt);
    const Range d{n.s * raw_delta.lo, n.s * raw_delta.hi};
    if (!(d.lo > 0.0)) throw DomainError("step range must be positive");
    BifurcationOptions opts;
    opts.samples = c.samples;
    opts.burn_in = c.burn_in;
    opts.x0 = c.x0;
    const auto points = bifurcation_scan(model, n.q, d, d.hi > d.lo ? width : 1, opts);
    const std::string csv_path = c.out + ".csv";
    const std::string ppm_path = c.out + ".ppm";
    write_file(csv_path, export_csv(points));
    write_file(ppm_path, render_bifurcation(points, d, width, height));
    out << csv_path << '\n' << ppm_path << '\n';
    return kExitOk;
  }

  if (c.ga || c.gb) throw DomainError("period diagrams take a q range, not gains");
  const Range q = parse_range(c.q.value_or("0:1"));
  PeriodOptions opts;
  opts.burn_in = c.burn_in;
  opts.max_period = c.max_period;
  opts.x0 = c.x0;
  opts.threads = threads_from_env();
  if (opts.max_period == 0) throw DomainError("--max-period must be positive");
  const auto grid = period_diagram(model, raw_delta, q, width, height, opts);
  const std::string csv_path = c.out + ".csv";
  const std::string ppm_path = c.out + ".ppm";
  write_file(csv_path, export_csv(grid));
  write_file(ppm_path, render_image(grid));
  out << csv_path << '\n' << ppm_path << '\n';
  if (c.overlay) {
    const std::string overlay_path = c.out + "_conditions.csv";
    write_file(overlay_path, overlay_csv(grid.q_axis));
    out << overlay_path << '\n';
  }
  return kExitOk;
}

std::string json_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return format_number(v.get<double>());
  throw DomainError("expected a string or number in config");
}

// Fills fields from a JSON object unless the matching flag was given.
void apply_config(RunConfig& c, const std::string& path, const CLI::App& sub) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read config '" + path + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad config JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  auto given = [&](const std::string& flag) {
    try {
      return sub.get_option(flag)->count() > 0;
    } catch (const CLI::OptionNotFound&) {
      return true;  // flag not offered by this subcommand
    }
  };
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "model") { if (!given("--model")) c.model = json_text(v); }
      else if (key == "q") { if (!given("--q")) c.q = json_text(v); }
      else if (key == "ga") { if (!given("--ga")) c.ga = v.get<double>(); }
      else if (key == "gb") { if (!given("--gb")) c.gb = v.get<double>(); }
      else if (key == "delta") { if (!given("--delta")) c.delta = json_text(v); }
      else if (key == "x0") { if (!given("--x0")) c.x0 = v.get<double>(); }
      else if (key == "steps") { if (!given("--steps")) c.steps = v.get<std::size_t>(); }
      else if (key == "res") { if (!given("--res")) c.res = v.get<std::string>(); }
      else if (key == "bifurcation") { if (!given("--bifurcation")) c.bifurcation = v.get<bool>(); }
      else if (key == "overlay_conditions") { if (!given("--overlay-conditions")) c.overlay = v.get<bool>(); }
      else if (key == "out") { if (!given("--out")) c.out = v.get<std::string>(); }
      else if (key == "burn_in") { if (!given("--burn-in")) c.burn_in = v.get<std::size_t>(); }
      else if (key == "samples") { if (!given("--samples")) c.samples = v.get<std::size_t>(); }
      else if (key == "max_period") { if (!given("--max-period")) c.max_period = v.get<std::size_t>(); }
      else throw DomainError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad config value: ") + e.what());
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-time replicator dynamics for 2x2 congestion games"};
  app.require_subcommand(1);

  RunConfig c;
  std::string config_path;
  std::string q_text, delta_text;
  double ga = 0, gb = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", c.model, "Model I, II or III");
    sub->add_option("--q", q_text, "Equilibrium share (diagram: range a:b)");
    sub->add_option("--ga", ga, "Gain g_A");
    sub->add_option("--gb", gb, "Gain g_B");
    sub->add_option("--delta", delta_text, "Raw step (diagram: range a:b)");
    sub->add_option("--x0", c.x0, "Initial share of A");
    sub->add_option("--config", config_path, "JSON config file; flags take precedence");
  };

  auto* it = app.add_subcommand("iterate", "Print an orbit as n,x rows");
  add_common(it);
  it->add_option("--steps", c.steps, "Number of iterations");

  auto* an = app.add_subcommand("analyze", "Fixed points, critical points, Schwarzian sign and regime");
  add_common(an);

  auto* dg = app.add_subcommand("diagram", "Period or bifurcation diagram as CSV and PPM");
  add_common(dg);
  dg->add_option("--res", c.res, "Resolution WxH");
  dg->add_flag("--bifurcation", c.bifurcation, "Bifurcation diagram for a single q");
  dg->add_flag("--overlay-conditions", c.overlay, "Write the model II condition curves");
  dg->add_option("--out", c.out, "Output path prefix");
  dg->add_option("--burn-in", c.burn_in, "Discarded iterations");
  dg->add_option("--samples", c.samples, "Samples per step (bifurcation)");
  dg->add_option("--max-period", c.max_period, "Largest detected period");

  auto* ce = app.add_subcommand("certify", "Classify the regime and search for a period-3 witness");
  add_common(ce);

  std::vector<std::string> argv_store{"replicator_lab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (sub->get_option("--q")->count()) c.q = q_text;
    if (sub->get_option("--delta")->count()) c.delta = delta_text;
    if (sub->get_option("--ga")->count()) c.ga = ga;
    if (sub->get_option("--gb")->count()) c.gb = gb;
    if (!config_path.empty()) apply_config(c, config_path, *sub);

    if (sub == it) return cmd_iterate(c, out);
    if (sub == an) return cmd_analyze(c, out);
    if (sub == dg) return cmd_diagram(c, out);
    return cmd_certify(c, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DynamicsError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDynamics;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace replab
