#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entpure/dynamics.hpp"
#include "entpure/graphmc.hpp"
#include "entpure/noise.hpp"
#include "entpure/tensors.hpp"

namespace {

using nlohmann::json;
using namespace entpure;

struct Opts {
  std::string config;
  std::string scheme;
  std::string noise;
  std::string engine = "tensor";
  std::string format;
  std::string out;
  std::string graph;
  std::string fin = "0.26:1.0:0.01";
  std::string pg;
  std::string pm_grid;
  double pm = NAN;
  double fch = NAN;
  double target = NAN;
  int rounds = -1;
  int vertices = 0;
  long long samples = 1000000;
  std::uint64_t seed = 0;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// summary lines only; data files keep full precision
std::string fmts(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

[[noreturn]] void config_error(const std::string& msg) {
  throw std::invalid_argument(msg);
}

Scheme parse_scheme(const std::string& s) {
  if (s == "single") return Scheme::Single;
  if (s == "double") return Scheme::Double;
  config_error("--scheme must be single or double, got \"" + s + "\"");
}

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    config_error("cannot parse " + what + " \"" + s + "\"");
  }
  if (used != s.size()) config_error("cannot parse " + what + " \"" + s + "\"");
  return v;
}

struct NoiseSpec {
  NoiseKind kind = NoiseKind::Uniform;
  bool has_strength = false;
  double strength = 0.0;
};

NoiseSpec parse_noise_spec(const std::string& s, bool need_strength) {
  NoiseSpec spec;
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  if (kind == "uniform")
    spec.kind = NoiseKind::Uniform;
  else if (kind == "kay")
    spec.kind = NoiseKind::Kay;
  else
    config_error("unknown noise kind \"" + kind + "\" (uniform or kay)");
  if (colon != std::string::npos) {
    spec.has_strength = true;
    spec.strength = parse_number(s.substr(colon + 1), "noise strength");
  }
  if (need_strength && !spec.has_strength)
    config_error("--noise needs the form kind:strength, got \"" + s + "\"");
  if (!need_strength && spec.has_strength)
    config_error("this command scans the gate noise; give --noise " + kind +
                 " without a strength");
  return spec;
}

std::vector<double> parse_grid(const std::string& s, const std::string& what) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const auto colon = s.find(':', pos);
    parts.push_back(s.substr(pos, colon - pos));
    if (colon == std::string::npos) break;
    pos = colon + 1;
  }
  if (parts.size() == 1) return {parse_number(parts[0], what)};
  if (parts.size() != 3)
    config_error(what + " must be a number or start:stop:step, got \"" + s +
                 "\"");
  const double start = parse_number(parts[0], what);
  const double stop = parse_number(parts[1], what);
  const double step = parse_number(parts[2], what);
  if (step <= 0.0) config_error(what + " step must be positive");
  if (stop < start) config_error(what + " stop is below start");
  std::vector<double> grid;
  const int count = static_cast<int>((stop - start) / step + 1e-9) + 1;
  for (int i = 0; i < count; ++i) grid.push_back(start + i * step);
  return grid;
}

json noise_json(const std::string& spec, const NoiseParams& np) {
  json t = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(np.p[i][j]);
    t.push_back(row);
  }
  return json{{"spec", spec}, {"p_g", np.p_g()}, {"p_m", np.p_m}, {"table", t}};
}

std::string out_path(const Opts& o, const std::string& cmd,
                     const std::string& ext) {
  if (!o.out.empty()) return o.out;
  const char* dir = std::getenv("ENTPURE_OUT_DIR");
  return std::string(dir ? dir : ".") + "/" + cmd + "." + ext;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) config_error("cannot open output file " + path);
  f << content;
  if (!f) throw std::runtime_error("failed writing " + path);
}

std::string pick_format(const Opts& o, const std::string& fallback) {
  const std::string f = o.format.empty() ? fallback : o.format;
  if (f != "csv" && f != "json")
    config_error("--format must be csv or json, got \"" + f + "\"");
  return f;
}

void require(bool ok, const std::string& msg) {
  if (!ok) config_error(msg);
}

// ---- commands ----

int cmd_tensor(const Opts& o) {
  require(!o.scheme.empty(), "tensor needs --scheme");
  require(!o.noise.empty(), "tensor needs --noise kind:strength");
  require(!std::isnan(o.pm), "tensor needs --pm");
  const std::string format = pick_format(o, "json");
  if (format != "json") config_error("tensor output supports json only");
  const Scheme scheme = parse_scheme(o.scheme);
  const NoiseSpec spec = parse_noise_spec(o.noise, true);
  const NoiseParams np = make_noise(spec.kind, spec.strength, o.pm);
  const PurificationMap map =
      PurificationMap::from_noise(scheme, np, o.engine == "exact");

  json entries;
  if (scheme == Scheme::Single) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) entries[i][j][k] = map.single.s[i][j][k];
  } else {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) entries[i][j][k][l] = map.dbl.d[i][j][k][l];
  }
  const json out{
      {"config",
       {{"command", "tensor"},
        {"scheme", o.scheme},
        {"noise", o.noise},
        {"pm", o.pm},
        {"engine", o.engine},
        {"format", format}}},
      {"scheme", o.scheme},
      {"noise", noise_json(o.noise, np)},
      {"entries", entries}};
  const std::string path = out_path(o, "tensor", "json");
  write_file(path, out.dump(2) + "\n");
  std::cout << "tensor: scheme=" << o.scheme << " engine=" << o.engine
            << " wrote " << path << "\n";
  return 0;
}

int cmd_fixed_points(const Opts& o) {
  require(!o.scheme.empty(), "fixed-points needs --scheme");
  require(!o.noise.empty(), "fixed-points needs --noise kind:strength");
  require(!std::isnan(o.pm), "fixed-points needs --pm");
  const std::string format = pick_format(o, "csv");
  const Scheme scheme = parse_scheme(o.scheme);
  const NoiseSpec spec = parse_noise_spec(o.noise, true);
  const NoiseParams np = make_noise(spec.kind, spec.strength, o.pm);
  const PurificationMap map =
      PurificationMap::from_noise(scheme, np, o.engine == "exact");
  const FixedPointReport rep = fixed_points(map);

  const double fmax = rep.f_max ? (*rep.f_max)[0] : NAN;
  const double fmin = rep.f_min ? *rep.f_min : NAN;
  std::string path;
  if (format == "csv") {
    std::ostringstream csv;
    csv << "scheme,noise,p_m,f_max,f_min,f_mix\n"
        << o.scheme << "," << o.noise << "," << fmt(o.pm) << "," << fmt(fmax)
        << "," << fmt(fmin) << "," << fmt(0.25) << "\n";
    path = out_path(o, "fixed_points", "csv");
    write_file(path, csv.str());
  } else {
    json j{{"config",
            {{"command", "fixed-points"},
             {"scheme", o.scheme},
             {"noise", o.noise},
             {"pm", o.pm},
             {"engine", o.engine},
             {"format", format}}},
           {"noise", noise_json(o.noise, np)},
           {"f_mix", rep.f_mix},
           {"converged", rep.converged},
           {"iterations", rep.iterations}};
    if (rep.f_max) {
      j["f_max"] = *rep.f_max;
      j["f_max_fidelity"] = (*rep.f_max)[0];
    } else {
      j["f_max"] = nullptr;
    }
    j["f_min"] = rep.f_min ? json(*rep.f_min) : json(nullptr);
    path = out_path(o, "fixed_points", "json");
    write_file(path, j.dump(2) + "\n");
  }
  std::cout << "fixed-points: F_max = " << (rep.f_max ? fmts(fmax) : "none")
            << " F_min = " << (rep.f_min ? fmts(fmin) : "none")
            << " F_mix = 0.25, wrote " << path << "\n";
  return 0;
}

int cmd_purify_curve(const Opts& o) {
  require(!o.scheme.empty(), "purify-curve needs --scheme");
  require(!o.noise.empty(), "purify-curve needs --noise kind:strength");
  require(!std::isnan(o.pm), "purify-curve needs --pm");
  const std::string format = pick_format(o, "csv");
  const Scheme scheme = parse_scheme(o.scheme);
  const NoiseSpec spec = parse_noise_spec(o.noise, true);
  const NoiseParams np = make_noise(spec.kind, spec.strength, o.pm);
  const PurificationMap map =
      PurificationMap::from_noise(scheme, np, o.engine == "exact");
  const std::vector<double> grid = parse_grid(o.fin, "--fin");
  for (double f : grid)
    if (f <= 0.25 || f > 1.0)
      config_error("--fin values must lie in (0.25, 1], got " + fmt(f));

  std::vector<double> fout(grid.size(), NAN), succ(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      const StepResult s = apply_map(map, channel_initial_vector(grid[i]));
      fout[i] = s.f[0];
      succ[i] = s.success;
    } catch (const std::runtime_error&) {
      // round never succeeds here; leave the nan row
    }
  }
  std::string path;
  if (format == "csv") {
    std::ostringstream csv;
    csv << "f_in,f_out,success\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      csv << fmt(grid[i]) << "," << fmt(fout[i]) << "," << fmt(succ[i]) << "\n";
    path = out_path(o, "purify_curve", "csv");
    write_file(path, csv.str());
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows.push_back({{"f_in", grid[i]},
                      {"f_out", std::isnan(fout[i]) ? json(nullptr) : json(fout[i])},
                      {"success", succ[i]}});
    const json j{{"config",
                  {{"command", "purify-curve"},
                   {"scheme", o.scheme},
                   {"noise", o.noise},
                   {"pm", o.pm},
                   {"fin", o.fin},
                   {"engine", o.engine},
                   {"format", format}}},
                 {"noise", noise_json(o.noise, np)},
                 {"points", rows}};
    path = out_path(o, "purify_curve", "json");
    write_file(path, j.dump(2) + "\n");
  }
  std::cout << "purify-curve: " << grid.size() << " points, wrote " << path
            << "\n";
  return 0;
}

int cmd_working_range(const Opts& o) {
  require(!o.scheme.empty(), "working-range needs --scheme");
  require(!o.noise.empty(), "working-range needs --noise uniform|kay");
  require(!o.pg.empty(), "working-range needs --pg start:stop:step");
  require(!o.pm_grid.empty(), "working-range needs --pm start:stop:step");
  const std::string format = pick_format(o, "csv");
  const Scheme scheme = parse_scheme(o.scheme);
  const NoiseSpec spec = parse_noise_spec(o.noise, false);
  const std::vector<double> pgs = parse_grid(o.pg, "--pg");
  const std::vector<double> pms = parse_grid(o.pm_grid, "--pm");

  std::ostringstream csv;
  csv << "p_g,p_m,scheme,f_max,f_min,inside\n";
  json rows = json::array();
  long long inside_count = 0;
  for (double pm : pms)
    for (double pg : pgs) {
      const PurificationMap map = PurificationMap::from_noise(
          scheme, make_noise(spec.kind, pg, pm), o.engine == "exact");
      const FixedPointReport rep = fixed_points(map);
      const bool inside = rep.f_max.has_value();
      inside_count += inside;
      const double fmax = rep.f_max ? (*rep.f_max)[0] : NAN;
      const double fmin = rep.f_min ? *rep.f_min : NAN;
      csv << fmt(pg) << "," << fmt(pm) << "," << o.scheme << "," << fmt(fmax)
          << "," << fmt(fmin) << "," << (inside ? 1 : 0) << "\n";
      rows.push_back({{"p_g", pg},
                      {"p_m", pm},
                      {"f_max", rep.f_max ? json(fmax) : json(nullptr)},
                      {"f_min", rep.f_min ? json(fmin) : json(nullptr)},
                      {"inside", inside}});
    }
  std::string path;
  if (format == "csv") {
    path = out_path(o, "working_range", "csv");
    write_file(path, csv.str());
  } else {
    const json j{{"config",
                  {{"command", "working-range"},
                   {"scheme", o.scheme},
                   {"noise", o.noise},
                   {"pg", o.pg},
                   {"pm", o.pm_grid},
                   {"engine", o.engine},
                   {"format", format}}},
                 {"points", rows}};
    path = out_path(o, "working_range", "json");
    write_file(path, j.dump(2) + "\n");
  }
  std::cout << "working-range: " << inside_count << " of "
            << pgs.size() * pms.size() << " points inside, wrote " << path
            << "\n";
  return 0;
}

int cmd_yield(const Opts& o) {
  require(!o.scheme.empty(), "yield needs --scheme");
  require(!o.noise.empty(), "yield needs --noise kind:strength");
  require(!std::isnan(o.pm), "yield needs --pm");
  require(!std::isnan(o.fch), "yield needs --fch");
  require(!std::isnan(o.target), "yield needs --target");
  const std::string format = pick_format(o, "csv");
  const Scheme scheme = parse_scheme(o.scheme);
  const NoiseSpec spec = parse_noise_spec(o.noise, true);
  const NoiseParams np = make_noise(spec.kind, spec.strength, o.pm);
  const PurificationMap map =
      PurificationMap::from_noise(scheme, np, o.engine == "exact");
  const YieldReport rep = yield(map, o.target, o.fch);

  std::string path;
  if (format == "csv") {
    std::ostringstream csv;
    csv << "scheme,p_g,p_m,f_ch,target_f,n_rounds,yield\n"
        << o.scheme << "," << fmt(spec.strength) << "," << fmt(o.pm) << ","
        << fmt(o.fch) << "," << fmt(o.target) << "," << rep.n_rounds << ","
        << fmt(rep.yield) << "\n";
    path = out_path(o, "yield", "csv");
    write_file(path, csv.str());
  } else {
    const json j{{"config",
                  {{"command", "yield"},
                   {"scheme", o.scheme},
                   {"noise", o.noise},
                   {"pm", o.pm},
                   {"fch", o.fch},
                   {"target", o.target},
                   {"engine", o.engine},
                   {"format", format}}},
                 {"noise", noise_json(o.noise, np)},
                 {"n_rounds", rep.n_rounds},
                 {"yield", rep.yield},
                 {"per_round_success", rep.per_round_success}};
    path = out_path(o, "yield", "json");
    write_file(path, j.dump(2) + "\n");
  }
  std::cout << "yield: n_rounds = " << rep.n_rounds
            << " yield = " << fmts(rep.yield) << ", wrote " << path << "\n";
  return 0;
}

int cmd_bounds(const Opts& o) {
  require(!o.noise.empty(), "bounds needs --noise kind:strength");
  const std::string format = pick_format(o, "csv");
  const NoiseSpec spec = parse_noise_spec(o.noise, true);
  const NoiseParams np = make_noise(spec.kind, spec.strength, 0.0);
  const double a = upper_bound_first_order(np, BoundVariant::A);
  const double b = upper_bound_first_order(np, BoundVariant::B);
  const double gap = single_double_gap(np.p_g());

  std::string path;
  if (format == "csv") {
    std::ostringstream csv;
    csv << "noise,variant_a,variant_b,gap";
    if (o.vertices > 0) csv << ",vertices,multi_upper";
    csv << "\n"
        << o.noise << "," << fmt(a) << "," << fmt(b) << "," << fmt(gap);
    if (o.vertices > 0)
      csv << "," << o.vertices << ","
          << fmt(multi_upper_bound(o.vertices, np.p_g()));
    csv << "\n";
    path = out_path(o, "bounds", "csv");
    write_file(path, csv.str());
  } else {
    json j{{"config",
            {{"command", "bounds"},
             {"noise", o.noise},
             {"vertices", o.vertices},
             {"format", format}}},
           {"noise", noise_json(o.noise, np)},
           {"variant_a", a},
           {"variant_b", b},
           {"gap", gap}};
    if (o.vertices > 0)
      j["multi_upper"] = multi_upper_bound(o.vertices, np.p_g());
    path = out_path(o, "bounds", "json");
    write_file(path, j.dump(2) + "\n");
  }
  std::cout << "bounds: F_upper(A) = " << fmts(a) << " F_upper(B) = " << fmts(b)
            << " gap = " << fmts(gap) << ", wrote " << path << "\n";
  return 0;
}

int cmd_mc_graph(const Opts& o) {
  require(!o.graph.empty(), "mc-graph needs --graph file.json");
  require(!o.scheme.empty(), "mc-graph needs --scheme");
  require(!o.noise.empty(), "mc-graph needs --noise kind:strength");
  require(!std::isnan(o.pm), "mc-graph needs --pm");
  require(!std::isnan(o.fch), "mc-graph needs --fch");
  require(o.rounds >= 0, "mc-graph needs --rounds");
  const std::string format = pick_format(o, "csv");

  MCConfig cfg;
  cfg.graph = TwoColorableGraph::from_json_file(o.graph);
  cfg.scheme = parse_scheme(o.scheme);
  const NoiseSpec spec = parse_noise_spec(o.noise, true);
  cfg.noise = make_noise(spec.kind, spec.strength, o.pm);
  cfg.f_ch = o.fch;
  cfg.rounds = o.rounds;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  const MCResult res = mc_purification(cfg);

  std::string path;
  if (format == "csv") {
    std::ostringstream csv;
    csv << "round,samples_in,accepted,fidelity,stderr,acceptance_rate\n";
    for (const RoundStats& st : res.rounds)
      csv << st.round << "," << st.samples_in << "," << st.accepted << ","
          << fmt(st.fidelity) << "," << fmt(st.se) << ","
          << fmt(st.acceptance_rate) << "\n";
    path = out_path(o, "mc_graph", "csv");
    write_file(path, csv.str());
  } else {
    json rows = json::array();
    for (const RoundStats& st : res.rounds)
      rows.push_back({{"round", st.round},
                      {"samples_in", st.samples_in},
                      {"accepted", st.accepted},
                      {"fidelity", st.fidelity},
                      {"stderr", st.se},
                      {"acceptance_rate", st.acceptance_rate}});
    const json j{{"config",
                  {{"command", "mc-graph"},
                   {"graph", o.graph},
                   {"scheme", o.scheme},
                   {"noise", o.noise},
                   {"pm", o.pm},
                   {"fch", o.fch},
                   {"rounds", o.rounds},
                   {"samples", o.samples},
                   {"seed", o.seed},
                   {"format", format}}},
                 {"rounds", rows},
                 {"yield", res.yield}};
    path = out_path(o, "mc_graph", "json");
    write_file(path, j.dump(2) + "\n");
  }
  const RoundStats& last = res.rounds.back();
  std::cout << "mc-graph: final fidelity = " << fmts(last.fidelity)
            << " (se = " << fmts(last.se) << ") yield = " << fmts(res.yield)
            << ", wrote " << path << "\n";
  return 0;
}

// ---- option wiring ----

void add_common(CLI::App* sub, Opts& o, bool with_engine) {
  auto take_last = [](CLI::Option* opt) {
    opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  };
  take_last(sub->add_option("--config", o.config, "JSON file with defaults"));
  take_last(sub->add_option("--format", o.format, "csv or json"));
  take_last(sub->add_option("--out", o.out, "output file path"));
  if (with_engine)
    take_last(sub->add_option("--engine", o.engine,
                              "tensor (label algebra) or exact (density matrix)"));
}

struct Cli {
  CLI::App app{"simulator and analysis toolkit for entanglement purification "
               "with single and double selection"};
  Opts o;

  Cli() {
    app.require_subcommand(1);
    auto take_last = [](CLI::Option* opt) {
      opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    };

    CLI::App* tensor = app.add_subcommand("tensor", "dump a transition tensor");
    add_common(tensor, o, true);
    take_last(tensor->add_option("--scheme", o.scheme, "single or double"));
    take_last(tensor->add_option("--noise", o.noise, "kind:strength"));
    take_last(tensor->add_option("--pm", o.pm, "measurement error"));

    CLI::App* fp = app.add_subcommand("fixed-points",
                                      "locate F_max, F_min, F_mix");
    add_common(fp, o, true);
    take_last(fp->add_option("--scheme", o.scheme, "single or double"));
    take_last(fp->add_option("--noise", o.noise, "kind:strength"));
    take_last(fp->add_option("--pm", o.pm, "measurement error"));

    CLI::App* pc = app.add_subcommand("purify-curve",
                                      "one-round output fidelity vs input");
    add_common(pc, o, true);
    take_last(pc->add_option("--scheme", o.scheme, "single or double"));
    take_last(pc->add_option("--noise", o.noise, "kind:strength"));
    take_last(pc->add_option("--pm", o.pm, "measurement error"));
    take_last(pc->add_option("--fin", o.fin, "input fidelity grid"));

    CLI::App* wr = app.add_subcommand("working-range",
                                      "scan the (p_g, p_m) plane");
    add_common(wr, o, true);
    take_last(wr->add_option("--scheme", o.scheme, "single or double"));
    take_last(wr->add_option("--noise", o.noise, "uniform or kay"));
    take_last(wr->add_option("--pg", o.pg, "gate noise grid start:stop:step"));
    take_last(wr->add_option("--pm", o.pm_grid,
                             "measurement error grid start:stop:step"));

    CLI::App* yd = app.add_subcommand("yield", "rounds and yield to a target");
    add_common(yd, o, true);
    take_last(yd->add_option("--scheme", o.scheme, "single or double"));
    take_last(yd->add_option("--noise", o.noise, "kind:strength"));
    take_last(yd->add_option("--pm", o.pm, "measurement error"));
    take_last(yd->add_option("--fch", o.fch, "channel fidelity"));
    take_last(yd->add_option("--target", o.target, "target fidelity"));

    CLI::App* bd = app.add_subcommand("bounds", "first-order fidelity ceilings");
    add_common(bd, o, false);
    take_last(bd->add_option("--noise", o.noise, "kind:strength"));
    take_last(bd->add_option("--vertices", o.vertices,
                             "also bound an n-vertex state"));

    CLI::App* mc = app.add_subcommand("mc-graph",
                                      "Monte Carlo graph-state purification");
    add_common(mc, o, false);
    take_last(mc->add_option("--graph", o.graph, "graph JSON file"));
    take_last(mc->add_option("--scheme", o.scheme, "single or double"));
    take_last(mc->add_option("--noise", o.noise, "kind:strength"));
    take_last(mc->add_option("--pm", o.pm, "measurement error"));
    take_last(mc->add_option("--fch", o.fch, "channel fidelity"));
    take_last(mc->add_option("--rounds", o.rounds, "purification rounds"));
    take_last(mc->add_option("--samples", o.samples, "attempts per round"));
    take_last(mc->add_option("--seed", o.seed, "RNG seed"));
  }
};

int dispatch(const std::string& name, const Opts& o) {
  if (name == "tensor") return cmd_tensor(o);
  if (name == "fixed-points") return cmd_fixed_points(o);
  if (name == "purify-curve") return cmd_purify_curve(o);
  if (name == "working-range") return cmd_working_range(o);
  if (name == "yield") return cmd_yield(o);
  if (name == "bounds") return cmd_bounds(o);
  if (name == "mc-graph") return cmd_mc_graph(o);
  config_error("unknown command " + name);
}

std::vector<std::string> config_tokens(const std::string& path,
                                       const CLI::App* sub) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    config_error("malformed config file: " + std::string(e.what()));
  }
  if (!j.is_object()) config_error("config file must hold a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : j.items()) {
    if (key == "config") config_error("config file cannot set \"config\"");
    if (sub->get_option_no_throw("--" + key) == nullptr)
      config_error("unknown config key \"" + key + "\"");
    std::string text;
    if (value.is_string())
      text = value.get<std::string>();
    else if (value.is_number() || value.is_boolean())
      text = value.dump();
    else
      config_error("config key \"" + key + "\" must be a scalar");
    tokens.push_back("--" + key + "=" + text);
  }
  return tokens;
}

}  // namespace

int main(int argc, char** argv) {
  // pass 1: find the subcommand and an optional config file
  Cli pass1;
  try {
    pass1.app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return pass1.app.exit(e);
  } catch (const CLI::ParseError& e) {
    pass1.app.exit(e);
    return 2;
  }
  const std::string name = pass1.app.get_subcommands().front()->get_name();

  try {
    if (pass1.o.config.empty()) return dispatch(name, pass1.o);

    // pass 2: config values first, command line flags override
    Cli pass2;
    std::vector<std::string> tokens{argv[0], name};
    for (const std::string& t :
         config_tokens(pass1.o.config, pass2.app.get_subcommand(name)))
      tokens.push_back(t);
    bool past_sub = false;
    for (int i = 1; i < argc; ++i) {
      if (!past_sub) {
        past_sub = argv[i] == name;
        continue;
      }
      tokens.push_back(argv[i]);
    }
    std::vector<char*> ptrs;
    ptrs.reserve(tokens.size());
    for (std::string& t : tokens) ptrs.push_back(t.data());
    try {
      pass2.app.parse(static_cast<int>(ptrs.size()), ptrs.data());
    } catch (const CLI::ParseError& e) {
      pass2.app.exit(e);
      return 2;
    }
    return dispatch(name, pass2.o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return 3;
  }
}
