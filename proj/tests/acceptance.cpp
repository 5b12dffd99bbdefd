// Acceptance gate: every release criterion as one selectable check with a
// single PASS/FAIL line.  Run with no argument for the full sweep, or with
// one of 1..10 / "figures".
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "entpure/dynamics.hpp"
#include "entpure/graphmc.hpp"
#include "entpure/oracle.hpp"

using namespace entpure;

namespace {

const std::string kConfigDir = ENTPURE_CONFIG_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

NoiseParams random_noise(std::mt19937& gen, double pg_max, double pm_max) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  NoiseTable t{};
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != 0 || j != 0) s += t[i][j] = u(gen);
  const double total = pg_max * u(gen);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != 0 || j != 0) t[i][j] *= total / s;
  return custom_noise(t, pm_max * u(gen));
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

// ---- criterion 1: label algebra vs density-matrix simulation ----

Outcome criterion_1() {
  std::mt19937 gen(12345);
  double worst = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 100; ++trial) {
    const NoiseParams noise = random_noise(gen, 0.2, 0.1);
    const SingleTensor s = build_single_tensor(noise);
    const SingleTensor se = oracle::simulate_single_round_exact(noise);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          worst = std::max(worst, std::abs(s.s[i][j][k] - se.s[i][j][k]));
    const DoubleTensor d = build_double_tensor(noise);
    const DoubleTensor de = oracle::simulate_double_round_exact(noise);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l)
            worst = std::max(worst, std::abs(d.d[i][j][k][l] - de.d[i][j][k][l]));
  }
  const double dt = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0).count();
  return {worst < 1e-10,
          fmt("max |tensor - exact| = %.3g over 100 random tables, %.1fs",
              worst, dt)};
}

// ---- criterion 2: ideal fixed points ----

Outcome criterion_2() {
  bool ok = true;
  std::string detail;
  for (Scheme s : {Scheme::Single, Scheme::Double}) {
    const auto map = PurificationMap::from_noise(s, uniform_noise(0.0, 0.0));
    const FixedPointReport r = fixed_points(map);
    const double fmax = r.f_max ? (*r.f_max)[0] : -1.0;
    const double fmin = r.f_min ? *r.f_min : -1.0;
    ok = ok && std::abs(fmax - 1.0) < 1e-6 && std::abs(fmin - 0.5) < 1e-6 &&
         std::abs(r.f_mix[0] - 0.25) < 1e-6;
    detail += fmt("%s: F_max=%.9f F_min=%.9f F_mix=%.9f  ",
                  s == Scheme::Single ? "single" : "double", fmax, fmin,
                  r.f_mix[0]);
  }
  return {ok, detail};
}

// ---- criterion 3: round counts ----

Outcome criterion_3() {
  const int want[2][2] = {{4, 2}, {16, 4}};
  const double ps[2] = {0.02, 0.04};
  bool ok = true;
  std::string detail;
  for (int c = 0; c < 2; ++c) {
    const NoiseParams noise = uniform_noise(ps[c], ps[c]);
    const int ns =
        yield(PurificationMap::from_noise(Scheme::Single, noise), 0.9, 0.8).n_rounds;
    const int nd =
        yield(PurificationMap::from_noise(Scheme::Double, noise), 0.9, 0.8).n_rounds;
    ok = ok && ns == want[c][0] && nd == want[c][1];
    detail += fmt("p=%.2f: single=%d (want %d) double=%d (want %d)  ", ps[c],
                  ns, want[c][0], nd, want[c][1]);
  }
  return {ok, detail};
}

// ---- criterion 4: first-order slopes of 1 - F_max ----

Outcome criterion_4() {
  std::vector<double> pgs;
  for (int i = 0; i < 10; ++i) pgs.push_back(0.001 + 0.009 * i / 9.0);
  double slope[2];
  for (Scheme s : {Scheme::Single, Scheme::Double}) {
    std::vector<double> deficit;
    for (double pg : pgs) {
      const auto map = PurificationMap::from_noise(s, uniform_noise(pg, 0.0));
      const auto fp = attracting_fixed_point(map);
      deficit.push_back(fp ? 1.0 - (*fp)[0] : 1.0);
    }
    slope[s == Scheme::Double] = fitted_slope(pgs, deficit);
  }
  const double ts = 16.0 / 15.0, td = 8.0 / 15.0;
  const bool ok_s = std::abs(slope[0] - ts) <= 0.1 * ts;
  const bool ok_d = std::abs(slope[1] - td) <= 0.1 * td;
  return {ok_s && ok_d,
          fmt("single slope=%.4f (want %.4f+-10%%, %s) double slope=%.4f "
              "(want %.4f+-10%%, %s)",
              slope[0], ts, ok_s ? "ok" : "off", slope[1], td,
              ok_d ? "ok" : "off")};
}

// ---- criterion 5: Kay-distribution thresholds ----

Outcome criterion_5() {
  const auto ts = gate_noise_threshold(Scheme::Single, NoiseKind::Kay, 0.0);
  const auto td = gate_noise_threshold(Scheme::Double, NoiseKind::Kay, 0.0);
  if (!ts || !td) return {false, "threshold bisection found no working range"};
  const bool ok = *ts >= 0.03 && *ts <= 0.04 && *td >= 0.04 && *td <= 0.05 &&
                  *ts < 0.053 && *td < 0.053;
  return {ok, fmt("single=%.4f (want [0.03,0.04]) double=%.4f (want "
                  "[0.04,0.05]), both < 0.053",
                  *ts, *td)};
}

// ---- criterion 6: single working range inside double's ----

Outcome criterion_6() {
  int violations = 0, inside_s = 0, inside_d = 0;
  for (int i = 0; i < 50; ++i) {
    const double pg = 0.1 * i / 49.0;
    for (int j = 0; j < 50; ++j) {
      const double pm = 0.05 * j / 49.0;
      const NoiseParams noise = uniform_noise(pg, pm);
      const bool s = inside_working_range(
          PurificationMap::from_noise(Scheme::Single, noise));
      const bool d = inside_working_range(
          PurificationMap::from_noise(Scheme::Double, noise));
      inside_s += s;
      inside_d += d;
      violations += s && !d;
    }
  }
  return {violations == 0,
          fmt("%d violations on 50x50 grid (single inside: %d, double inside: "
              "%d of 2500)",
              violations, inside_s, inside_d)};
}

// ---- criterion 7: 2-vertex Monte Carlo vs the tensor map ----

Outcome criterion_7() {
  const auto g = TwoColorableGraph::from_json_file(kConfigDir + "/bell2.json");
  std::mt19937 gen(777);
  bool ok = true;
  std::string detail;
  const long long n = 1000000;
  for (int setting = 0; setting < 5; ++setting) {
    const NoiseParams noise = random_noise(gen, 0.1, 0.05);
    const Scheme scheme = setting % 2 ? Scheme::Double : Scheme::Single;
    const NoiseSampler sampler(noise);
    const auto map = PurificationMap::from_noise(scheme, noise);

    const double f = 0.9, e = (1.0 - f) / 3.0;
    const double clean = f * f + 3.0 * e * e;
    BellVector v{clean, (1 - clean) / 3, (1 - clean) / 3, (1 - clean) / 3};
    for (int round = 1; round <= 2; ++round) {
      v = apply_map(map, v).f;
      Rng rng = substream(1000 + static_cast<std::uint64_t>(setting),
                          static_cast<std::uint64_t>(round), 0);
      long long zero = 0;
      for (long long t = 0; t < n; ++t)
        if (sample_purified(g, scheme, sampler, f, round, rng).mu == 0) ++zero;
      const double fid = static_cast<double>(zero) / static_cast<double>(n);
      const double se =
          std::sqrt(fid * (1.0 - fid) / static_cast<double>(n));
      const double dev = std::abs(fid - v[0]);
      if (dev > 3.0 * se) {
        ok = false;
        detail += fmt("setting %d round %d: |%.5f - %.5f| > 3se=%.5f  ",
                      setting, round, fid, v[0], 3.0 * se);
      }
    }
  }
  if (ok) detail = "5 settings x 2 rounds within 3 binomial se at 1e6 samples";
  return {ok, detail};
}

// ---- criteria 8-10: 7-vertex Monte Carlo ----

double plateau_fidelity(const TwoColorableGraph& g, Scheme scheme, double p,
                        int rounds, long long samples) {
  MCConfig cfg;
  cfg.graph = g;
  cfg.scheme = scheme;
  cfg.noise = uniform_noise(p, p);
  cfg.f_ch = 0.98;
  cfg.rounds = rounds;
  cfg.samples = samples;
  cfg.seed = 4242;
  try {
    return mc_purification(cfg).rounds.back().fidelity;
  } catch (const std::runtime_error&) {
    return 0.0;  // statistics exhausted: the plateau has collapsed
  }
}

Outcome criterion_8() {
  const auto g = TwoColorableGraph::from_json_file(kConfigDir + "/steane7.json");
  const double lo = 0.03, step = 0.0025;
  const int npoints = 28;  // up to p = 0.0975
  double thr[2] = {0.0, 0.0};
  for (Scheme scheme : {Scheme::Single, Scheme::Double}) {
    double last_good = 0.0;
    for (int i = 0; i < npoints; ++i) {
      const double p = lo + step * i;
      if (plateau_fidelity(g, scheme, p, 30, 100000) < 0.45) break;
      last_good = p;
    }
    thr[scheme == Scheme::Double] = last_good;
  }
  bool separation = false;
  for (int i = 0; i < npoints; ++i) {
    const double p = lo + step * i;
    if (p >= 0.04 && p <= 0.07 && p > thr[0] + 1e-12 && p <= thr[1] + 1e-12)
      separation = true;
  }
  const bool gap_ok = thr[1] - thr[0] >= 0.02 - 1e-9;
  return {separation && gap_ok,
          fmt("single threshold=%.4f double threshold=%.4f gap=%.4f (want "
              ">= 0.02), single collapses in [0.04,0.07] while double "
              "purifies: %s",
              thr[0], thr[1], thr[1] - thr[0], separation ? "yes" : "no")};
}

Outcome criterion_9() {
  const auto g = TwoColorableGraph::from_json_file(kConfigDir + "/steane7.json");
  MCConfig cfg;
  cfg.graph = g;
  cfg.scheme = Scheme::Double;
  cfg.noise = uniform_noise(0.005, 0.0);
  cfg.f_ch = 0.98;
  cfg.rounds = 10;
  cfg.samples = 200000;
  cfg.seed = 7;
  const RoundStats st = mc_purification(cfg).rounds.back();
  const double bound = multi_upper_bound(7, 0.005);
  const double tol = 3.0 * st.se + 5.0 * 0.005 * 0.005;
  const double dev = std::abs(st.fidelity - bound);
  return {dev <= tol, fmt("plateau=%.6f bound=%.6f |dev|=%.2g tol=%.2g",
                          st.fidelity, bound, dev, tol)};
}

Outcome criterion_10() {
  const auto g = TwoColorableGraph::from_json_file(kConfigDir + "/steane7.json");
  MCConfig cfg;
  cfg.graph = g;
  cfg.noise = uniform_noise(0.0, 0.0);
  cfg.f_ch = 0.9;
  cfg.rounds = 0;
  cfg.samples = 1000000;
  cfg.seed = 21;
  const RoundStats st = mc_purification(cfg).rounds.front();
  const double expect = std::pow(0.9, 7);
  const double tol = 3.0 * st.se + 0.01;
  const double dev = std::abs(st.fidelity - expect);
  return {dev <= tol, fmt("F_in=%.5f expected %.5f |dev|=%.2g tol=%.2g",
                          st.fidelity, expect, dev, tol)};
}

// ---- figure-level qualitative shapes ----

Outcome criterion_figures() {
  bool ok = true;
  std::string detail;

  // purification curve: above the diagonal and monotone on (1/2, 1)
  const auto ideal = PurificationMap::from_noise(Scheme::Single, uniform_noise(0.0, 0.0));
  double prev = 0.0;
  for (double f = 0.55; f <= 0.951; f += 0.05) {
    const double out = apply_map(ideal, channel_initial_vector(f)).f[0];
    if (out < f - 1e-12 || out < prev) {
      ok = false;
      detail += fmt("curve shape broken at F=%.2f  ", f);
    }
    prev = out;
  }

  // fixed-point curves: F_max falls with noise, double dominates single,
  // F_min rises with noise
  double last_s = 2.0, last_d = 2.0, last_min = 0.0;
  for (double pg = 0.0; pg <= 0.0201; pg += 0.005) {
    const auto ms = PurificationMap::from_noise(Scheme::Single, uniform_noise(pg, 0.0));
    const auto md = PurificationMap::from_noise(Scheme::Double, uniform_noise(pg, 0.0));
    const auto rs = fixed_points(ms), rd = fixed_points(md);
    if (!rs.f_max || !rd.f_max || !rs.f_min) {
      ok = false;
      detail += fmt("fixed points missing at pg=%.3f  ", pg);
      continue;
    }
    const double fs = (*rs.f_max)[0], fd = (*rd.f_max)[0];
    if (fs > last_s + 1e-12 || fd > last_d + 1e-12 || fd < fs - 1e-12 ||
        *rs.f_min < last_min - 1e-12) {
      ok = false;
      detail += fmt("fixed-point ordering broken at pg=%.3f  ", pg);
    }
    last_s = fs;
    last_d = fd;
    last_min = *rs.f_min;
  }

  // yields: double needs fewer rounds and wastes fewer pairs here
  const NoiseParams np = uniform_noise(0.02, 0.02);
  const auto ys = yield(PurificationMap::from_noise(Scheme::Single, np), 0.9, 0.8);
  const auto yd = yield(PurificationMap::from_noise(Scheme::Double, np), 0.9, 0.8);
  if (!(yd.n_rounds < ys.n_rounds && yd.yield > ys.yield)) {
    ok = false;
    detail += "yield ordering broken  ";
  }

  // multipartite series: double climbs to a plateau at small p and keeps a
  // clear lead over single at large p
  const auto g = TwoColorableGraph::from_json_file(kConfigDir + "/steane7.json");
  MCConfig cfg;
  cfg.graph = g;
  cfg.scheme = Scheme::Double;
  cfg.noise = uniform_noise(0.02, 0.02);
  cfg.f_ch = 0.9;
  cfg.rounds = 10;
  cfg.samples = 20000;
  cfg.seed = 5;
  const MCResult series = mc_purification(cfg);
  const double f_in = series.rounds.front().fidelity;
  const double f_end = series.rounds.back().fidelity;
  if (!(f_end > f_in + 0.2 && f_end > 0.8)) {
    ok = false;
    detail += fmt("double series at p=0.02 fails to climb (%.3f -> %.3f)  ",
                  f_in, f_end);
  }
  const double fs7 = plateau_fidelity(g, Scheme::Single, 0.07, 16, 20000);
  const double fd7 = plateau_fidelity(g, Scheme::Double, 0.07, 16, 20000);
  if (!(fd7 > fs7 + 0.2)) {
    ok = false;
    detail += fmt("ordering at p=0.07 broken (single %.3f, double %.3f)  ",
                  fs7, fd7);
  }

  if (ok)
    detail = "curve, fixed-point, yield and multipartite shapes all ordered";
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> all = {
      {"1", criterion_1},   {"2", criterion_2}, {"3", criterion_3},
      {"4", criterion_4},   {"5", criterion_5}, {"6", criterion_6},
      {"7", criterion_7},   {"8", criterion_8}, {"9", criterion_9},
      {"10", criterion_10}, {"figures", criterion_figures},
  };
  const std::string pick = argc > 1 ? argv[1] : "";
  int failures = 0, matched = 0;
  for (const auto& [name, fn] : all) {
    if (!pick.empty() && pick != name) continue;
    ++matched;
    const Outcome r = fn();
    std::printf("criterion %s: %s (%s)\n", name.c_str(),
                r.pass ? "PASS" : "FAIL", r.detail.c_str());
    std::fflush(stdout);
    failures += !r.pass;
  }
  if (matched == 0) {
    std::fprintf(stderr, "unknown criterion \"%s\"\n", pick.c_str());
    return 64;
  }
  return failures;
}
