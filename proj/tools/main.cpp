// graphwave: delay-time distributions of short wave packets on metric graphs.
//
// Every computation is a subcommand emitting CSV (stdout or --out).  Output
// is deterministic for a fixed flag set, including the Monte Carlo seed, so
// the artifacts diff cleanly.  Exit codes: 2 malformed graph description,
// 3 precondition violation, 4 numeric failure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "graphwave/builtin_specs.hpp"
#include "graphwave/classical.hpp"
#include "graphwave/errors.hpp"
#include "graphwave/evolution.hpp"
#include "graphwave/graph.hpp"
#include "graphwave/parallel.hpp"
#include "graphwave/paths.hpp"
#include "graphwave/resonances.hpp"
#include "graphwave/scattering.hpp"
#include "graphwave/specfile.hpp"
#include "graphwave/wavepacket.hpp"

namespace {

using std::numbers::pi;

struct RunConfig {
  std::string spec = "tjunction";
  std::string out;
  double k0 = 1000.0;
  double sigma = 100.0;
  double delta_k = 0.0;  // 0: pick from s_max
  double s_max = 0.0;    // 0: per-command default
  double s_step = 0.0;  // 0: 1/(4 sigma)
  long t_max = 30;
  long n_max = 40;
  long samples = 100000;
  std::uint64_t seed = 1;
  std::vector<double> k_range;

  bool use_pathsum = false;
  bool use_closed_form = false;
  bool use_families = false;
  bool split = false;
  bool density_bins = false;
  bool with_fourier = false;
};

class CsvSink {
 public:
  explicit CsvSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw graphwave::PreconditionError("cannot open output file: " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

  void header(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i)
      out() << (i ? "," : "") << names[i];
    out() << "\n";
  }
  // 12 significant digits, same as %.12g
  void field(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    out() << (col_++ ? "," : "") << buf;
  }
  void field(long x) { out() << (col_++ ? "," : "") << x; }
  void endrow() {
    out() << "\n";
    col_ = 0;
  }

 private:
  std::ofstream file_;
  int col_ = 0;
};

graphwave::MetricGraph load_spec(const std::string& name) {
  if (auto text = graphwave::builtin_spec_text(name))
    return graphwave::build_graph(graphwave::parse_graph_spec(*text));
  return graphwave::build_graph(graphwave::load_graph_spec(name));
}

std::pair<double, double> range_or(const RunConfig& cfg, double lo, double hi) {
  if (cfg.k_range.empty()) return {lo, hi};
  if (cfg.k_range.size() != 2 || !(cfg.k_range[0] < cfg.k_range[1]))
    throw graphwave::PreconditionError("--krange needs two ascending values");
  return {cfg.k_range[0], cfg.k_range[1]};
}

std::pair<double, double> junction_lengths(const graphwave::MetricGraph& g,
                                           const char* what) {
  auto lens = graphwave::two_edge_junction_lengths(g);
  if (!lens)
    throw graphwave::PreconditionError(
        std::string(what) + " needs the two-edge junction graph");
  return *lens;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  std::vector<double> s;
  long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  s.reserve(n);
  for (long i = 0; i < n; ++i) s.push_back(lo + step * static_cast<double>(i));
  return s;
}

// S(k0 + j dk) for one lead pair, through the junction closed form when the
// graph has that shape (identical result, far cheaper on long grids).
graphwave::SampledAmplitude sample_smatrix(const graphwave::MetricGraph& g,
                                           double k_start, double delta_k, long count) {
  graphwave::SampledAmplitude amp;
  amp.k_start = k_start;
  amp.delta_k = delta_k;
  amp.values.assign(count, {});
  if (auto lens = graphwave::two_edge_junction_lengths(g)) {
    auto [l1, l2] = *lens;
    graphwave::parallel_for(count, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t j = lo; j < hi; ++j)
        amp.values[j] = graphwave::tjunction_smatrix(
            l1, l2, k_start + delta_k * static_cast<double>(j));
    });
  } else {
    graphwave::parallel_for(count, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t j = lo; j < hi; ++j)
        amp.values[j] = graphwave::smatrix_resolvent(
                            g, k_start + delta_k * static_cast<double>(j))
                            .entries(0, 0);
    });
  }
  return amp;
}

graphwave::DelayDistribution fourier_delay(const graphwave::MetricGraph& g,
                                           const RunConfig& cfg,
                                           const std::vector<double>& s_values) {
  auto env = graphwave::gaussian_envelope(cfg.k0, cfg.sigma);
  double dk = cfg.delta_k > 0.0 ? cfg.delta_k : pi / (8.0 * s_values.back());
  // start one step above zero when the window is clipped: S(0) is a 0/0
  // limit and the envelope there is negligible anyway
  double k_start = std::max(dk, cfg.k0 - 8.0 * cfg.sigma);
  double k_end = cfg.k0 + 8.0 * cfg.sigma;
  long count = static_cast<long>(std::ceil((k_end - k_start) / dk)) + 1;
  return graphwave::delay_density_fourier(s_values, sample_smatrix(g, k_start, dk, count),
                                          env);
}

// Cumulative C(s) on [0, s_max] reported every `step`.  The density is
// integrated on a grid fine enough to resolve the 1/sigma peak widths, or
// the trapezoid sums would alias the spikes away.
std::vector<double> fourier_cumulative(const graphwave::MetricGraph& g, const RunConfig& cfg,
                                       double s_max, double step) {
  long sub = std::max(1L, static_cast<long>(std::ceil(step * 4.0 * cfg.sigma)));
  auto fine = uniform_grid(0.0, s_max, step / static_cast<double>(sub));
  auto dist = fourier_delay(g, cfg, fine);
  std::vector<double> out;
  for (std::size_t i = 0; i < dist.cumulative.size(); i += sub)
    out.push_back(dist.cumulative[i]);
  return out;
}

int cmd_spectrum(const RunConfig& cfg) {
  auto g = load_spec(cfg.spec);
  auto [lo, hi] = range_or(cfg, 0.0, 50.0);
  auto roots = graphwave::find_spectrum(g, lo, hi);
  CsvSink csv(cfg.out);
  csv.header({"k_n"});
  for (double k : roots) {
    csv.field(k);
    csv.endrow();
  }
  return 0;
}

int cmd_smatrix(const RunConfig& cfg) {
  auto g = load_spec(cfg.spec);
  auto [lo, hi] = range_or(cfg, 0.5, 20.0);
  double dk = cfg.delta_k > 0.0 ? cfg.delta_k : 0.01;
  std::optional<std::pair<double, double>> closed;
  if (cfg.use_closed_form) closed = junction_lengths(g, "--closed-form");

  int leads = closed ? 1 : g.lead_count();
  std::vector<std::string> names{"k"};
  for (int a = 0; a < leads; ++a)
    for (int b = 0; b < leads; ++b) {
      names.push_back("re_s_" + std::to_string(a) + "_" + std::to_string(b));
      names.push_back("im_s_" + std::to_string(a) + "_" + std::to_string(b));
    }
  CsvSink csv(cfg.out);
  csv.header(names);
  for (double k = lo; k <= hi + 1e-12; k += dk) {
    csv.field(k);
    if (closed) {
      auto s = graphwave::tjunction_smatrix(closed->first, closed->second, k);
      csv.field(s.real());
      csv.field(s.imag());
    } else {
      auto s = cfg.use_pathsum ? graphwave::smatrix_pathsum(g, k, static_cast<int>(cfg.n_max))
                               : graphwave::smatrix_resolvent(g, k);
      for (int a = 0; a < leads; ++a)
        for (int b = 0; b < leads; ++b) {
          csv.field(s.entries(a, b).real());
          csv.field(s.entries(a, b).imag());
        }
    }
    csv.endrow();
  }
  return 0;
}

int cmd_delay(const RunConfig& cfg) {
  auto g = load_spec(cfg.spec);
  // build the envelope before the s-grid: its checks must reject a bad sigma
  // ahead of the default step 1/(4 sigma) sizing anything
  auto env = graphwave::gaussian_envelope(cfg.k0, cfg.sigma);
  double s_max = cfg.s_max > 0.0 ? cfg.s_max : 4.0;
  double step = cfg.s_step > 0.0 ? cfg.s_step : 1.0 / (4.0 * cfg.sigma);
  auto s_values = uniform_grid(0.0, s_max, step);
  graphwave::DelayDistribution dist;
  if (cfg.use_families) {
    auto fams = graphwave::enumerate_families(g, 0, 0, static_cast<int>(cfg.n_max));
    dist = graphwave::delay_density_families(fams, env, s_values);
  } else {
    dist = fourier_delay(g, cfg, s_values);
  }
  CsvSink csv(cfg.out);
  csv.header({"s", "p", "c"});
  for (std::size_t i = 0; i < dist.s.size(); ++i) {
    csv.field(dist.s[i]);
    csv.field(dist.density[i]);
    csv.field(dist.cumulative[i]);
    csv.endrow();
  }
  return 0;
}

int cmd_topological(const RunConfig& cfg) {
  auto g = load_spec(cfg.spec);
  junction_lengths(g, "topological");
  auto dist = graphwave::tjunction_topological(cfg.t_max);

  long t_enum = std::min(cfg.t_max, 12L);
  std::map<long, graphwave::TimeGroup> groups;
  if (cfg.split) {
    auto fams = graphwave::enumerate_families(g, 0, 0, static_cast<int>(2 * t_enum - 1));
    groups = graphwave::group_families_by_time(fams, graphwave::TopologicalTime::Excursions);
  }

  CsvSink csv(cfg.out);
  if (cfg.split)
    csv.header({"t", "p_t", "c_t", "p_diagonal", "p_nondiagonal"});
  else
    csv.header({"t", "p_t", "c_t"});
  for (long t = 0; t <= cfg.t_max; ++t) {
    csv.field(t);
    csv.field(graphwave::to_double(dist.p[t]));
    csv.field(graphwave::to_double(dist.c[t]));
    if (cfg.split) {
      auto it = groups.find(t);
      bool have = it != groups.end() && t >= 1 && t <= t_enum;
      csv.field(have ? it->second.diagonal.value() : 0.0);
      csv.field(have ? it->second.nondiagonal.value() : 0.0);
    }
    csv.endrow();
  }
  return 0;
}

int cmd_bounds(const RunConfig& cfg) {
  auto g = load_spec(cfg.spec);
  junction_lengths(g, "bounds");
  double s_max = cfg.s_max > 0.0 ? cfg.s_max : 20.0;
  double l_min = g.min_edge_length(), l_max = g.max_edge_length();
  // enough excursions on the short edge to pass s_max
  long t_need = static_cast<long>(std::ceil(s_max / (2.0 * l_min))) + 1;
  auto dist = graphwave::tjunction_topological(std::max(cfg.t_max, t_need));
  double step = cfg.s_step > 0.0 ? cfg.s_step : 0.05;
  auto s_values = uniform_grid(0.0, s_max, step);

  std::vector<double> c_fourier;
  if (cfg.with_fourier) c_fourier = fourier_cumulative(g, cfg, s_max, step);

  CsvSink csv(cfg.out);
  if (cfg.with_fourier)
    csv.header({"s", "lower", "upper", "c_fourier"});
  else
    csv.header({"s", "lower", "upper"});
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    auto [lo, hi] = graphwave::metric_bounds(dist, s_values[i], l_min, l_max);
    csv.field(s_values[i]);
    csv.field(lo);
    csv.field(hi);
    if (cfg.with_fourier) csv.field(c_fourier[i]);
    csv.endrow();
  }
  return 0;
}

int cmd_classical(const RunConfig& cfg) {
  auto g = load_spec(cfg.spec);
  double s_max = cfg.s_max > 0.0 ? cfg.s_max : 20.0;
  auto exact = graphwave::classical_cumulative_exact(g, 0, 0, s_max);
  auto mc = graphwave::classical_delay_mc(g, 0, cfg.samples, cfg.seed);
  graphwave::DecayLaw law;
  law.xi = graphwave::decay_constant(g);
  law.prefactor = graphwave::decay_prefactor(g, 0, 0, law.xi);

  std::vector<double> arrived;
  for (std::size_t i = 0; i < mc.delays.size(); ++i)
    if (mc.exit_channels[i] == 0) arrived.push_back(mc.delays[i]);
  std::sort(arrived.begin(), arrived.end());

  double step = cfg.s_step > 0.0 ? cfg.s_step : 0.05;
  CsvSink csv(cfg.out);
  csv.header({"s", "c_exact", "c_mc", "c_asymptote"});
  for (double s = 0.0; s <= s_max + 1e-12; s += step) {
    auto upto = std::upper_bound(arrived.begin(), arrived.end(), s) - arrived.begin();
    csv.field(s);
    csv.field(exact.cumulative(s));
    csv.field(static_cast<double>(upto) / static_cast<double>(cfg.samples));
    csv.field(graphwave::classical_asymptote(law, s));
    csv.endrow();
  }
  return 0;
}

int cmd_resonances(const RunConfig& cfg) {
  auto g = load_spec(cfg.spec);
  auto [lo, hi] = range_or(cfg, 0.0, 500.0);
  CsvSink csv(cfg.out);

  if (cfg.density_bins) {
    auto poles = graphwave::find_poles(g, lo, hi);
    double l = g.total_length();
    csv.header({"gamma_lo", "gamma_hi", "count", "expected"});
    for (double lo_g = 1e-4; lo_g < 1.0; lo_g *= 10.0) {
      double hi_g = lo_g * 10.0;
      long count = 0;
      for (auto z : poles)
        if (-z.imag() >= lo_g && -z.imag() < hi_g) ++count;
      double l3 = l * l * l;
      double expected =
          (hi - lo) * (std::sqrt(2.0 * hi_g * l3) - std::sqrt(2.0 * lo_g * l3)) / (pi * pi);
      csv.field(lo_g);
      csv.field(hi_g);
      csv.field(count);
      csv.field(expected);
      csv.endrow();
    }
    return 0;
  }

  auto [l1, l2] = junction_lengths(g, "resonances");
  auto pairs = graphwave::near_degenerate_pairs(l1, l2, lo, hi, 0.2 / (l1 + l2));
  std::vector<graphwave::ResonancePole> poles;
  for (const auto& pair : pairs) {
    if (pair.degenerate) continue;
    auto pole = graphwave::pole_from_pair(pair.k1, pair.k2, l1, l2);
    graphwave::refine_pole(l1, l2, pole);
    poles.push_back(pole);
  }
  std::sort(poles.begin(), poles.end(),
            [](const auto& a, const auto& b) { return a.kappa < b.kappa; });
  csv.header({"kappa", "gamma", "k1", "k2", "refined"});
  for (const auto& pole : poles) {
    csv.field(pole.kappa);
    csv.field(pole.gamma);
    csv.field(pole.k1);
    csv.field(pole.k2);
    csv.field(static_cast<long>(pole.refined ? 1 : 0));
    csv.endrow();
  }
  return 0;
}

int cmd_tail(const RunConfig& cfg) {
  auto g = load_spec(cfg.spec);
  auto env = graphwave::gaussian_envelope(cfg.k0, cfg.sigma);
  double lo = std::max(0.0, cfg.k0 - 6.0 * cfg.sigma);
  double hi = cfg.k0 + 6.0 * cfg.sigma;
  auto zs = graphwave::find_poles(g, lo, hi);
  std::vector<graphwave::ResonancePole> poles;
  for (auto z : zs) {
    graphwave::ResonancePole pole;
    pole.kappa = z.real();
    pole.gamma = -z.imag();
    pole.refined = true;
    poles.push_back(pole);
  }

  double s_max = cfg.s_max > 0.0 ? cfg.s_max : 300.0;
  double step = cfg.s_step > 0.0 ? cfg.s_step : 1.0;
  double s_lo = std::min(10.0, 0.5 * s_max);

  // the Fourier column integrates from zero even though only the tail
  // window is printed
  std::vector<double> c_fourier;
  if (cfg.with_fourier) c_fourier = fourier_cumulative(g, cfg, s_max, step);

  CsvSink csv(cfg.out);
  if (cfg.with_fourier)
    csv.header({"s", "c_resonance_sum", "c_integral", "c_fourier"});
  else
    csv.header({"s", "c_resonance_sum", "c_integral"});
  auto s_values = uniform_grid(0.0, s_max, step);
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    if (s_values[i] < s_lo - 1e-12) continue;
    csv.field(s_values[i]);
    csv.field(graphwave::longtime_cumulative_resonances(poles, env, s_values[i]));
    csv.field(graphwave::longtime_cumulative_integral(g.total_length(), s_values[i]));
    if (cfg.with_fourier) csv.field(c_fourier[i]);
    csv.endrow();
  }
  return 0;
}

int cmd_recipes() {
  std::cout
      << "fig3  delay --spec tjunction --k0 1000 --sigma 100 --dk 1e-4 --smax 4\n"
      << "      short-time peak structure; about two minutes\n"
      << "fig4  tail --spec tjunction --k0 1000 --sigma 200 --smax 300\n"
      << "      long-time tail vs the resonance census; under a minute\n"
      << "fig5  classical --spec tjunction --samples 1000000 --seed 7 --smax 25\n"
      << "      classical decay, exact vs sampled; under a minute\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"delay-time distributions of wave packets on metric graphs"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string command;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec, "builtin graph name or path to a spec file");
    sub->add_option("--out", cfg.out, "output CSV path (default stdout)");
    sub->callback([&, sub] { command = sub->get_name(); });
    return sub;
  };

  auto* spectrum = add_common(app.add_subcommand("spectrum", "compact-graph wave numbers"));
  spectrum->add_option("--krange", cfg.k_range, "k window: two values")->expected(2);

  auto* smatrix = add_common(app.add_subcommand("smatrix", "scattering matrix on a k-grid"));
  smatrix->add_option("--krange", cfg.k_range, "k window: two values")->expected(2);
  smatrix->add_option("--dk", cfg.delta_k, "k-grid spacing");
  smatrix->add_flag("--pathsum", cfg.use_pathsum, "truncated path sum instead of the resolvent");
  smatrix->add_option("--nmax", cfg.n_max, "path sum truncation order");
  smatrix->add_flag("--closed-form", cfg.use_closed_form, "junction closed form");

  auto* delay = add_common(app.add_subcommand("delay", "delay-time density P(s)"));
  delay->add_option("--k0", cfg.k0, "carrier wave number");
  delay->add_option("--sigma", cfg.sigma, "envelope width in k");
  delay->add_option("--dk", cfg.delta_k, "k-grid spacing (default pi/(8 smax))");
  delay->add_option("--smax", cfg.s_max, "largest delay");
  delay->add_option("--s-step", cfg.s_step, "s-grid spacing (default 1/(4 sigma))");
  delay->add_flag("--families", cfg.use_families, "isometric-family route");
  delay->add_option("--nmax", cfg.n_max, "family enumeration depth (crossings)");

  auto* topological = add_common(app.add_subcommand("topological", "discrete-time p_t, c_t"));
  topological->add_option("--tmax", cfg.t_max, "largest excursion count");
  topological->add_flag("--split", cfg.split, "add diagonal/nondiagonal columns");

  auto* bounds = add_common(app.add_subcommand("bounds", "metric bounds on C(s)"));
  bounds->add_option("--smax", cfg.s_max, "largest delay");
  bounds->add_option("--s-step", cfg.s_step, "s-grid spacing (default 0.05)");
  bounds->add_option("--tmax", cfg.t_max, "table depth (grown to cover smax)");
  bounds->add_flag("--fourier", cfg.with_fourier, "add the Fourier-route C column");
  bounds->add_option("--k0", cfg.k0, "carrier wave number (Fourier column)");
  bounds->add_option("--sigma", cfg.sigma, "envelope width (Fourier column)");
  bounds->add_option("--dk", cfg.delta_k, "k-grid spacing (Fourier column)");

  auto* classical = add_common(app.add_subcommand("classical", "incoherent delay distribution"));
  classical->add_option("--samples", cfg.samples, "walker count");
  classical->add_option("--seed", cfg.seed, "base seed");
  classical->add_option("--smax", cfg.s_max, "horizon for the exact table and the grid");
  classical->add_option("--s-step", cfg.s_step, "s-grid spacing (default 0.05)");

  auto* resonances = add_common(app.add_subcommand("resonances", "near-real pole census"));
  resonances->add_option("--krange", cfg.k_range, "k window: two values")->expected(2);
  resonances->add_flag("--density-bins", cfg.density_bins,
                       "decade histogram of widths instead of the pole list");

  auto* tail = add_common(app.add_subcommand("tail", "long-time cumulative C(s)"));
  tail->add_option("--k0", cfg.k0, "carrier wave number");
  tail->add_option("--sigma", cfg.sigma, "envelope width in k");
  tail->add_option("--smax", cfg.s_max, "largest delay (default 300)");
  tail->add_option("--s-step", cfg.s_step, "s-grid spacing (default 1)");
  tail->add_flag("--fourier", cfg.with_fourier, "add the Fourier-route C column");
  tail->add_option("--dk", cfg.delta_k, "k-grid spacing (Fourier column)");

  auto* recipes = app.add_subcommand("recipes", "figure reproduction command lines");
  recipes->callback([&] { command = "recipes"; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (command == "spectrum") return cmd_spectrum(cfg);
    if (command == "smatrix") return cmd_smatrix(cfg);
    if (command == "delay") return cmd_delay(cfg);
    if (command == "topological") return cmd_topological(cfg);
    if (command == "bounds") return cmd_bounds(cfg);
    if (command == "classical") return cmd_classical(cfg);
    if (command == "resonances") return cmd_resonances(cfg);
    if (command == "tail") return cmd_tail(cfg);
    if (command == "recipes") return cmd_recipes();
  } catch (const graphwave::SpecError& err) {
    std::cerr << "spec error: " << err.what() << "\n";
    return 2;
  } catch (const graphwave::PreconditionError& err) {
    std::cerr << "precondition: " << err.what() << "\n";
    return 3;
  } catch (const graphwave::NumericError& err) {
    std::cerr << "numeric failure: " << err.what() << "\n";
    return 4;
  }
  return 0;
}
