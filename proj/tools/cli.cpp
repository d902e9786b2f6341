#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "collapse/bounds.hpp"
#include "collapse/error.hpp"
#include "collapse/ganview.hpp"
#include "collapse/io.hpp"
#include "collapse/metrics.hpp"
#include "collapse/piecewise.hpp"
#include "collapse/region.hpp"
#include "collapse/sandwich.hpp"

namespace collapse::cli {

namespace {

const std::vector<double> kCollapseSweep{0.0, 0.01, 0.02, 0.03, 0.04, 0.05};
const std::vector<double> kNoCollapseSweep{0.03, 0.04, 0.05, 0.06, 0.07, 0.08};

constexpr const char* kFooter = R"(Defaults:
  band thm1       --tau 0.11 --m-max 10
  band thm2       --tau 0.11 --delta 0.1, eps swept over 0.00..0.05 unless --eps is given
  band thm3       --tau 0.11 --delta 0.1, eps swept over 0.03..0.08 unless --eps is given
  separate        H0 (0.05, 0.1) vs H1 (0.02, 0.1), --tau 0.11 --m-max 10
  verify          --trials 10000 --seed 1 --max-support 6 --m-max 4
  sample          --spec grid --n 2500 --seed 1
  ganview         --bins 50, alphas: 41 log-spaced values in [1e-3, 1e3] plus 0 and inf
Exit status: 0 success, 1 verification failure, 2 usage or validation error.)";

// Validation failure raised by the CLI itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

// "dir/band.csv" + "_eps0.02" -> "dir/band_eps0.02.csv"
std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

std::string svg_path(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ".svg";
  return path.substr(0, dot) + ".svg";
}

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty()) out << contents;
  else write_text_file(path, contents);
}

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> alphas;
  std::istringstream is(text);
  std::string cell;
  while (std::getline(is, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != cell.size()) throw UsageError("--alphas entry \"" + cell + "\" is not a number");
    alphas.push_back(v);
  }
  if (alphas.empty()) throw UsageError("--alphas needs at least one value");
  return alphas;
}

ModeSpec spec_by_name(const std::string& name) {
  if (name == "ring") return ring_spec();
  if (name == "grid") return grid_spec();
  throw UsageError("--spec must be ring or grid, got " + name);
}

SampleSet sample_symbols(const DiscreteDistribution& dist, std::size_t n, std::mt19937_64& rng) {
  std::discrete_distribution<std::size_t> symbol(dist.probs().begin(), dist.probs().end());
  std::vector<double> coords(n);
  for (double& x : coords) x = static_cast<double>(symbol(rng));
  return SampleSet(1, std::move(coords));
}

std::string describe_infeasible(ConstraintKind kind, double eps, double delta, double tau) {
  std::ostringstream os;
  os << "eps=" << fmt(eps) << " delta=" << fmt(delta) << " tau=" << fmt(tau) << " is infeasible: ";
  if (tau < delta - eps) {
    os << "tau < delta - eps = " << fmt(delta - eps);
  } else if (kind == ConstraintKind::no_collapse_no_augmentation && delta + eps <= 1.0) {
    os << "tau > (delta - eps)/(delta + eps) = " << fmt((delta - eps) / (delta + eps));
  } else {
    os << "tau > (delta - eps)/(2 - delta - eps) = " << fmt((delta - eps) / (2.0 - delta - eps));
  }
  return os.str();
}

std::string join(std::span<const double> values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ";" : "") + fmt(values[i], 17);
  return s;
}

struct Params {
  double tau = 0.11;
  double eps = 0.0;
  double delta = 0.1;
  int m_max = 10;
  std::string out;
  bool emit_svg = false;
};

void require_out_for_svg(const Params& p) {
  if (p.emit_svg && p.out.empty()) throw UsageError("--emit-svg needs --out to name the chart file");
}

int cmd_region(const std::string& input, const Params& p, bool has_point, std::ostream& out, std::ostream& err) {
  require_out_for_svg(p);
  const DistributionPair pair = parse_pair_json(read_text_file(input));
  const ModeCollapseRegion region = region_from_pair(pair);
  std::ostringstream csv;
  write_region_csv(csv, region);
  emit(p.out, csv.str(), out);
  std::ostream& info = p.out.empty() ? err : out;
  info << "tv=" << fmt(tv_from_region(region), 12) << '\n';
  if (has_point) {
    const CollapsePoint point(p.eps, p.delta);
    info << "mode_collapse(" << fmt(p.eps) << "," << fmt(p.delta) << ")=" << (has_mode_collapse(region, point) ? "yes" : "no")
         << '\n';
    info << "mode_augmentation(" << fmt(p.eps) << "," << fmt(p.delta)
         << ")=" << (has_mode_augmentation(region, point) ? "yes" : "no") << '\n';
  }
  if (p.emit_svg) {
    SvgSeries boundary{"boundary", {}, {}};
    for (const Vertex& v : region.vertices()) {
      boundary.x.push_back(v.epsilon);
      boundary.y.push_back(v.delta);
    }
    std::ostringstream svg;
    write_svg_chart(svg, "mode-collapse region", "epsilon", "delta", {boundary, {"diagonal", {0, 1}, {0, 1}}});
    write_text_file(svg_path(p.out), svg.str());
  }
  return kSuccess;
}

int cmd_band(const std::string& theorem, const Params& p, bool has_eps, std::ostream& out, std::ostream& err) {
  require_out_for_svg(p);
  if (p.m_max < 1) throw UsageError("--m-max must be >= 1");
  if (!(p.tau >= 0.0 && p.tau <= 1.0)) throw UsageError("--tau must lie in [0, 1]");

  struct Job {
    std::string label;
    ConstraintSpec spec;
  };
  std::vector<Job> jobs;
  if (theorem == "thm1") {
    if (has_eps) throw UsageError("thm1 takes no --eps; it has no mode-collapse constraint");
    jobs.push_back({"", ConstraintSpec::unconstrained(p.tau)});
  } else {
    const bool collapse = theorem == "thm2";
    const std::vector<double> sweep = has_eps ? std::vector<double>{p.eps} : (collapse ? kCollapseSweep : kNoCollapseSweep);
    for (const double eps : sweep) {
      const std::string label = has_eps ? "" : "_eps" + fixed(eps, 2);
      jobs.push_back({label, collapse ? ConstraintSpec::with_collapse(eps, p.delta, p.tau)
                                      : ConstraintSpec::without_collapse_or_augmentation(eps, p.delta, p.tau)});
    }
  }

  std::vector<SvgSeries> series;
  for (const Job& job : jobs) {
    const EvolutionBand band = evolution_band(job.spec, p.m_max);
    std::ostringstream csv;
    write_band_csv(csv, band);
    if (p.out.empty()) {
      if (!job.label.empty()) out << "# eps=" << fmt(job.spec.collapse->epsilon) << '\n';
      out << csv.str();
    } else {
      write_text_file(with_suffix(p.out, job.label), csv.str());
    }
    const bool any_feasible =
        std::any_of(band.entries.begin(), band.entries.end(), [](const BandEntry& e) { return e.feasible; });
    if (!any_feasible) {
      err << "note: "
          << describe_infeasible(job.spec.kind, job.spec.collapse->epsilon, job.spec.collapse->delta, p.tau) << '\n';
    }
    const std::string name = job.spec.collapse ? "eps=" + fmt(job.spec.collapse->epsilon) + " " : "";
    SvgSeries lower{name + "lower", {}, {}};
    SvgSeries upper{name + "upper", {}, {}};
    for (const BandEntry& e : band.entries) {
      if (!e.feasible) continue;
      lower.x.push_back(e.m);
      lower.y.push_back(e.lower);
      upper.x.push_back(e.m);
      upper.y.push_back(e.upper);
    }
    series.push_back(std::move(lower));
    series.push_back(std::move(upper));
  }
  if (p.emit_svg) {
    std::ostringstream svg;
    write_svg_chart(svg, theorem + " total-variation band, tau=" + fmt(p.tau), "m", "d_TV(P^m, Q^m)", series);
    write_text_file(svg_path(p.out), svg.str());
  }
  return kSuccess;
}

int cmd_separate(double h0_eps, double h1_eps, double h0_tau, double h1_tau, const Params& p, std::ostream& out) {
  if (p.m_max < 1) throw UsageError("--m-max must be >= 1");
  if (std::abs(h0_tau - h1_tau) > 1e-12) {
    throw UsageError("H0 and H1 must share tau (got " + fmt(h0_tau) + " and " + fmt(h1_tau) + ")");
  }
  const auto h0 = ConstraintSpec::without_collapse_or_augmentation(h0_eps, p.delta, h0_tau);
  const auto h1 = ConstraintSpec::with_collapse(h1_eps, p.delta, h1_tau);
  const auto m = separation_m(h0, h1, p.m_max);
  if (m) out << *m << '\n';
  else out << "no separation <= " << p.m_max << '\n';
  if (!p.out.empty()) {
    for (const auto& [suffix, spec] : {std::pair{"_h0", h0}, std::pair{"_h1", h1}}) {
      std::ostringstream csv;
      write_band_csv(csv, evolution_band(spec, p.m_max));
      write_text_file(with_suffix(p.out, suffix), csv.str());
    }
  }
  return kSuccess;
}

int cmd_verify(long long trials, std::uint64_t seed, long long max_support, int max_m, double corrupt,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (trials < 1) throw UsageError("--trials must be >= 1");
  if (max_support < 1) throw UsageError("--max-support must be >= 1");
  if (max_m < 1) throw UsageError("--m-max must be >= 1");
  SandwichConfig config;
  config.trials = static_cast<std::size_t>(trials);
  config.seed = seed;
  config.max_support = static_cast<std::size_t>(max_support);
  config.max_m = max_m;
  config.corrupt_upper = corrupt;
  const SandwichReport report = run_sandwich(config);
  out << "trials=" << report.trials << " checks: thm1=" << report.checks[0] << " thm2=" << report.checks[1]
      << " thm3=" << report.checks[2] << " violations=" << report.violations.size() << '\n';
  if (report.ok()) return kSuccess;

  std::ostringstream csv;
  csv << "trial,kind,epsilon,delta,m,value,lower,upper,feasible,p,q\n";
  for (const SandwichViolation& v : report.violations) {
    csv << v.trial << ',' << to_string(v.kind) << ',' << (v.point ? fmt(v.point->epsilon, 17) : "") << ','
        << (v.point ? fmt(v.point->delta, 17) : "") << ',' << v.m << ',' << fmt(v.value, 17) << ','
        << fmt(v.lower, 17) << ',' << fmt(v.upper, 17) << ',' << (v.feasible ? "true" : "false") << ','
        << join(v.pair.p().probs()) << ',' << join(v.pair.q().probs()) << '\n';
  }
  if (out_path.empty()) err << csv.str();
  else write_text_file(out_path, csv.str());
  return kVerificationFailure;
}

int cmd_sample(const std::string& spec_name, long long n, std::uint64_t seed, const std::string& out_path,
               std::ostream& out) {
  if (n < 1) throw UsageError("--n must be >= 1");
  const SampleSet samples = sample_mixture(spec_by_name(spec_name), static_cast<std::size_t>(n), seed);
  std::ostringstream csv;
  write_samples_csv(csv, samples);
  emit(out_path, csv.str(), out);
  return kSuccess;
}

int cmd_metrics(const std::vector<std::string>& inputs, const std::string& spec_name, bool smooth, std::ostream& out) {
  const ModeSpec spec = spec_by_name(spec_name);
  const SampleSet generated = parse_samples_csv(read_text_file(inputs.at(0)));
  out << "modes=" << count_modes(generated, spec) << '/' << spec.centers.size() << '\n';
  out << "high_quality=" << fmt(high_quality_fraction(generated, spec), 6) << '\n';
  if (inputs.size() > 1) {
    const SampleSet reference = parse_samples_csv(read_text_file(inputs[1]));
    const double kl = reverse_kl(generated, reference, spec, {smooth});
    out << "reverse_kl=" << fmt(kl, 6) << (smooth ? " (smoothed)" : "") << '\n';
  }
  return kSuccess;
}

int cmd_ganview(const std::vector<std::string>& inputs, const Params& p, long long bins, const std::string& alphas,
                bool draw, long long n, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  require_out_for_svg(p);
  if (bins < 2) throw UsageError("--bins must be >= 2");
  const AlphaSchedule base = alphas.empty() ? AlphaSchedule::log_spaced() : AlphaSchedule(parse_alpha_list(alphas));

  RegionEstimate estimate{{}, ModeCollapseRegion::diagonal()};
  if (inputs.size() == 1) {
    const DistributionPair pair = parse_pair_json(read_text_file(inputs[0]));
    const AlphaSchedule schedule = alphas.empty() ? AlphaSchedule::covering(pair, base) : base;
    if (draw) {
      if (n < 4) throw UsageError("--n must be >= 4");
      std::mt19937_64 rng(seed);
      const SampleSet sp = sample_symbols(pair.p(), static_cast<std::size_t>(n), rng);
      const SampleSet sq = sample_symbols(pair.q(), static_cast<std::size_t>(n), rng);
      estimate = ganview_estimate(sp, sq, schedule, ClassifierBackend::exact(pair));
    } else {
      estimate = ganview_estimate(pair, schedule);
    }
  } else if (inputs.size() == 2) {
    const SampleSet sp = parse_samples_csv(read_text_file(inputs[0]));
    const SampleSet sq = parse_samples_csv(read_text_file(inputs[1]));
    estimate = ganview_estimate(sp, sq, base, ClassifierBackend::histogram(static_cast<std::size_t>(bins)));
  } else {
    throw UsageError("ganview takes a pair JSON or two sample CSV files");
  }

  std::ostringstream hull;
  write_region_csv(hull, estimate.hull);
  emit(p.out, hull.str(), out);
  if (!p.out.empty()) {
    std::ostringstream points;
    write_estimate_csv(points, estimate);
    write_text_file(with_suffix(p.out, "_points"), points.str());
  }
  err << "estimated tv=" << fmt(tv_from_region(estimate.hull), 12) << '\n';
  if (p.emit_svg) {
    SvgSeries boundary{"hull", {}, {}};
    for (const Vertex& v : estimate.hull.vertices()) {
      boundary.x.push_back(v.epsilon);
      boundary.y.push_back(v.delta);
    }
    std::ostringstream svg;
    write_svg_chart(svg, "estimated mode-collapse region", "epsilon", "delta",
                    {boundary, {"diagonal", {0, 1}, {0, 1}}});
    write_text_file(svg_path(p.out), svg.str());
  }
  return kSuccess;
}

int cmd_reduce(const std::string& input, const std::string& out_path, std::ostream& out, std::ostream& err) {
  const PiecewiseReduction r = reduce_piecewise(parse_piecewise_json(read_text_file(input)));
  if (std::abs(r.p_mass - 1.0) > kNormalizationTolerance || std::abs(r.q_mass - 1.0) > kNormalizationTolerance) {
    err << "note: renormalized densities with masses p=" << fmt(r.p_mass, 8) << " q=" << fmt(r.q_mass, 8) << '\n';
  }
  emit(out_path, pair_to_json(r.pair) + "\n", out);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mode-collapse regions, packed total-variation bounds, GANView estimates and mixture metrics",
               "collapse"};
  app.require_subcommand(1);
  app.footer(kFooter);

  Params p;

  auto* region = app.add_subcommand("region", "Region vertices of a pair JSON {\"p\": [..], \"q\": [..]}");
  std::string region_input;
  region->add_option("pair", region_input, "Pair JSON file")->required();
  auto* region_eps = region->add_option("--eps", p.eps, "Collapse point epsilon to test");
  auto* region_delta = region->add_option("--delta", p.delta, "Collapse point delta to test");
  region_eps->needs(region_delta);
  region_delta->needs(region_eps);
  region->add_option("--out", p.out, "Region CSV path (stdout when omitted)");
  region->add_flag("--emit-svg", p.emit_svg, "Also write an SVG chart next to --out");

  auto* band = app.add_subcommand("band", "Per-m lower/upper bounds on d_TV(P^m, Q^m)");
  std::string theorem;
  band->add_option("theorem", theorem, "thm1, thm2 (has collapse) or thm3 (no collapse or augmentation)")
      ->required()
      ->check(CLI::IsMember({"thm1", "thm2", "thm3"}));
  band->add_option("--tau", p.tau, "d_TV(P, Q)")->capture_default_str();
  auto* band_eps = band->add_option("--eps", p.eps, "Collapse epsilon (default: sweep of the figure values)");
  band->add_option("--delta", p.delta, "Collapse delta")->capture_default_str();
  band->add_option("--m-max", p.m_max, "Largest packing degree")->capture_default_str();
  band->add_option("--out", p.out, "Band CSV path (stdout when omitted)");
  band->add_flag("--emit-svg", p.emit_svg, "Also write an SVG chart next to --out");

  auto* separate = app.add_subcommand("separate", "Smallest m separating the H1 band from the H0 band");
  double h0_eps = 0.05;
  double h1_eps = 0.02;
  double h0_tau = 0.11;
  double h1_tau = 0.11;
  separate->add_option("--h0-eps", h0_eps, "H0 epsilon (no collapse or augmentation)")->capture_default_str();
  separate->add_option("--h1-eps", h1_eps, "H1 epsilon (has collapse)")->capture_default_str();
  auto* h0_tau_opt = separate->add_option("--h0-tau", h0_tau, "H0 tau")->capture_default_str();
  auto* h1_tau_opt = separate->add_option("--h1-tau", h1_tau, "H1 tau")->capture_default_str();
  auto* sep_tau = separate->add_option("--tau", p.tau, "Shared tau for H0 and H1")->capture_default_str();
  separate->add_option("--delta", p.delta, "Shared delta")->capture_default_str();
  separate->add_option("--m-max", p.m_max, "Largest packing degree")->capture_default_str();
  separate->add_option("--out", p.out, "Optional path stem for the two band CSVs");
  sep_tau->excludes(h0_tau_opt)->excludes(h1_tau_opt);

  auto* verify = app.add_subcommand("verify", "Randomized check that product TV lies inside the thm1/thm2/thm3 bands");
  long long trials = 10000;
  std::uint64_t seed = 1;
  long long max_support = 6;
  int verify_m = 4;
  double corrupt = 0.0;
  std::string verify_out;
  verify->add_option("--trials", trials, "Random pairs")->capture_default_str();
  verify->add_option("--seed", seed, "RNG seed")->capture_default_str();
  verify->add_option("--max-support", max_support, "Largest alphabet")->capture_default_str();
  verify->add_option("--m-max", verify_m, "Largest packing degree")->capture_default_str();
  verify->add_option("--out", verify_out, "Violator CSV path (stderr when omitted)");
  verify->add_option("--corrupt-upper", corrupt, "Subtract this from every upper bound")->group("");

  auto* sample = app.add_subcommand("sample", "Draw samples from the 2D ring or grid mixture");
  std::string spec_name = "grid";
  long long n = 2500;
  sample->add_option("--spec", spec_name, "ring or grid")->capture_default_str()->check(CLI::IsMember({"ring", "grid"}));
  sample->add_option("--n", n, "Sample count")->capture_default_str();
  sample->add_option("--seed", seed, "RNG seed")->capture_default_str();
  sample->add_option("--out", p.out, "Sample CSV path (stdout when omitted)");

  auto* metrics = app.add_subcommand("metrics", "Modes captured, high-quality fraction and reverse KL");
  std::vector<std::string> metric_inputs;
  bool smooth = false;
  metrics->add_option("samples", metric_inputs, "Generated sample CSV, optionally followed by a reference CSV")
      ->required()
      ->expected(1, 2);
  metrics->add_option("--spec", spec_name, "ring or grid")->capture_default_str()->check(CLI::IsMember({"ring", "grid"}));
  metrics->add_flag("--smooth-kl", smooth, "Add one pseudo-count per mode before the reverse KL");

  auto* ganview = app.add_subcommand("ganview", "Estimate the region from a known pair or from two sample CSVs");
  std::vector<std::string> ganview_inputs;
  long long bins = 50;
  std::string alphas;
  long long ganview_n = 0;
  ganview->add_option("inputs", ganview_inputs, "Pair JSON, or P and Q sample CSVs")->required()->expected(1, 2);
  ganview->add_option("--bins", bins, "Histogram bins per dimension")->capture_default_str();
  ganview->add_option("--alphas", alphas, "Comma-separated thresholds (default 41 log-spaced in [1e-3, 1e3])");
  auto* ganview_n_opt = ganview->add_option("--n", ganview_n, "With a pair JSON: draw n symbols per side");
  ganview->add_option("--seed", seed, "RNG seed for --n")->capture_default_str();
  ganview->add_option("--out", p.out, "Hull CSV path; points go to <out>_points.csv");
  ganview->add_flag("--emit-svg", p.emit_svg, "Also write an SVG chart next to --out");

  auto* reduce = app.add_subcommand("reduce", "Reduce piecewise-constant densities {breaks, p, q} to a pair JSON");
  std::string reduce_input;
  reduce->add_option("densities", reduce_input, "Piecewise JSON file")->required();
  reduce->add_option("--out", p.out, "Pair JSON path (stdout when omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*region) return cmd_region(region_input, p, region_eps->count() > 0, out, err);
    if (*band) return cmd_band(theorem, p, band_eps->count() > 0, out, err);
    if (*separate) {
      if (sep_tau->count() > 0) h0_tau = h1_tau = p.tau;
      return cmd_separate(h0_eps, h1_eps, h0_tau, h1_tau, p, out);
    }
    if (*verify) return cmd_verify(trials, seed, max_support, verify_m, corrupt, verify_out, out, err);
    if (*sample) return cmd_sample(spec_name, n, seed, p.out, out);
    if (*metrics) return cmd_metrics(metric_inputs, spec_name, smooth, out);
    if (*ganview) {
      return cmd_ganview(ganview_inputs, p, bins, alphas, ganview_n_opt->count() > 0, ganview_n, seed, out, err);
    }
    if (*reduce) return cmd_reduce(reduce_input, p.out, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace collapse::cli
