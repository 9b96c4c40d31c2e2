// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#include "dfcomb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <thread>

#include "dfcomb/analytics.hpp"
#include "dfcomb/errors.hpp"
#include "dfcomb/fd_solver.hpp"
#include "dfcomb/units.hpp"

namespace dfc {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kCertifyThreshold = 1e-3;

std::string fmt(double x) {
  if (!std::isfinite(x)) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json nullable(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

bool window_inside(const Waveform& w, double t0, double t1) {
  const double eps = 0.5 * w.dt;
  return t0 >= w.t_start - eps && t1 <= w.t_end() + eps;
}

double last_center(const PulseSpec& pulse) {
  double c = pulse.t_in();
  for (const auto& p : pulse.peaks) c = std::max(c, p.center);
  return c;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot write " + path.string());
  os << text;
}

json derived_json(const Scenario& sc) {
  const DerivedComb d = derive_comb(sc.comb);
  json j = {{"beta_omega0_rad_s", d.beta_omega0},
            {"t0_ns", std::isfinite(d.t0) ? json(units::to_ns(d.t0)) : json(nullptr)},
            {"finesse", d.finesse},
            {"zeta_eff0", nullable(d.zeta_eff0)},
            {"total_zeta", d.total_zeta},
            {"comb_bandwidth_rad_s", d.comb_bandwidth},
            {"coupling_rad_s", d.coupling},
            {"gamma_rad_s", sc.comb.transition.gamma},
            {"delta_t_ns", units::to_ns(sc.pulse.peaks.front().fwhm)},
            {"t_in_ns", units::to_ns(sc.t_in())},
            {"grid_points", sc.grid.n}};
  if (!d.degenerate()) {
    j["eta_gfc_analytic"] = gfc_first_echo_efficiency(*d.zeta_eff0, d.finesse);
    const ConditionReport c = check_conditions(sc.comb.m_targets, sc.pulse.peaks.front().fwhm,
                                               sc.comb.transition.gamma, d.finesse);
    j["conditions"] = {{"coverage", c.coverage},     {"resolvable", c.resolvable},
                       {"feasible", c.feasible},     {"high_finesse", c.high_finesse},
                       {"finesse_lower", c.finesse_lower},
                       {"finesse_upper", c.finesse_upper}};
  }
  return j;
}

}  // namespace

EchoReport analyze_output(const Scenario& sc, const Waveform& input, const Waveform& output) {
  EchoReport report;
  report.mode = sc.mode;
  const double t_in = sc.t_in();
  double fwhm = 0.0;
  for (const auto& p : sc.pulse.peaks) fwhm = std::max(fwhm, p.fwhm);

  double peak_in = 0.0;
  for (const auto& s : input.samples) peak_in = std::max(peak_in, std::norm(s));
  const double t0 = derive_comb(sc.comb).t0;
  EchoDetection opts;
  opts.exclusion = (last_center(sc.pulse) - t_in) + fwhm;
  opts.half_window = std::isfinite(t0) ? 0.5 * t0 : 2.0 * fwhm;
  opts.min_separation = 2.0 * fwhm;
  report.echoes = detect_echoes(output, t_in, sc.noise_floor * peak_in, opts);
  const double e_in = input.energy();
  if (e_in > 0.0)
    for (auto& e : report.echoes) e.window_energy /= e_in;

  double leakage_end = t_in + opts.exclusion;
  if (sc.t_ec) {
    const double t_ec = *sc.t_ec;
    report.t_ec = t_ec;
    leakage_end = t_in + 0.5 * t_ec;
    if (window_inside(input, t_in - 0.5 * t_ec, t_in + 0.5 * t_ec) &&
        window_inside(output, t_in + 0.5 * t_ec, t_in + 1.5 * t_ec)) {
      report.efficiency = efficiency(input, output, t_in, t_ec);
      report.fidelity = fidelity(input, output, t_in, t_ec, sc.mode);
    }
  }
  if (e_in > 0.0 && leakage_end < output.t_end())
    report.post_leakage_fraction =
        window_energy(output, std::max(leakage_end, output.t_start), output.t_end()) / e_in;
  return report;
}

RunOutcome run_scenario(const Scenario& sc, bool certify) {
  RunOutcome out;
  out.scenario = sc;
  out.input = build_pulse(sc.pulse, sc.grid, GridCheck::enforce);
  out.sim = simulate(sc.comb, sc.schedule, out.input, sc.solver);
  out.report = analyze_output(sc, out.input, out.sim.output);
  if (certify)
    out.certification = convergence_probe(sc.comb, sc.schedule, sc.pulse, sc.grid, sc.solver);

  json warnings = json::array();
  for (const auto& w : sc.warnings) warnings.push_back(w);
  for (const auto& w : out.sim.diagnostics.warnings) warnings.push_back(w);
  if (sc.t_ec && !out.report.efficiency)
    warnings.push_back("metric windows around t_ec fall outside the time grid");
  if (out.certification && *out.certification >= kCertifyThreshold)
    warnings.push_back("convergence probe exceeds 1e-3; refine solver.dt_ns or sublayers");

  out.manifest = sc.resolved;
  json m;
  m["derived"] = derived_json(sc);
  m["solver"] = {{"steps", out.sim.diagnostics.steps},
                 {"sublayers", out.sim.diagnostics.sublayers},
                 {"input_energy", out.sim.diagnostics.input_energy},
                 {"output_energy", out.sim.diagnostics.output_energy}};
  if (out.certification)
    m["certification"] = {{"convergence_probe", *out.certification},
                          {"threshold", kCertifyThreshold},
                          {"certified", *out.certification < kCertifyThreshold}};
  else
    m["certification"] = nullptr;
  m["warnings"] = std::move(warnings);
  out.manifest["manifest"] = std::move(m);
  return out;
}

void write_time_series_csv(std::ostream& os, const Waveform& input, const Waveform& output) {
  os << "t_ns,in_re,in_im,in_intensity,out_re,out_im,out_intensity\n";
  char line[256];
  for (std::size_t i = 0; i < input.size(); ++i) {
    const cplx a = input.samples[i], b = output.samples[i];
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  units::to_ns(input.time(i)), a.real(), a.imag(), std::norm(a), b.real(),
                  b.imag(), std::norm(b));
    os << line;
  }
}

void write_artifacts(const RunOutcome& outcome, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const Scenario& sc = outcome.scenario;
  if (sc.write_time_series) {
    std::ofstream os(dir / "time_series.csv");
    write_time_series_csv(os, outcome.input, outcome.sim.output);
  }
  if (sc.write_report) {
    json r = to_json(outcome.report);
    r["scenario"] = sc.name;
    write_file(dir / "report.json", r.dump(2) + "\n");
  }
  write_file(dir / "manifest.json", outcome.manifest.dump(2) + "\n");
  if (sc.transfer) {
    const auto omega = linear_omega_grid(sc.transfer->omega_min, sc.transfer->omega_max,
                                         sc.transfer->points);
    std::ofstream os(dir / "transfer.csv");
    write_transfer_csv(os, exact_transfer(sc.comb, omega));
  }
  if (!outcome.sim.polarization.empty()) {
    std::ofstream os(dir / "polarization.csv");
    os << "t_ns";
    for (int k = 0; k < sc.comb.m_targets; ++k) {
      const int m = sc.comb.index_of(k);
      os << ",m" << m << "_re,m" << m << "_im";
    }
    os << '\n';
    for (std::size_t i = 0; i < outcome.input.size(); ++i) {
      os << fmt(units::to_ns(outcome.input.time(i)));
      for (const auto& p : outcome.sim.polarization)
        os << ',' << fmt(p[i].real()) << ',' << fmt(p[i].imag());
      os << '\n';
    }
  }
}

double compare_solvers(const Scenario& sc) {
  if (!sc.schedule.is_static())
    throw ValidationError("unsupported comparison: the frequency-domain solver needs a static "
                          "schedule",
                          "schedule.protocol");
  const Waveform input = build_pulse(sc.pulse, sc.grid, GridCheck::enforce);
  const Waveform td = simulate(sc.comb, sc.schedule, input, sc.solver).output;
  const Waveform fd = propagate_static(sc.comb, input);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < td.size(); ++i) {
    num += std::norm(td.samples[i] - fd.samples[i]);
    den += std::norm(fd.samples[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

// --- sweeps ---------------------------------------------------------------

double SweepAxis::value(int i) const {
  if (points <= 1) return lo;
  const double f = static_cast<double>(i) / (points - 1);
  return log ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo);
}

std::size_t SweepSpec::total_points() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= static_cast<std::size_t>(a.points);
  return n;
}

SweepSpec parse_sweep(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ValidationError("sweep must be a JSON object");
  static const char* const allowed[] = {"name", "description", "scenario", "scenario_file",
                                        "axes", "constraint", "budget"};
  for (const auto& item : doc.items())
    if (std::find(std::begin(allowed), std::end(allowed), item.key()) == std::end(allowed))
      throw ValidationError("unknown key", item.key());

  SweepSpec spec;
  if (doc.contains("scenario") == doc.contains("scenario_file"))
    throw ValidationError("give exactly one of 'scenario' or 'scenario_file'", "scenario");
  if (doc.contains("scenario")) {
    spec.base = doc.at("scenario");
  } else {
    std::filesystem::path p = doc.at("scenario_file").get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    spec.base = read_json_file(p);
  }
  // sweeps never certify or write per-point artifacts
  spec.base["outputs"] = {{"time_series", false}, {"report", false}, {"certify", false}};

  if (!doc.contains("axes") || !doc.at("axes").is_array() || doc.at("axes").empty() ||
      doc.at("axes").size() > 2)
    throw ValidationError("expected one or two axes", "axes");
  static const char* const names[] = {"total_zeta", "tooth_spacing_rad_s", "zeta_eff0",
                                      "m_targets", "t_sw_ns"};
  for (std::size_t i = 0; i < doc.at("axes").size(); ++i) {
    const json& a = doc.at("axes")[i];
    const std::string path = "axes[" + std::to_string(i) + "]";
    if (!a.is_object()) throw ValidationError("expected an object", path);
    for (const auto& item : a.items())
      if (item.key() != "name" && item.key() != "min" && item.key() != "max" &&
          item.key() != "points" && item.key() != "scale")
        throw ValidationError("unknown key", path + "." + item.key());
    SweepAxis axis;
    axis.name = a.value("name", "");
    if (std::find(std::begin(names), std::end(names), axis.name) == std::end(names))
      throw ValidationError("unknown axis '" + axis.name + "'", path + ".name");
    if (!a.contains("min") || !a.contains("max") || !a.at("min").is_number() ||
        !a.at("max").is_number())
      throw ValidationError("min and max must be numbers", path);
    axis.lo = a.at("min").get<double>();
    axis.hi = a.at("max").get<double>();
    if (!(axis.lo > 0.0) || !(axis.hi >= axis.lo) || !std::isfinite(axis.hi))
      throw ValidationError("range must be positive, finite and ordered", path);
    if (!a.contains("points") || !a.at("points").is_number_integer() ||
        a.at("points").get<int>() < 1)
      throw ValidationError("expected a positive integer", path + ".points");
    axis.points = a.at("points").get<int>();
    const std::string scale = a.value("scale", "linear");
    if (scale != "linear" && scale != "log")
      throw ValidationError("scale must be 'linear' or 'log'", path + ".scale");
    axis.log = scale == "log";
    for (const auto& other : spec.axes)
      if (other.name == axis.name) throw ValidationError("duplicate axis", path + ".name");
    spec.axes.push_back(axis);
  }

  if (doc.contains("constraint")) {
    const json& c = doc.at("constraint");
    if (!c.is_object()) throw ValidationError("expected an object", "constraint");
    for (const auto& item : c.items()) {
      if (!item.value().is_number() || !(item.value().get<double>() > 0.0))
        throw ValidationError("expected a positive number", "constraint." + item.key());
      if (item.key() == "fixed_bandwidth_rad_s")
        spec.fixed_bandwidth = item.value().get<double>();
      else if (item.key() == "fixed_bandwidth_delta_t_ns")  // M beta omega0 = 2 pi / dt
        spec.fixed_bandwidth = units::kTwoPi / units::ns(item.value().get<double>());
      else
        throw ValidationError("unknown constraint", "constraint." + item.key());
    }
    for (const auto& a : spec.axes)
      if (a.name == "tooth_spacing_rad_s")
        throw ValidationError("a fixed bandwidth already sets the tooth spacing", "constraint");
  }
  if (doc.contains("budget")) {
    if (!doc.at("budget").is_number_integer() || doc.at("budget").get<long long>() < 1)
      throw ValidationError("expected a positive integer", "budget");
    spec.budget = doc.at("budget").get<std::size_t>();
  }
  parse_scenario(spec.base);  // fail early on a broken base scenario
  return spec;
}

json sweep_point_document(const SweepSpec& spec, const std::vector<double>& values) {
  json doc = spec.base;
  auto axis_value = [&](const char* name) -> std::optional<double> {
    for (std::size_t i = 0; i < spec.axes.size(); ++i)
      if (spec.axes[i].name == name) return values.at(i);
    return std::nullopt;
  };
  if (auto m = axis_value("m_targets")) {
    int mi = static_cast<int>(std::lround(*m));
    if (mi % 2 == 0) ++mi;  // odd target counts only
    doc["comb"]["m_targets"] = mi;
  }
  const int m_targets = doc["comb"]["m_targets"].get<int>();
  const NuclearTransition transition = parse_scenario(doc).comb.transition;

  std::optional<double> spacing = axis_value("tooth_spacing_rad_s");
  if (spec.fixed_bandwidth) spacing = *spec.fixed_bandwidth / m_targets;
  if (spacing)
    doc["comb"]["delta_v_mm_s"] =
        units::to_mm_per_s(delta_v_for_spacing(transition, *spacing));

  if (auto z = axis_value("total_zeta")) doc["comb"]["zeta0"] = *z / m_targets;
  if (auto ze = axis_value("zeta_eff0")) {
    const DerivedComb d = derive_comb(parse_scenario(doc).comb);
    doc["comb"]["zeta0"] = *ze * d.finesse;
  }
  if (auto t = axis_value("t_sw_ns")) doc["schedule"]["t_sw_ns"] = *t;
  // auto-resolved entries must follow the new comb
  if (doc.contains("metrics")) doc["metrics"].erase("t_ec_ns");
  return doc;
}

namespace {

SweepRow evaluate_point(const SweepSpec& spec, const std::vector<double>& values) {
  SweepRow row;
  row.axis_values = values;
  for (double* f : {&row.zeta0, &row.total_zeta, &row.beta_omega0, &row.t0_ns, &row.finesse,
                    &row.zeta_eff0, &row.t_ec_ns, &row.eta_sim, &row.eta_gfc_analytic,
                    &row.total_zeta_opt, &row.sgem_bound, &row.fidelity,
                    &row.post_leakage_fraction})
    *f = kNaN;
  try {
    const Scenario sc = parse_scenario(sweep_point_document(spec, values));
    const DerivedComb d = derive_comb(sc.comb);
    row.m_targets = sc.comb.m_targets;
    row.zeta0 = sc.comb.zeta0;
    row.total_zeta = d.total_zeta;
    row.beta_omega0 = d.beta_omega0;
    if (!d.degenerate()) {
      row.t0_ns = units::to_ns(d.t0);
      row.finesse = d.finesse;
      row.zeta_eff0 = *d.zeta_eff0;
      row.eta_gfc_analytic = gfc_first_echo_efficiency(row.zeta_eff0, d.finesse);
      row.total_zeta_opt =
          sc.comb.m_targets * d.finesse * maximize_gfc_efficiency(d.finesse).zeta_eff0;
      if (sc.protocol == "sgem")
        row.sgem_bound = sgem_efficiency_bound(
            row.zeta_eff0, sc.comb.transition.gamma,
            units::ns(sc.resolved["schedule"]["t_sw_ns"].get<double>()));
    }
    const RunOutcome run = run_scenario(sc, false);
    if (sc.t_ec) row.t_ec_ns = units::to_ns(*sc.t_ec);
    if (run.report.efficiency) row.eta_sim = *run.report.efficiency;
    if (run.report.fidelity) row.fidelity = *run.report.fidelity;
    row.post_leakage_fraction = run.report.post_leakage_fraction;
  } catch (const Error& e) {
    row.status = e.kind();
  }
  return row;
}

}  // namespace

int resolve_workers(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DFCOMB_MAX_WORKERS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(1, n);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers) {
  const std::size_t total = spec.total_points();
  if (total > spec.budget) {
    std::vector<double> corner;
    for (const auto& a : spec.axes) corner.push_back(a.value(0));
    const Scenario first = parse_scenario(sweep_point_document(spec, corner));
    const double per_point = static_cast<double>(first.grid.n) * first.comb.m_targets *
                             std::max(1, first.solver.sublayers);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "sweep has %zu points, budget is %zu; estimated cost %.3g sublayer-steps",
                  total, spec.budget, per_point * static_cast<double>(total));
    throw BudgetError(buf);
  }

  std::vector<std::vector<double>> points(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    std::vector<double> v(spec.axes.size());
    for (std::size_t k = spec.axes.size(); k-- > 0;) {
      const auto np = static_cast<std::size_t>(spec.axes[k].points);
      v[k] = spec.axes[k].value(static_cast<int>(rest % np));
      rest /= np;
    }
    points[flat] = std::move(v);
  }

  std::vector<SweepRow> rows(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) rows[i] = evaluate_point(spec, points[i]);
  };
  const int n = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(resolve_workers(workers)), total));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < n; ++w) pool.emplace_back(worker);
    worker();
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  for (const auto& a : spec.axes) os << "axis_" << a.name << ',';
  os << "status,m_targets,zeta0,total_zeta,beta_omega0_rad_s,t0_ns,finesse,zeta_eff0,t_ec_ns,"
        "eta_sim,eta_gfc_analytic,total_zeta_opt,sgem_bound,fidelity,"
        "post_leakage_fraction\n";
  for (const auto& r : rows) {
    for (double v : r.axis_values) os << fmt(v) << ',';
    os << r.status << ',' << r.m_targets;
    for (double v : {r.zeta0, r.total_zeta, r.beta_omega0, r.t0_ns, r.finesse, r.zeta_eff0,
                     r.t_ec_ns, r.eta_sim, r.eta_gfc_analytic, r.total_zeta_opt,
                     r.sgem_bound, r.fidelity, r.post_leakage_fraction})
      os << ',' << fmt(v);
    os << '\n';
  }
}

// --- analytic predictions -------------------------------------------------

json predict(const PredictArgs& args) {
  NuclearTransition t = preset(args.preset.value_or("fe57"));
  if (args.energy_kev) t.energy_kev = *args.energy_kev;
  if (args.gamma_over_2pi_mhz) t.gamma = units::angular_from_mhz(*args.gamma_over_2pi_mhz);
  if (args.energy_kev || args.gamma_over_2pi_mhz) {
    if (!args.preset) t.name = "custom";
    t.validate();
  }
  if (args.m_targets < 1 || args.m_targets % 2 == 0)
    throw ValidationError("target count must be odd and >= 1", "m");
  if (args.delta_v_mm_s && args.finesse)
    throw ValidationError("give either --delta-v or --finesse, not both", "finesse");
  if (args.zeta0 && args.zeta_eff0)
    throw ValidationError("give either --zeta0 or --zeta-eff, not both", "zeta-eff");

  json out;
  out["transition"] = {{"name", t.name},
                       {"energy_kev", t.energy_kev},
                       {"gamma_rad_s", t.gamma},
                       {"gamma_over_2pi_mhz", units::mhz_from_angular(t.gamma)}};
  out["m_targets"] = args.m_targets;

  std::optional<double> finesse = args.finesse;
  std::optional<double> t0;
  if (args.finesse && !(*args.finesse > 0.0))
    throw ValidationError("must be positive", "finesse");
  if (args.delta_v_mm_s || args.finesse) {
    CombConfig c;
    c.transition = t;
    c.m_targets = args.m_targets;
    c.delta_v = args.delta_v_mm_s
                    ? units::mm_per_s(*args.delta_v_mm_s)
                    : delta_v_for_spacing(t, 2.0 * t.gamma * *args.finesse);
    c.validate();
    const DerivedComb d = derive_comb(c);
    if (!d.degenerate()) {
      finesse = d.finesse;
      t0 = d.t0;
      out["delta_v_mm_s"] = units::to_mm_per_s(c.delta_v);
      out["beta_omega0_rad_s"] = d.beta_omega0;
      out["t0_ns"] = units::to_ns(d.t0);
      out["finesse"] = d.finesse;
      out["comb_bandwidth_rad_s"] = d.comb_bandwidth;
      out["gfc_echo_times_ns"] = {units::to_ns(d.t0), units::to_ns(2.0 * d.t0),
                                  units::to_ns(3.0 * d.t0)};
    }
  }

  std::optional<double> zeta_eff = args.zeta_eff0;
  if (finesse) {
    if (args.zeta0) zeta_eff = *args.zeta0 / *finesse;
    const EfficiencyOptimum opt = maximize_gfc_efficiency(*finesse);
    out["optimum"] = {{"zeta_eff0", opt.zeta_eff0},
                      {"zeta0", opt.zeta_eff0 * *finesse},
                      {"total_zeta", opt.zeta_eff0 * *finesse * args.m_targets},
                      {"efficiency", opt.efficiency}};
    if (args.equal_split) {
      const double z = equal_split_zeta(*finesse);
      out["equal_split"] = {{"zeta_eff0", z},
                            {"zeta0", z * *finesse},
                            {"efficiency", gfc_first_echo_efficiency(z, *finesse)}};
      if (!zeta_eff) zeta_eff = z;
    }
    if (zeta_eff) {
      out["zeta_eff0"] = *zeta_eff;
      out["zeta0"] = *zeta_eff * *finesse;
      out["total_zeta"] = *zeta_eff * *finesse * args.m_targets;
      out["eta_gfc"] = gfc_first_echo_efficiency(*zeta_eff, *finesse);
    }
    if (args.pulse_fwhm_ns) {
      const ConditionReport c = check_conditions(args.m_targets, units::ns(*args.pulse_fwhm_ns),
                                                 t.gamma, *finesse);
      out["conditions"] = {{"finesse_lower", c.finesse_lower},
                           {"finesse_upper", c.finesse_upper},
                           {"coverage", c.coverage},
                           {"resolvable", c.resolvable},
                           {"feasible", c.feasible},
                           {"high_finesse", c.high_finesse},
                           {"satisfied", c.satisfied()}};
    }
  } else if (args.equal_split || args.zeta0) {
    throw ValidationError("needs --finesse or --delta-v", args.equal_split ? "equal-split" : "zeta0");
  } else if (zeta_eff) {
    out["zeta_eff0"] = *zeta_eff;
  }

  if (args.sgem) {
    if (!args.t_sw_ns) throw ValidationError("--sgem needs --t-sw", "t-sw");
    if (!zeta_eff) throw ValidationError("--sgem needs --zeta-eff, --zeta0 or --equal-split",
                                         "zeta-eff");
    const double t_sw = units::ns(*args.t_sw_ns);
    json s = {{"t_sw_ns", *args.t_sw_ns},
              {"echo_time_ns", 2.0 * *args.t_sw_ns},
              {"efficiency_bound", sgem_efficiency_bound(*zeta_eff, t.gamma, t_sw)}};
    if (args.pulse_fwhm_ns && t0) {
      if (auto w = sgem_window_warning(t_sw, units::ns(*args.pulse_fwhm_ns), *t0))
        s["warning"] = *w;
    }
    out["sgem"] = std::move(s);
  }
  return out;
}

}  // namespace dfc
