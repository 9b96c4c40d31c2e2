// Copyright 2026 The dfcomb Authors
// SPDX-License-Identifier: Apache-2.0

#include "dfcomb/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>

#include "dfcomb/errors.hpp"
#include "dfcomb/units.hpp"

namespace dfc {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& object_at(const json& parent, const std::string& key, const std::string& path) {
  const json& j = parent.at(key);
  if (!j.is_object()) throw ValidationError("expected an object", join(path, key));
  return j;
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items())
    if (!ok.contains(item.key())) throw ValidationError("unknown key", join(path, item.key()));
}

std::optional<double> opt_number(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ValidationError("expected a number", join(path, key));
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError("must be finite", join(path, key));
  return x;
}

double number(const json& obj, const std::string& key, const std::string& path) {
  auto v = opt_number(obj, key, path);
  if (!v) throw ValidationError("missing required key", join(path, key));
  return *v;
}

double positive(const json& obj, const std::string& key, const std::string& path) {
  const double v = number(obj, key, path);
  if (!(v > 0.0)) throw ValidationError("must be positive", join(path, key));
  return v;
}

std::string string_value(const json& obj, const std::string& key, const std::string& path,
                         std::optional<std::string> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ValidationError("missing required key", join(path, key));
  }
  if (!obj.at(key).is_string()) throw ValidationError("expected a string", join(path, key));
  return obj.at(key).get<std::string>();
}

bool bool_value(const json& obj, const std::string& key, const std::string& path, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) throw ValidationError("expected true or false", join(path, key));
  return obj.at(key).get<bool>();
}

std::pair<double, double> window_ns(const json& obj, const std::string& key,
                                    const std::string& path) {
  if (!obj.contains(key)) throw ValidationError("missing required key", join(path, key));
  const json& w = obj.at(key);
  if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
    throw ValidationError("expected [begin, end]", join(path, key));
  const double a = w[0].get<double>(), b = w[1].get<double>();
  if (!(b > a)) throw ValidationError("window end must follow its start", join(path, key));
  return {a, b};
}

// --- sections -------------------------------------------------------------

NuclearTransition parse_transition(const json& j, json& out) {
  const std::string path = "transition";
  check_keys(j, path, {"name", "energy_kev", "gamma_over_2pi_mhz", "lifetime_ns"});
  const std::string name = string_value(j, "name", path);
  out["name"] = name;
  NuclearTransition t;
  t.name = name;
  bool is_preset = true;
  try {
    t = preset(name);
  } catch (const LookupError&) {
    is_preset = false;
  }
  if (auto e = opt_number(j, "energy_kev", path)) {
    t.energy_kev = *e;
    out["energy_kev"] = *e;
  } else if (!is_preset) {
    throw ValidationError("not a preset; energy_kev is required", "transition.name");
  }
  if (auto g = opt_number(j, "gamma_over_2pi_mhz", path)) {
    t.gamma = units::angular_from_mhz(*g);
    out["gamma_over_2pi_mhz"] = *g;
  } else if (!is_preset) {
    throw ValidationError("not a preset; gamma_over_2pi_mhz is required", "transition.name");
  }
  if (auto l = opt_number(j, "lifetime_ns", path)) {
    t.lifetime_s = units::ns(*l);
    out["lifetime_ns"] = *l;
  }
  t.validate();
  return t;
}

CombConfig parse_comb(const json& j, const NuclearTransition& transition, json& out) {
  const std::string path = "comb";
  check_keys(j, path, {"m_targets", "zeta0", "delta_v_mm_s", "target_thickness_nm",
                       "target_positions_mm"});
  CombConfig c;
  c.transition = transition;
  if (!j.contains("m_targets") || !j.at("m_targets").is_number_integer())
    throw ValidationError("expected an odd integer", "comb.m_targets");
  c.m_targets = j.at("m_targets").get<int>();
  c.zeta0 = number(j, "zeta0", path);
  c.delta_v = units::mm_per_s(number(j, "delta_v_mm_s", path));
  out["m_targets"] = c.m_targets;
  out["zeta0"] = j.at("zeta0");
  out["delta_v_mm_s"] = j.at("delta_v_mm_s");
  if (auto d = opt_number(j, "target_thickness_nm", path)) {
    c.target_thickness = *d * 1e-9;
    out["target_thickness_nm"] = *d;
  }
  if (j.contains("target_positions_mm")) {
    const json& pos = j.at("target_positions_mm");
    if (!pos.is_array() || pos.size() != static_cast<std::size_t>(c.m_targets))
      throw ValidationError("expected one position per target", "comb.target_positions_mm");
    for (const auto& p : pos) {
      if (!p.is_number()) throw ValidationError("expected numbers", "comb.target_positions_mm");
      c.target_positions.push_back(p.get<double>() * 1e-3);
    }
    out["target_positions_mm"] = pos;
  }
  c.validate();
  return c;
}

PulseSpec parse_pulse(const json& j, json& out) {
  const std::string path = "pulse";
  check_keys(j, path, {"shape", "decay_ns", "peaks"});
  PulseSpec p;
  const std::string shape = string_value(j, "shape", path, "gaussian");
  if (shape == "gaussian") p.shape = PulseShape::gaussian;
  else if (shape == "exponential") p.shape = PulseShape::exponential;
  else throw ValidationError("shape must be 'gaussian' or 'exponential'", "pulse.shape");
  out["shape"] = shape;
  if (auto d = opt_number(j, "decay_ns", path)) {
    if (!(*d > 0.0)) throw ValidationError("must be positive", "pulse.decay_ns");
    p.decay_constant = units::ns(*d);
    out["decay_ns"] = *d;
  }
  if (!j.contains("peaks") || !j.at("peaks").is_array() || j.at("peaks").empty())
    throw ValidationError("expected a non-empty array", "pulse.peaks");
  out["peaks"] = json::array();
  for (std::size_t i = 0; i < j.at("peaks").size(); ++i) {
    const json& pk = j.at("peaks")[i];
    const std::string pp = "pulse.peaks[" + std::to_string(i) + "]";
    if (!pk.is_object()) throw ValidationError("expected an object", pp);
    check_keys(pk, pp, {"amplitude_re", "amplitude_im", "center_ns", "fwhm_ns"});
    const double re = opt_number(pk, "amplitude_re", pp).value_or(1.0);
    const double im = opt_number(pk, "amplitude_im", pp).value_or(0.0);
    const double center = number(pk, "center_ns", pp);
    const double fwhm = positive(pk, "fwhm_ns", pp);
    p.peaks.push_back({{re, im}, units::ns(center), units::ns(fwhm)});
    out["peaks"].push_back(
        {{"amplitude_re", re}, {"amplitude_im", im}, {"center_ns", center}, {"fwhm_ns", fwhm}});
  }
  p.validate();
  return p;
}

Segment parse_custom_segment(const json& s, const std::string& path, double t_in, json& out) {
  if (!s.is_object()) throw ValidationError("expected an object", path);
  const std::string law = string_value(s, "law", path, "constant");
  out["law"] = law;
  Segment seg;
  const double begin = number(s, "t_begin_ns", path);
  out["t_begin_ns"] = begin;
  seg.t_begin = t_in + units::ns(begin);
  if (auto end = opt_number(s, "t_end_ns", path)) {
    seg.t_end = t_in + units::ns(*end);
    out["t_end_ns"] = *end;
  } else {
    seg.t_end = kForever;
    out["t_end_ns"] = nullptr;
  }
  if (law == "constant") {
    check_keys(s, path, {"t_begin_ns", "t_end_ns", "law", "scale"});
    const double scale = number(s, "scale", path);
    out["scale"] = scale;
    seg.law = ConstantScale{scale};
  } else if (law == "sine") {
    check_keys(s, path, {"t_begin_ns", "t_end_ns", "law", "base", "amplitude", "freq_mhz",
                         "phase_rad"});
    Sinusoid sine;
    sine.base = opt_number(s, "base", path).value_or(1.0);
    sine.amplitude = number(s, "amplitude", path);
    const double f = number(s, "freq_mhz", path);
    sine.angular_freq = units::angular_from_mhz(f);
    sine.phase = opt_number(s, "phase_rad", path).value_or(0.0);
    out["base"] = sine.base;
    out["amplitude"] = sine.amplitude;
    out["freq_mhz"] = f;
    out["phase_rad"] = sine.phase;
    seg.law = sine;
  } else {
    throw ValidationError("law must be 'constant' or 'sine'", join(path, "law"));
  }
  return seg;
}

VelocitySchedule parse_schedule(const json& j, double t_in, std::string& protocol, json& out) {
  const std::string path = "schedule";
  protocol = string_value(j, "protocol", path, "gfc");
  out["protocol"] = protocol;
  if (protocol == "gfc") {
    check_keys(j, path, {"protocol"});
    return make_gfc();
  }
  if (protocol == "sgem") {
    check_keys(j, path, {"protocol", "t_sw_ns"});
    const double t_sw = positive(j, "t_sw_ns", path);
    out["t_sw_ns"] = t_sw;
    return make_sgem(t_in + units::ns(t_sw));
  }
  if (protocol == "hold") {
    check_keys(j, path, {"protocol", "hold_start_ns", "hold_ns"});
    const double start = number(j, "hold_start_ns", path);
    const double len = positive(j, "hold_ns", path);
    out["hold_start_ns"] = start;
    out["hold_ns"] = len;
    return make_hold(t_in + units::ns(start), units::ns(len));
  }
  if (protocol == "boost") {
    check_keys(j, path, {"protocol", "boost_window_ns", "boost_scale"});
    const auto [a, b] = window_ns(j, "boost_window_ns", path);
    const double scale = number(j, "boost_scale", path);
    out["boost_window_ns"] = {a, b};
    out["boost_scale"] = scale;
    return make_boost(t_in + units::ns(a), t_in + units::ns(b), scale);
  }
  if (protocol == "sine") {
    check_keys(j, path, {"protocol", "sine"});
    if (!j.contains("sine") || !j.at("sine").is_object())
      throw ValidationError("expected an object", "schedule.sine");
    const json& s = j.at("sine");
    const std::string sp = "schedule.sine";
    check_keys(s, sp, {"window_ns", "amplitude", "freq_mhz", "phase_rad", "base"});
    const auto [a, b] = window_ns(s, "window_ns", sp);
    const double amp = number(s, "amplitude", sp);
    const double f = number(s, "freq_mhz", sp);
    const double phase = opt_number(s, "phase_rad", sp).value_or(0.0);
    const double base = opt_number(s, "base", sp).value_or(1.0);
    out["sine"] = {{"window_ns", {a, b}}, {"amplitude", amp}, {"freq_mhz", f},
                   {"phase_rad", phase}, {"base", base}};
    return make_sine(t_in + units::ns(a), t_in + units::ns(b), amp,
                     units::angular_from_mhz(f), phase, base);
  }
  if (protocol == "custom") {
    check_keys(j, path, {"protocol", "custom"});
    if (!j.contains("custom") || !j.at("custom").is_object())
      throw ValidationError("expected an object", "schedule.custom");
    const json& c = j.at("custom");
    check_keys(c, "schedule.custom", {"segments"});
    if (!c.contains("segments") || !c.at("segments").is_array())
      throw ValidationError("expected an array", "schedule.custom.segments");
    std::vector<Segment> segments;
    json segs = json::array();
    for (std::size_t i = 0; i < c.at("segments").size(); ++i) {
      json seg_out;
      segments.push_back(parse_custom_segment(
          c.at("segments")[i], "schedule.custom.segments[" + std::to_string(i) + "]", t_in,
          seg_out));
      segs.push_back(std::move(seg_out));
    }
    out["custom"] = {{"segments", segs}};
    return VelocitySchedule(std::move(segments));
  }
  throw ValidationError("protocol must be one of gfc, sgem, hold, boost, sine, custom",
                        "schedule.protocol");
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw ValidationError("scenario must be a JSON object");
  check_keys(doc, "", {"name", "description", "transition", "comb", "pulse", "schedule",
                       "solver", "metrics", "outputs", "manifest"});
  for (const char* key : {"transition", "comb", "pulse"})
    if (!doc.contains(key)) throw ValidationError("missing required section", key);

  Scenario sc;
  json& r = sc.resolved;
  r = json::object();
  sc.name = string_value(doc, "name", "", "scenario");
  r["name"] = sc.name;
  if (doc.contains("description")) r["description"] = doc.at("description");

  r["transition"] = json::object();
  const NuclearTransition transition =
      parse_transition(object_at(doc, "transition", ""), r["transition"]);
  r["comb"] = json::object();
  sc.comb = parse_comb(object_at(doc, "comb", ""), transition, r["comb"]);
  r["pulse"] = json::object();
  sc.pulse = parse_pulse(object_at(doc, "pulse", ""), r["pulse"]);
  const double t_in = sc.t_in();
  const DerivedComb derived = derive_comb(sc.comb);

  r["schedule"] = json::object();
  const json empty = json::object();
  sc.schedule = parse_schedule(doc.contains("schedule") ? object_at(doc, "schedule", "") : empty,
                               t_in, sc.protocol, r["schedule"]);

  double fwhm_max = 0.0, last_center = t_in, first_edge = t_in;
  for (const auto& p : sc.pulse.peaks) {
    fwhm_max = std::max(fwhm_max, p.fwhm);
    last_center = std::max(last_center, p.center);
    first_edge = std::min(first_edge, p.center - 6.0 * p.fwhm);
  }
  const double delta_t = sc.pulse.peaks.front().fwhm;

  if (sc.protocol == "sgem") {
    if (auto w = sgem_window_warning(units::ns(r["schedule"]["t_sw_ns"].get<double>()), delta_t,
                                     derived.t0))
      sc.warnings.push_back(*w);
  }

  // metrics: echo time and mode
  const json& m = doc.contains("metrics") ? object_at(doc, "metrics", "") : empty;
  check_keys(m, "metrics", {"mode", "t_ec_ns", "noise_floor"});
  r["metrics"] = json::object();
  const std::string mode = string_value(m, "mode", "metrics", sc.protocol == "sgem" ? "sgem" : "gfc");
  sc.mode = echo_mode_from_string(mode);
  r["metrics"]["mode"] = mode;
  if (auto t_ec = opt_number(m, "t_ec_ns", "metrics")) {
    if (!(*t_ec > 0.0)) throw ValidationError("must be positive", "metrics.t_ec_ns");
    sc.t_ec = units::ns(*t_ec);
    r["metrics"]["t_ec_ns"] = *t_ec;
  } else if (!derived.degenerate()) {
    double horizon = 4.0 * derived.t0;
    for (const auto& seg : sc.schedule.segments())
      if (std::isfinite(seg.t_end)) horizon += seg.t_end - seg.t_begin;
    for (const auto& e : predict_echo_times(sc.schedule, derived.beta_omega0, t_in, horizon)) {
      if (e.time - t_in > 0.5 * delta_t) {
        // stored in ns so a manifest re-run reproduces the same value
        const double t_ec_ns = units::to_ns(e.time - t_in);
        sc.t_ec = units::ns(t_ec_ns);
        r["metrics"]["t_ec_ns"] = t_ec_ns;
        break;
      }
    }
  }
  sc.noise_floor = opt_number(m, "noise_floor", "metrics").value_or(1e-6);
  if (sc.noise_floor < 0.0) throw ValidationError("must be >= 0", "metrics.noise_floor");
  r["metrics"]["noise_floor"] = sc.noise_floor;

  // solver grid; automatic values are resolved in ns first
  const json& s = doc.contains("solver") ? object_at(doc, "solver", "") : empty;
  check_keys(s, "solver", {"dt_ns", "t_start_ns", "t_end_ns", "sublayers", "record_polarization"});
  r["solver"] = json::object();
  double dt_ns;
  if (auto v = opt_number(s, "dt_ns", "solver")) {
    if (!(*v > 0.0)) throw ValidationError("must be positive", "solver.dt_ns");
    dt_ns = *v;
  } else {
    dt_ns = units::to_ns(sc.pulse.min_fwhm()) / 100.0;
    if (derived.beta_omega0 > 0.0)
      dt_ns = std::min(dt_ns, units::to_ns(units::kTwoPi /
                                           (20.0 * sc.comb.m_targets * derived.beta_omega0)));
  }
  // the default grid covers the input window t_in +- t_ec/2 used by the metrics
  if (sc.t_ec) first_edge = std::min(first_edge, t_in - 0.5 * *sc.t_ec - 2.0 * fwhm_max);
  const double t_start_ns =
      opt_number(s, "t_start_ns", "solver").value_or(units::to_ns(first_edge));
  double t_end_ns;
  if (auto v = opt_number(s, "t_end_ns", "solver")) {
    t_end_ns = *v;
  } else {
    double t_end = last_center + 6.0 * fwhm_max;
    if (sc.t_ec) t_end = std::max(t_end, last_center + 1.5 * *sc.t_ec + 4.0 * fwhm_max);
    t_end_ns = units::to_ns(t_end);
  }
  if (!(t_end_ns > t_start_ns)) throw ValidationError("must exceed t_start_ns", "solver.t_end_ns");
  int layers = default_sublayers(sc.comb.zeta0);
  if (s.contains("sublayers")) {
    if (!s.at("sublayers").is_number_integer() || s.at("sublayers").get<int>() < 1)
      throw ValidationError("expected a positive integer", "solver.sublayers");
    layers = s.at("sublayers").get<int>();
  }
  const bool record = bool_value(s, "record_polarization", "solver", false);
  r["solver"] = {{"dt_ns", dt_ns},
                 {"t_start_ns", t_start_ns},
                 {"t_end_ns", t_end_ns},
                 {"sublayers", layers},
                 {"record_polarization", record}};
  const auto n = static_cast<std::size_t>(std::floor((t_end_ns - t_start_ns) / dt_ns + 1e-9)) + 1;
  sc.grid = {units::ns(t_start_ns), units::ns(dt_ns), n};
  sc.solver.dt = sc.grid.dt;
  sc.solver.sublayers = layers;
  sc.solver.record_polarization = record;
  sc.solver.t_end = units::ns(t_end_ns);
  sc.solver.pulse_fwhm = sc.pulse.min_fwhm();
  if (sc.comb.zeta0 / layers > 0.5)
    sc.warnings.push_back("sublayers thicker than 0.5 optical depths");

  // requested artifacts
  const json& o = doc.contains("outputs") ? object_at(doc, "outputs", "") : empty;
  check_keys(o, "outputs", {"time_series", "report", "certify", "transfer_function"});
  sc.write_time_series = bool_value(o, "time_series", "outputs", true);
  sc.write_report = bool_value(o, "report", "outputs", true);
  sc.certify = bool_value(o, "certify", "outputs", true);
  r["outputs"] = {{"time_series", sc.write_time_series},
                  {"report", sc.write_report},
                  {"certify", sc.certify}};
  if (o.contains("transfer_function")) {
    const json& tf = object_at(o, "transfer_function", "outputs");
    const std::string tp = "outputs.transfer_function";
    check_keys(tf, tp, {"omega_min_rad_s", "omega_max_rad_s", "points"});
    TransferRequest req;
    req.omega_min = number(tf, "omega_min_rad_s", tp);
    req.omega_max = number(tf, "omega_max_rad_s", tp);
    if (!(req.omega_max > req.omega_min))
      throw ValidationError("must exceed omega_min_rad_s", tp + ".omega_max_rad_s");
    if (!tf.contains("points") || !tf.at("points").is_number_integer() ||
        tf.at("points").get<long long>() < 2)
      throw ValidationError("expected an integer >= 2", tp + ".points");
    req.points = tf.at("points").get<std::size_t>();
    sc.transfer = req;
    r["outputs"]["transfer_function"] = {{"omega_min_rad_s", req.omega_min},
                                         {"omega_max_rad_s", req.omega_max},
                                         {"points", req.points}};
  }
  return sc;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_json_file(path));
}

}  // namespace dfc
