// Copyright 2026 The jerkseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jerkseg/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "jerkseg/baselines.hpp"
#include "jerkseg/presets.hpp"

namespace jerkseg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double ParseNumber(const std::string& text, const std::string& where) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::invalid_argument(where + ": not a number: '" + text + "'");
  }
  return v;
}

int ParseInt(const std::string& text, const std::string& where) {
  const double v = ParseNumber(text, where);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw std::invalid_argument(where + ": not an integer: '" + text + "'");
  }
  return static_cast<int>(v);
}

std::string CleanField(std::string s) {
  for (char& c : s) {
    if (c == ',') c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

struct Planned {
  std::optional<PlanResult> scurve, zv, ocpj;
  std::string error;
};

Planned PlanAll(const RunConfig& cfg, const PlantModal& modal, double z_f) {
  Planned p;
  auto note = [&](const char* who, const std::exception& e) {
    if (!p.error.empty()) p.error += " | ";
    p.error += std::string(who) + ": " + e.what();
  };
  try {
    p.scurve = SCurve(z_f, cfg.limits);
    p.zv = ZvShape(*p.scurve, modal);
  } catch (const std::exception& e) {
    note("scurve", e);
  }
  try {
    p.ocpj = Plan(z_f, cfg.limits, modal, cfg.optimizer);
  } catch (const std::exception& e) {
    note("ocpj", e);
  }
  return p;
}

SweepRow MakeRow(const Planned& p, double z_f, const PlantModal& sim) {
  SweepRow r;
  r.z_f = z_f;
  r.f_sys = sim.damped_frequency_hz();
  r.error = CleanField(p.error);
  r.t_scurve = p.scurve ? p.scurve->t_ft : kNaN;
  r.t_zv = p.zv ? p.zv->t_ft : kNaN;
  r.t_ocpj = p.ocpj ? p.ocpj->t_ft : kNaN;
  r.dt_scurve_zv = r.t_scurve - r.t_zv;
  r.dt_ocpj_zv = r.t_ocpj - r.t_zv;
  r.case_tag = p.ocpj ? ToString(p.ocpj->case_tag) : "none";
  r.a_max_used = p.ocpj ? p.ocpj->a_max_used : kNaN;
  r.alg3_iter = p.ocpj ? p.ocpj->alg3_iterations : 0;
  r.a0_scurve = p.scurve ? ResidualAmplitude(p.scurve->profile, sim) : kNaN;
  r.a0_zv = p.zv ? ResidualAmplitude(p.zv->profile, sim) : kNaN;
  r.a0_ocpj = p.ocpj ? ResidualAmplitude(p.ocpj->profile, sim) : kNaN;
  return r;
}

}  // namespace

PlantModal RunConfig::modal() const {
  if (physical) return DeriveModal(*physical);
  if (modal_params) return *modal_params;
  throw std::invalid_argument("config has no plant");
}

void RunConfig::Validate() const {
  if (physical.has_value() == modal_params.has_value()) {
    throw std::invalid_argument("config needs exactly one plant form");
  }
  jerkseg::Validate(modal());
  jerkseg::Validate(limits);
  optimizer.Validate();
  if (!(controller_cycle > 0.0)) {
    throw std::invalid_argument("controller_cycle must be positive");
  }
}

RunConfig ParseConfig(std::istream& in) {
  struct Entry {
    std::string value;
    std::string where;  // "line N: key"
  };
  std::map<std::string, Entry> kv;
  std::string section, line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno);
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = Trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument(where + ": bad section header");
      section = Trim(line.substr(1, line.size() - 2));
      if (section != "plant" && section != "limits" && section != "optimizer" &&
          section != "bench") {
        throw std::invalid_argument(where + ": unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument(where + ": expected key = value");
    if (section.empty()) throw std::invalid_argument(where + ": key outside a section");
    const std::string key = section + "." + Trim(line.substr(0, eq));
    if (kv.count(key)) throw std::invalid_argument(where + ": duplicate key " + key);
    kv[key] = {Trim(line.substr(eq + 1)), where + ": " + key};
  }

  RunConfig cfg;
  auto take = [&](const std::string& key) -> std::optional<Entry> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    Entry v = it->second;
    kv.erase(it);
    return v;
  };
  auto number = [&](const std::string& key) {
    auto v = take(key);
    if (!v) throw std::invalid_argument("missing key " + key);
    return ParseNumber(v->value, v->where);
  };

  const bool physical = kv.count("plant.m_s") || kv.count("plant.m_b") ||
                        kv.count("plant.k") || kv.count("plant.d");
  const bool modal = kv.count("plant.omega0") || kv.count("plant.delta") ||
                     kv.count("plant.m_star");
  if (physical && modal) {
    throw std::invalid_argument("[plant] mixes physical and modal keys");
  }
  if (physical) {
    PlantPhysical p;
    p.m_s = number("plant.m_s");
    p.m_b = number("plant.m_b");
    p.k = number("plant.k");
    p.d = number("plant.d");
    cfg.physical = p;
  } else if (modal) {
    const double w0 = number("plant.omega0");
    const double delta = number("plant.delta");
    const double m_star = number("plant.m_star");
    cfg.modal_params = PlantModal::FromUndamped(w0, delta, m_star);
  } else {
    throw std::invalid_argument("missing [plant] section");
  }
  cfg.limits.v_lim = number("limits.v_lim");
  cfg.limits.a_lim = number("limits.a_lim");
  cfg.limits.j_lim = number("limits.j_lim");
  if (auto v = take("optimizer.dt_boundary")) cfg.optimizer.dt_boundary = ParseNumber(v->value, v->where);
  if (auto v = take("optimizer.n_max_iter")) cfg.optimizer.n_max_iter = ParseInt(v->value, v->where);
  if (auto v = take("optimizer.a_scan_points")) cfg.optimizer.a_scan_points = ParseInt(v->value, v->where);
  if (auto v = take("optimizer.fd_step_rel")) cfg.optimizer.fd_step_rel = ParseNumber(v->value, v->where);
  if (auto v = take("bench.segment_method")) {
    try {
      cfg.optimizer.segment_method = ParseSegmentMethod(v->value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(v->where + ": " + e.what());
    }
  }
  if (auto v = take("bench.controller_cycle")) cfg.controller_cycle = ParseNumber(v->value, v->where);
  if (!kv.empty()) throw std::invalid_argument(kv.begin()->second.where + ": unknown key");
  cfg.Validate();
  return cfg;
}

RunConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  return ParseConfig(in);
}

RunConfig PresetConfig(const std::string& name) {
  RunConfig cfg;
  const ParameterSet set = ParameterSetByName(name);
  if (name == "pickplace") {
    cfg.physical = PickAndPlacePhysical();
  } else {
    cfg.modal_params = set.modal;
  }
  cfg.limits = set.limits;
  cfg.Validate();
  return cfg;
}

std::string SerializeConfig(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[plant]\n";
  if (cfg.physical) {
    out << "m_s = " << Num(cfg.physical->m_s) << "\n"
        << "m_b = " << Num(cfg.physical->m_b) << "\n"
        << "k = " << Num(cfg.physical->k) << "\n"
        << "d = " << Num(cfg.physical->d) << "\n";
  } else if (cfg.modal_params) {
    out << "omega0 = " << Num(cfg.modal_params->omega0) << "\n"
        << "delta = " << Num(cfg.modal_params->delta) << "\n"
        << "m_star = " << Num(cfg.modal_params->m_star) << "\n";
  }
  out << "[limits]\n"
      << "v_lim = " << Num(cfg.limits.v_lim) << "\n"
      << "a_lim = " << Num(cfg.limits.a_lim) << "\n"
      << "j_lim = " << Num(cfg.limits.j_lim) << "\n"
      << "[optimizer]\n"
      << "dt_boundary = " << Num(cfg.optimizer.dt_boundary) << "\n"
      << "n_max_iter = " << cfg.optimizer.n_max_iter << "\n"
      << "a_scan_points = " << cfg.optimizer.a_scan_points << "\n"
      << "fd_step_rel = " << Num(cfg.optimizer.fd_step_rel) << "\n"
      << "[bench]\n"
      << "segment_method = " << ToString(cfg.optimizer.segment_method) << "\n"
      << "controller_cycle = " << Num(cfg.controller_cycle) << "\n";
  return out.str();
}

std::uint64_t ConfigHash(const RunConfig& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : SerializeConfig(cfg)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::string> SweepColumns() {
  return {"z_f",        "f_sys",     "t_scurve",  "t_zv",  "t_ocpj",
          "dt_scurve_zv", "dt_ocpj_zv", "case",   "a_max_used", "alg3_iter",
          "a0_scurve",  "a0_zv",     "a0_ocpj",   "error"};
}

std::vector<SweepRow> SweepDistances(const RunConfig& cfg,
                                     std::span<const double> z_list,
                                     unsigned workers) {
  cfg.Validate();
  if (z_list.empty()) throw std::invalid_argument("empty distance list");
  for (double z : z_list) {
    if (!(z > 0.0)) throw std::invalid_argument("sweep distances must be positive");
  }
  const PlantModal modal = cfg.modal();
  // Warm the a_best memo once so workers do not race to compute it.
  BestAccelCase2(cfg.limits, modal, cfg.optimizer);

  std::vector<SweepRow> rows(z_list.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(z_list.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < z_list.size();) {
      rows[i] = MakeRow(PlanAll(cfg, modal, z_list[i]), z_list[i], modal);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return rows;
}

std::vector<SweepRow> SweepSensitivity(const RunConfig& cfg, double z_f,
                                       std::span<const double> f_sys_list) {
  cfg.Validate();
  const PlantModal modal = cfg.modal();
  const Planned planned = PlanAll(cfg, modal, z_f);
  std::vector<SweepRow> rows;
  for (double f : f_sys_list) {
    if (!(f > 0.0)) throw std::invalid_argument("frequencies must be positive");
    const PlantModal sim =
        PlantModal::FromDamped(2.0 * std::numbers::pi * f, modal.delta, modal.m_star);
    rows.push_back(MakeRow(planned, z_f, sim));
  }
  return rows;
}

std::vector<double> LinearGrid(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("grid needs at least one point");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = lo + (hi - lo) * k / (n - 1);
  return out;
}

void WriteSweepCsv(std::ostream& out, const RunConfig& cfg,
                   std::span<const SweepRow> rows) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(ConfigHash(cfg)));
  out << "# jerkseg sweep\n# config_hash = " << hash << "\n"
      << "# absent_planners = fir_imp,ocp_s\n";
  std::istringstream conf(SerializeConfig(cfg));
  for (std::string line; std::getline(conf, line);) out << "# " << line << "\n";
  const auto cols = SweepColumns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const SweepRow& r : rows) {
    out << Num(r.z_f) << ',' << Num(r.f_sys) << ',' << Num(r.t_scurve) << ','
        << Num(r.t_zv) << ',' << Num(r.t_ocpj) << ',' << Num(r.dt_scurve_zv) << ','
        << Num(r.dt_ocpj_zv) << ',' << CleanField(r.case_tag) << ','
        << Num(r.a_max_used) << ',' << r.alg3_iter << ',' << Num(r.a0_scurve) << ','
        << Num(r.a0_zv) << ',' << Num(r.a0_ocpj) << ',' << CleanField(r.error) << "\n";
  }
}

std::vector<SweepRow> ReadSweepCsv(std::istream& in) {
  std::vector<SweepRow> rows;
  std::string line;
  bool header_seen = false;
  const auto cols = SweepColumns();
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (!header_seen) {
      if (f != cols) throw std::invalid_argument("unexpected sweep CSV header");
      header_seen = true;
      continue;
    }
    if (f.size() != cols.size()) throw std::invalid_argument("bad sweep CSV row: " + line);
    SweepRow r;
    r.z_f = ParseNumber(f[0], "z_f");
    r.f_sys = ParseNumber(f[1], "f_sys");
    r.t_scurve = ParseNumber(f[2], "t_scurve");
    r.t_zv = ParseNumber(f[3], "t_zv");
    r.t_ocpj = ParseNumber(f[4], "t_ocpj");
    r.dt_scurve_zv = ParseNumber(f[5], "dt_scurve_zv");
    r.dt_ocpj_zv = ParseNumber(f[6], "dt_ocpj_zv");
    r.case_tag = f[7];
    r.a_max_used = ParseNumber(f[8], "a_max_used");
    r.alg3_iter = ParseInt(f[9], "alg3_iter");
    r.a0_scurve = ParseNumber(f[10], "a0_scurve");
    r.a0_zv = ParseNumber(f[11], "a0_zv");
    r.a0_ocpj = ParseNumber(f[12], "a0_ocpj");
    r.error = f[13];
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw std::invalid_argument("sweep CSV without header");
  return rows;
}

EnvelopeFitResult EnvelopeFit(std::span<const double> t, std::span<const double> x,
                              double t_ft, const PlantModal& modal) {
  if (t.size() != x.size() || t.empty()) {
    throw std::invalid_argument("envelope fit needs equally sized, non-empty series");
  }
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  if (modal.omega_d * (*hi - *lo) < 1.0) {
    throw std::domain_error("envelope fit window too short: basis is rank deficient");
  }
  // Normal equations of the 2x2 problem.
  double ss = 0, sc = 0, cc = 0, sx = 0, cx = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double env = std::exp(-modal.delta * (t[i] - t_ft));
    const double s = env * std::sin(modal.omega_d * t[i]);
    const double c = env * std::cos(modal.omega_d * t[i]);
    ss += s * s;
    sc += s * c;
    cc += c * c;
    sx += s * x[i];
    cx += c * x[i];
  }
  const double det = ss * cc - sc * sc;
  if (!(det > 1e-12 * ss * cc)) {
    throw std::domain_error("envelope fit basis is rank deficient");
  }
  const double a = (sx * cc - cx * sc) / det;
  const double b = (cx * ss - sx * sc) / det;
  return {std::hypot(a, b), std::atan2(-b, a)};
}

std::vector<KinematicSample> ResampleToCycle(const PlanResult& plan, double cycle) {
  if (!(cycle > 0.0)) throw std::invalid_argument("cycle must be positive");
  const double ratio = plan.t_ft / cycle;
  // Absorb round-off so an exact multiple does not gain a cycle.
  const auto n = static_cast<std::size_t>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio)));
  std::vector<KinematicSample> out;
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    out.push_back(EvalKinematics(plan.profile, static_cast<double>(k) * cycle));
  }
  return out;
}

void WriteTrajectoryCsv(std::ostream& out, const RunConfig& cfg,
                        std::span<const KinematicSample> samples) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(ConfigHash(cfg)));
  out << "# jerkseg trajectory\n# config_hash = " << hash << "\n"
      << "t,z,v,acc,jerk\n";
  for (const KinematicSample& s : samples) {
    out << Num(s.t) << ',' << Num(s.z) << ',' << Num(s.v) << ',' << Num(s.acc)
        << ',' << Num(s.jerk) << "\n";
  }
}

double InitialJerkLimit(double a_max, const PlantModal& modal) {
  if (!(a_max > 0.0)) throw std::invalid_argument("a_max must be positive");
  return a_max * modal.omega_d / (2.0 * std::numbers::pi);
}

std::vector<std::pair<double, double>> Case2Curve(const RunConfig& cfg) {
  cfg.Validate();
  const PlantModal modal = cfg.modal();
  std::vector<std::pair<double, double>> out;
  const int n = cfg.optimizer.a_scan_points;
  for (int k = 1; k <= n; ++k) {
    const double a = cfg.limits.a_lim * k / n;
    out.emplace_back(a, Case2Objective(a, cfg.limits, modal, cfg.optimizer.segment_method));
  }
  return out;
}

}  // namespace jerkseg
