#include "cli_app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nematic/beris_edwards.hpp"
#include "nematic/coefficients.hpp"
#include "nematic/ericksen_leslie.hpp"
#include "nematic/hilbert_bridge.hpp"
#include "nematic/selfcheck.hpp"
#include "nematic/snapshot.hpp"

using namespace nematic;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitAbort = 3;

struct ConfigError : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct RunConfig {
  MaterialParams params;
  int dim = 2;
  int nx = 64, ny = 64, nz = 8;
  double lx = 1.0, ly = 1.0, lz = 1.0;
  std::string scheme = "spectral";
  std::string mode;
  double dt = 1e-4;
  double sigma_split = -1.0;
  double lambda_bulk = -1.0;
  double cfl_safety = 0.5;
  bool dealias = true;
  double drift_tol = 1e-3;
  std::string initial = "standard";
  double amp = 0.5;
  double v_amp = 0.0;
  double T = 0.1;
  int samples = 10;
  std::vector<double> sample_times;
  int log_every = 10;
  std::vector<double> epsilons{0.2, 0.1, 0.05, 0.025};
  double dt_factor = 0.1;
  double el_dt = 1e-4;
  double study_sigma_split = 0.0;
  double slope_min = 0.8;
  std::string out = "out";
  bool bitrepro = false;
  std::uint64_t seed = 1;
  int draws = 10000;
};

std::string key_error(const std::string& key, const std::string& what) {
  return "config key '" + key + "': " + what;
}

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key_error(key, "expected a number, got " + v.dump()));
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(key_error(key, "must be finite"));
  return x;
}

long long as_integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key_error(key, "expected an integer, got " + v.dump()));
  return v.get<long long>();
}

using Setter = std::function<void(RunConfig&, const json&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto num = [&t](const std::string& k, double RunConfig::*m) {
      t[k] = [m](RunConfig& c, const json& v, const std::string& key) { c.*m = as_number(v, key); };
    };
    auto par = [&t](const std::string& k, double MaterialParams::*m) {
      t[k] = [m](RunConfig& c, const json& v, const std::string& key) { c.params.*m = as_number(v, key); };
    };
    auto integer = [&t](const std::string& k, int RunConfig::*m) {
      t[k] = [m](RunConfig& c, const json& v, const std::string& key) { c.*m = int(as_integer(v, key)); };
    };
    auto str = [&t](const std::string& k, std::string RunConfig::*m) {
      t[k] = [m](RunConfig& c, const json& v, const std::string& key) {
        if (!v.is_string()) throw ConfigError(key_error(key, "expected a string, got " + v.dump()));
        c.*m = v.get<std::string>();
      };
    };
    auto flag = [&t](const std::string& k, bool RunConfig::*m) {
      t[k] = [m](RunConfig& c, const json& v, const std::string& key) {
        if (!v.is_boolean()) throw ConfigError(key_error(key, "expected true or false, got " + v.dump()));
        c.*m = v.get<bool>();
      };
    };
    auto list = [&t](const std::string& k, std::vector<double> RunConfig::*m) {
      t[k] = [m](RunConfig& c, const json& v, const std::string& key) {
        if (!v.is_array()) throw ConfigError(key_error(key, "expected an array of numbers, got " + v.dump()));
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], key + "[" + std::to_string(i) + "]"));
        c.*m = out;
      };
    };
    par("a", &MaterialParams::a);
    par("b", &MaterialParams::b);
    par("c", &MaterialParams::c);
    par("L1", &MaterialParams::L1);
    par("L2", &MaterialParams::L2);
    par("L3", &MaterialParams::L3);
    par("Gamma", &MaterialParams::Gamma);
    par("xi", &MaterialParams::xi);
    par("eta", &MaterialParams::eta);
    par("epsilon", &MaterialParams::epsilon);
    integer("dim", &RunConfig::dim);
    integer("nx", &RunConfig::nx);
    integer("ny", &RunConfig::ny);
    integer("nz", &RunConfig::nz);
    num("lx", &RunConfig::lx);
    num("ly", &RunConfig::ly);
    num("lz", &RunConfig::lz);
    str("scheme", &RunConfig::scheme);
    str("mode", &RunConfig::mode);
    num("dt", &RunConfig::dt);
    num("sigma_split", &RunConfig::sigma_split);
    num("lambda_bulk", &RunConfig::lambda_bulk);
    num("cfl_safety", &RunConfig::cfl_safety);
    flag("dealias", &RunConfig::dealias);
    num("drift_tol", &RunConfig::drift_tol);
    str("initial", &RunConfig::initial);
    num("amp", &RunConfig::amp);
    num("v_amp", &RunConfig::v_amp);
    num("T", &RunConfig::T);
    integer("samples", &RunConfig::samples);
    list("sample_times", &RunConfig::sample_times);
    integer("log_every", &RunConfig::log_every);
    list("epsilons", &RunConfig::epsilons);
    num("dt_factor", &RunConfig::dt_factor);
    num("el_dt", &RunConfig::el_dt);
    num("study_sigma_split", &RunConfig::study_sigma_split);
    num("slope_min", &RunConfig::slope_min);
    str("out", &RunConfig::out);
    flag("bitrepro", &RunConfig::bitrepro);
    integer("draws", &RunConfig::draws);
    t["seed"] = [](RunConfig& c, const json& v, const std::string& key) {
      if (!v.is_number_unsigned()) throw ConfigError(key_error(key, "expected a non-negative integer, got " + v.dump()));
      c.seed = v.get<std::uint64_t>();
    };
    return t;
  }();
  return table;
}

json to_json(const RunConfig& c) {
  const MaterialParams& p = c.params;
  return json{{"a", p.a},
              {"b", p.b},
              {"c", p.c},
              {"L1", p.L1},
              {"L2", p.L2},
              {"L3", p.L3},
              {"Gamma", p.Gamma},
              {"xi", p.xi},
              {"eta", p.eta},
              {"epsilon", p.epsilon},
              {"dim", c.dim},
              {"nx", c.nx},
              {"ny", c.ny},
              {"nz", c.nz},
              {"lx", c.lx},
              {"ly", c.ly},
              {"lz", c.lz},
              {"scheme", c.scheme},
              {"mode", c.mode},
              {"dt", c.dt},
              {"sigma_split", c.sigma_split},
              {"lambda_bulk", c.lambda_bulk},
              {"cfl_safety", c.cfl_safety},
              {"dealias", c.dealias},
              {"drift_tol", c.drift_tol},
              {"initial", c.initial},
              {"amp", c.amp},
              {"v_amp", c.v_amp},
              {"T", c.T},
              {"samples", c.samples},
              {"sample_times", c.sample_times},
              {"log_every", c.log_every},
              {"epsilons", c.epsilons},
              {"dt_factor", c.dt_factor},
              {"el_dt", c.el_dt},
              {"study_sigma_split", c.study_sigma_split},
              {"slope_min", c.slope_min},
              {"out", c.out},
              {"bitrepro", c.bitrepro},
              {"seed", c.seed},
              {"draws", c.draws}};
}

void apply_document(RunConfig& c, const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(key_error(key, "unknown key"));
    it->second(c, value, key);
  }
}

RunConfig load_config(const std::string& path) {
  RunConfig c;
  if (path.empty()) return c;
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: '" + path + "' is not valid JSON (" + e.what() + ")");
  }
  apply_document(c, doc);
  return c;
}

Grid make_grid(const RunConfig& c) {
  try {
    if (c.dim == 2) return Grid::make2d(c.nx, c.ny, c.lx, c.ly);
    if (c.dim == 3) return Grid::make3d(c.nx, c.ny, c.nz, c.lx, c.ly, c.lz);
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("config keys nx/ny/nz/lx/ly/lz: ") + e.what());
  }
  throw ConfigError(key_error("dim", "must be 2 or 3"));
}

Scheme resolve_scheme(const RunConfig& c) {
  try {
    return scheme_from_string(c.scheme);
  } catch (const InvalidInput& e) {
    throw ConfigError(key_error("scheme", e.what()));
  }
}

bool full_mode(const RunConfig& c) {
  if (c.mode == "full") return true;
  if (c.mode == "gradient_flow") return false;
  throw ConfigError(key_error("mode", "expected 'full' or 'gradient_flow', got '" + c.mode + "'"));
}

void check_positive(double x, const std::string& key) {
  if (!(x > 0.0)) throw ConfigError(key_error(key, "must be positive"));
}

std::vector<double> resolve_sample_times(const RunConfig& c) {
  std::vector<double> t = c.sample_times;
  if (t.empty()) {
    if (c.samples < 1) throw ConfigError(key_error("samples", "must be at least 1"));
    for (int k = 0; k <= c.samples; ++k) t.push_back(c.T * k / c.samples);
  }
  for (double x : t)
    if (x < 0.0 || x > c.T * (1.0 + 1e-12)) throw ConfigError(key_error("sample_times", "entries must lie in [0, T]"));
  std::sort(t.begin(), t.end());
  return t;
}

// Stream-function vortex sin(kx x) sin(ky y) scaled so that the x component peaks at amp.
VectorField taylor_green(const Grid& g, double amp) {
  const double kx = 2.0 * std::numbers::pi / g.len[0], ky = 2.0 * std::numbers::pi / g.len[1];
  VectorField v(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 x = g.position(i);
    v[i] = Vec3{{amp * std::sin(kx * x[0]) * std::cos(ky * x[1]), -amp * kx / ky * std::cos(kx * x[0]) * std::sin(ky * x[1]), 0.0}};
  }
  return v;
}

// Low-mode solenoidal field from a random stream function.
VectorField random_flow(const Grid& g, Rng& rng, double amp) {
  VectorField v(g);
  const double kx = 2.0 * std::numbers::pi / g.len[0], ky = 2.0 * std::numbers::pi / g.len[1];
  for (int mx = -2; mx <= 2; ++mx)
    for (int my = 0; my <= 2; ++my) {
      if (my == 0 && mx <= 0) continue;
      const double a = uniform(rng, -amp, amp), b = uniform(rng, -amp, amp);
      const double qx = mx * kx, qy = my * ky, q = std::hypot(qx, qy);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec3 x = g.position(i);
        const double ph = qx * x[0] + qy * x[1];
        const double d = (-a * std::sin(ph) + b * std::cos(ph)) / q;
        v[i][0] += d * qy;
        v[i][1] -= d * qx;
      }
    }
  return v;
}

struct Initial {
  DirectorField n;
  VectorField v;
  QField Q;
};

Initial initial_state(const RunConfig& c, const Grid& g, double s) {
  Rng rng(c.seed);
  Initial init{DirectorField(g), VectorField(g), QField(g)};
  if (c.initial == "equilibrium") {
    init.n = DirectorField(g, Vec3{{1.0, 0.0, 0.0}});
  } else if (c.initial == "standard") {
    init.n = standard_director(g, c.amp);
    if (c.v_amp != 0.0) init.v = taylor_green(g, c.v_amp);
  } else if (c.initial == "taylor_green") {
    init.n = DirectorField(g, Vec3{{0.0, 0.0, 1.0}});
    init.v = taylor_green(g, c.v_amp != 0.0 ? c.v_amp : 1.0);
  } else if (c.initial == "random") {
    DirectorField n(g);
    std::vector<std::array<double, 5>> modes;
    for (int k = 0; k < 6; ++k)
      modes.push_back({double(int(uniform(rng, -2.0, 3.0))), double(int(uniform(rng, 0.0, 3.0))), uniform(rng, 0, 6.3),
                       uniform(rng, -c.amp, c.amp), uniform(rng, -c.amp, c.amp)});
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Vec3 x = g.position(i);
      double th = 0.7, ph = 0.3;
      for (const auto& m : modes) {
        const double arg = 2.0 * std::numbers::pi * (m[0] * x[0] / g.len[0] + m[1] * x[1] / g.len[1]) + m[2];
        th += m[3] * std::sin(arg);
        ph += m[4] * std::cos(arg);
      }
      n[i] = Vec3{{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}};
    }
    init.n = n;
    if (c.v_amp != 0.0) init.v = random_flow(g, rng, c.v_amp);
  } else if (c.initial == "disordered") {
    init.n = DirectorField(g, Vec3{{1.0, 0.0, 0.0}});
    for (std::size_t i = 0; i < g.size(); ++i) init.Q[i] = c.amp * random_qtensor(rng);
    if (c.v_amp != 0.0) init.v = random_flow(g, rng, c.v_amp);
    return init;
  } else {
    throw ConfigError(key_error("initial", "expected equilibrium, standard, taylor_green, random or disordered, got '" +
                                               c.initial + "'"));
  }
  init.Q = q0_of_director(init.n, s);
  return init;
}

class Csv {
 public:
  Csv(const fs::path& path, bool bitrepro) : bitrepro_(bitrepro), f_(std::fopen(path.string().c_str(), "w")) {
    if (!f_) throw InvalidInput("cannot open '" + path.string() + "' for writing");
  }
  ~Csv() {
    if (f_) std::fclose(f_);
  }
  Csv(const Csv&) = delete;
  Csv& operator=(const Csv&) = delete;

  void comment(const std::string& s) { std::fprintf(f_, "# %s\n", s.c_str()); }
  void header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) std::fprintf(f_, "%s%s", i ? "," : "", cols[i].c_str());
    std::fprintf(f_, "\n");
  }
  Csv& num(double x) {
    sep();
    std::fprintf(f_, bitrepro_ ? "%.17g" : "%.10g", x);
    return *this;
  }
  Csv& integer(long long x) {
    sep();
    std::fprintf(f_, "%lld", x);
    return *this;
  }
  Csv& text(const std::string& s) {
    sep();
    std::fprintf(f_, "%s", s.c_str());
    return *this;
  }
  void end() {
    std::fprintf(f_, "\n");
    first_ = true;
  }

 private:
  void sep() {
    if (!first_) std::fputc(',', f_);
    first_ = false;
  }
  bool bitrepro_;
  std::FILE* f_;
  bool first_ = true;
};

void write_preamble(Csv& csv, const std::string& command, const RunConfig& c) {
  csv.comment("nematic-cli " + command);
  csv.comment("config: " + to_json(c).dump());
  csv.comment("seed: " + std::to_string(c.seed) + " (mt19937_64)");
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string snapshot_name(const std::string& prefix, std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%04zu.nsnap", prefix.c_str(), k);
  return buf;
}

std::size_t steps_for(double t, double dt) { return std::size_t(std::llround(t / dt)); }

void prepare_out(const RunConfig& c) {
  std::error_code ec;
  fs::create_directories(fs::path(c.out) / "snapshots", ec);
  if (ec) throw InvalidInput("cannot create output directory '" + c.out + "': " + ec.message());
}

// ---------------------------------------------------------------------------

int cmd_check_coeffs(const RunConfig& c, bool as_json) {
  const DerivedCoefficients d = derive_coefficients(c.params);
  const auto ids = identity_checks(c.params, d);
  const DissipationReport dis = check_dissipation(d);
  const ParodiReport par = parodi_report(d);
  bool ok = true;
  for (const auto& id : ids) ok = ok && id.pass;

  const std::vector<std::pair<std::string, double>> fields{
      {"s", d.s},           {"k1", d.k1},         {"k2", d.k2},         {"k3", d.k3},         {"k4", d.k4},
      {"alpha1", d.alpha1}, {"alpha2", d.alpha2}, {"alpha3", d.alpha3}, {"alpha4", d.alpha4}, {"alpha5", d.alpha5},
      {"alpha6", d.alpha6}, {"gamma1", d.gamma1}, {"gamma2", d.gamma2}, {"beta1", d.beta1},   {"beta2", d.beta2},
      {"beta3", d.beta3},   {"L0", d.L0},         {"c0", d.c0}};

  if (as_json) {
    json out;
    out["config"] = to_json(c);
    for (const auto& [k, v] : fields) out["coefficients"][k] = v;
    for (const auto& id : ids) out["identities"].push_back({{"name", id.name}, {"lhs", id.lhs}, {"rhs", id.rhs}, {"pass", id.pass}});
    out["dissipation"] = {{"beta2", dis.beta2},
                          {"two_beta2_plus_beta3", dis.two_beta2_plus_beta3},
                          {"combo", dis.combo},
                          {"beta2_positive", dis.beta2_positive},
                          {"two_beta2_plus_beta3_positive", dis.two_beta2_plus_beta3_positive},
                          {"combo_positive", dis.combo_positive}};
    out["parodi"] = {{"a2_plus_a3", par.a2_plus_a3},         {"a6_minus_a5", par.a6_minus_a5},
                     {"a3_minus_a2", par.a3_minus_a2},       {"gamma1", par.gamma1},
                     {"gamma2", par.gamma2},                 {"printed_parodi", par.printed_parodi},
                     {"printed_gamma1", par.printed_gamma1}, {"printed_gamma2", par.printed_gamma2},
                     {"flipped_parodi", par.flipped_parodi}, {"flipped_gamma1", par.flipped_gamma1},
                     {"flipped_gamma2", par.flipped_gamma2}};
    out["all_identities_pass"] = ok;
    std::cout << out.dump(2) << "\n";
    return ok ? 0 : kExitCheckFailed;
  }

  char buf[256];
  std::cout << "derived coefficients\n";
  for (const auto& [k, v] : fields) {
    std::snprintf(buf, sizeof buf, "  %-8s %24.17g\n", k.c_str(), v == 0.0 ? 0.0 : v);
    std::cout << buf;
  }
  std::cout << "identities\n";
  for (const auto& id : ids) {
    std::snprintf(buf, sizeof buf, "  (lhs %.17g, rhs %.17g)", id.lhs, id.rhs);
    std::cout << "  " << id.name << ": " << (id.pass ? "PASS" : "FAIL") << buf << "\n";
  }
  std::cout << "dissipation\n";
  auto line = [&](const char* name, double v, bool pass) {
    std::snprintf(buf, sizeof buf, "  %-26s %24.17g  %s\n", name, v, pass ? "PASS" : "FAIL");
    std::cout << buf;
  };
  line("beta2 > 0", dis.beta2, dis.beta2_positive);
  line("2beta2+beta3 > 0", dis.two_beta2_plus_beta3, dis.two_beta2_plus_beta3_positive);
  line("3/2beta2+beta3+beta1 > 0", dis.combo, dis.combo_positive);
  std::cout << "Parodi-type relations\n";
  auto rel = [&](const char* name, bool v) { std::cout << "  " << name << ": " << (v ? "holds" : "does not hold") << "\n"; };
  rel("alpha2+alpha3 = alpha6-alpha5", par.printed_parodi);
  rel("gamma1 = alpha3-alpha2", par.printed_gamma1);
  rel("gamma2 = alpha6-alpha5", par.printed_gamma2);
  rel("alpha2+alpha3 = alpha5-alpha6", par.flipped_parodi);
  rel("gamma1 = alpha2-alpha3", par.flipped_gamma1);
  rel("gamma2 = alpha5-alpha6", par.flipped_gamma2);
  std::cout << (ok ? "all identities hold\n" : "identity check FAILED\n");
  return ok ? 0 : kExitCheckFailed;
}

int cmd_run_be(RunConfig c, bool as_json) {
  if (c.mode.empty()) c.mode = "full";
  c.params.validate();
  const Grid g = make_grid(c);
  const bool full = full_mode(c);
  check_positive(c.dt, "dt");
  check_positive(c.T, "T");
  if (c.log_every < 1) throw ConfigError(key_error("log_every", "must be at least 1"));
  const std::vector<double> samples = resolve_sample_times(c);

  BEStepConfig cfg;
  cfg.dt = c.dt;
  cfg.sigma_split = c.sigma_split;
  cfg.lambda_bulk = c.lambda_bulk;
  cfg.scheme = resolve_scheme(c);
  cfg.gradient_flow_only = !full;
  cfg.cfl_safety = c.cfl_safety;
  cfg.dealias = c.dealias;

  const double s = critical_s(c.params.a, c.params.b, c.params.c).first;
  Initial init = initial_state(c, g, s);
  BEState st{0.0, full ? init.v : VectorField(g), ScalarField(g), init.Q};
  check_be_cfl(st, cfg, c.params);

  prepare_out(c);
  const json resolved = to_json(c);
  Stopwatch clock;
  BESolver solver(g, c.params, cfg);
  Csv csv(fs::path(c.out) / "be_energy.csv", c.bitrepro);
  write_preamble(csv, "run-be", c);
  csv.header({"step", "t", "kinetic", "bulk", "elastic", "total", "div_v_norm", "dt"});
  json rows = json::array();
  auto log_row = [&](std::size_t step) {
    const BEEnergy e = be_energy(st, c.params, solver.ops());
    const double div = divergence_norm(st.v, solver.ops());
    csv.integer(static_cast<long long>(step)).num(st.t).num(e.kinetic).num(e.bulk).num(e.elastic).num(e.total);
    csv.num(div).num(cfg.dt).end();
    if (as_json)
      rows.push_back({{"step", step}, {"t", st.t}, {"kinetic", e.kinetic}, {"bulk", e.bulk}, {"elastic", e.elastic},
                      {"total", e.total}, {"div_v_norm", div}});
  };
  std::size_t next_sample = 0;
  auto maybe_snapshot = [&](std::size_t step) {
    while (next_sample < samples.size() && steps_for(samples[next_sample], cfg.dt) == step) {
      Snapshot snap{g, st.t, resolved, {}};
      snap.add("Q", st.Q);
      snap.add("v", st.v);
      snap.add("p", st.p);
      write_snapshot((fs::path(c.out) / "snapshots" / snapshot_name("be", next_sample)).string(), snap);
      ++next_sample;
    }
  };

  const std::size_t nsteps = steps_for(c.T, cfg.dt);
  log_row(0);
  maybe_snapshot(0);
  int code = 0;
  try {
    for (std::size_t k = 1; k <= nsteps; ++k) {
      solver.step(st);
      if (k % std::size_t(c.log_every) == 0 || k == nsteps) log_row(k);
      maybe_snapshot(k);
    }
  } catch (const SolverAbort& e) {
    csv.comment(std::string("aborted: ") + e.what());
    std::cerr << "error: " << e.what() << "\n";
    code = kExitAbort;
  }
  if (!c.bitrepro) csv.comment("wall_time_s: " + std::to_string(clock.seconds()));
  if (as_json) std::cout << json{{"config", resolved}, {"rows", rows}, {"exit", code}}.dump(2) << "\n";
  else std::cout << "run-be: " << solver.steps_taken() << " steps, output in " << c.out << "\n";
  return code;
}

int cmd_run_el(RunConfig c, bool as_json) {
  if (c.mode.empty()) c.mode = "full";
  c.params.validate();
  const Grid g = make_grid(c);
  const bool full = full_mode(c);
  check_positive(c.dt, "dt");
  check_positive(c.T, "T");
  if (c.log_every < 1) throw ConfigError(key_error("log_every", "must be at least 1"));
  const std::vector<double> samples = resolve_sample_times(c);
  const DerivedCoefficients d = derive_coefficients(c.params);

  ELStepConfig cfg;
  cfg.dt = c.dt;
  cfg.scheme = resolve_scheme(c);
  cfg.gradient_flow_only = !full;
  cfg.cfl_safety = c.cfl_safety;
  cfg.drift_tol = c.drift_tol;
  cfg.dealias = c.dealias;

  Initial init = initial_state(c, g, d.s);
  if (c.initial == "disordered") throw ConfigError(key_error("initial", "'disordered' has no director field"));
  ELState st{0.0, full ? init.v : VectorField(g), ScalarField(g), init.n};

  prepare_out(c);
  const json resolved = to_json(c);
  Stopwatch clock;
  ELSolver solver(g, d, cfg);
  Csv csv(fs::path(c.out) / "el_energy.csv", c.bitrepro);
  write_preamble(csv, "run-el", c);
  csv.comment("lhs = -(E(t+) - E(t-))/(2 dt_log), rhs = dissipation integral at t, mismatch = |lhs-rhs|/|rhs|");
  csv.header({"step", "t", "kinetic", "frank", "lhs", "rhs", "mismatch"});
  json rows = json::array();

  struct Logged {
    std::size_t step;
    ELState state;
  };
  std::vector<Logged> window;
  auto emit = [&](const Logged& mid, const EnergyLawRow* law) {
    const ELEnergy e = el_energy(mid.state, d, solver.ops());
    csv.integer(static_cast<long long>(mid.step)).num(mid.state.t).num(e.kinetic).num(e.frank);
    if (law) csv.num(law->lhs).num(law->rhs).num(law->mismatch);
    else csv.text("NA").num(el_dissipation(mid.state, d, solver.ops())).text("NA");
    csv.end();
    json r{{"step", mid.step}, {"t", mid.state.t}, {"kinetic", e.kinetic}, {"frank", e.frank}};
    if (law) {
      r["lhs"] = law->lhs;
      r["rhs"] = law->rhs;
      r["mismatch"] = law->mismatch;
    }
    if (as_json) rows.push_back(r);
  };
  auto push_log = [&](std::size_t step) {
    window.push_back({step, st});
    if (window.size() == 1) {
      emit(window[0], nullptr);
    } else if (window.size() == 3) {
      const EnergyLawReport rep = el_energy_law({window[0].state, window[1].state, window[2].state}, d, solver.ops(),
                                                std::size_t(c.log_every));
      EnergyLawRow row = rep.rows.front();
      emit(window[1], &row);
      window.erase(window.begin());
    }
  };

  std::size_t next_sample = 0;
  auto maybe_snapshot = [&](std::size_t step) {
    while (next_sample < samples.size() && steps_for(samples[next_sample], cfg.dt) == step) {
      Snapshot snap{g, st.t, resolved, {}};
      snap.add("n", st.n);
      snap.add("v", st.v);
      snap.add("p", st.p);
      write_snapshot((fs::path(c.out) / "snapshots" / snapshot_name("el", next_sample)).string(), snap);
      ++next_sample;
    }
  };

  const std::size_t nsteps = steps_for(c.T, cfg.dt);
  push_log(0);
  maybe_snapshot(0);
  int code = 0;
  try {
    for (std::size_t k = 1; k <= nsteps; ++k) {
      solver.step(st);
      if (k % std::size_t(c.log_every) == 0) push_log(k);
      maybe_snapshot(k);
    }
  } catch (const SolverAbort& e) {
    csv.comment(std::string("aborted: ") + e.what());
    std::cerr << "error: " << e.what() << "\n";
    code = kExitAbort;
  }
  if (window.size() == 2) emit(window[1], nullptr);
  csv.comment("max director drift in last step: " + std::to_string(solver.last_drift()));
  if (!c.bitrepro) csv.comment("wall_time_s: " + std::to_string(clock.seconds()));
  if (as_json) std::cout << json{{"config", resolved}, {"rows", rows}, {"exit", code}}.dump(2) << "\n";
  else std::cout << "run-el: " << solver.steps_taken() << " steps, output in " << c.out << "\n";
  return code;
}

int cmd_converge(RunConfig c, bool as_json) {
  if (c.mode.empty()) c.mode = "gradient_flow";
  c.params.validate();
  const Grid g = make_grid(c);
  const bool full = full_mode(c);
  check_positive(c.T, "T");
  check_positive(c.dt_factor, "dt_factor");
  check_positive(c.el_dt, "el_dt");
  if (c.epsilons.empty()) throw ConfigError(key_error("epsilons", "must not be empty"));
  for (std::size_t i = 0; i < c.epsilons.size(); ++i)
    check_positive(c.epsilons[i], "epsilons[" + std::to_string(i) + "]");
  if (c.samples < 1) throw ConfigError(key_error("samples", "must be at least 1"));

  StudyConfig sc;
  sc.epsilons = c.epsilons;
  sc.T = c.T;
  sc.mode = full ? StudyMode::Full : StudyMode::GradientFlow;
  sc.samples = c.samples;
  sc.dt_factor = c.dt_factor;
  sc.sigma_split = c.study_sigma_split;
  sc.el_dt = c.el_dt;
  sc.scheme = resolve_scheme(c);
  sc.cfl_safety = c.cfl_safety;

  const double s = critical_s(c.params.a, c.params.b, c.params.c).first;
  const Initial init = initial_state(c, g, s);
  if (c.initial == "disordered") throw ConfigError(key_error("initial", "'disordered' has no director field"));

  prepare_out(c);
  Stopwatch clock;
  const StudyResult res = convergence_study(init.n, full ? init.v : VectorField(g), c.params, sc);

  Csv csv(fs::path(c.out) / "convergence.csv", c.bitrepro);
  write_preamble(csv, "converge", c);
  csv.comment("only the first corrector Q1_perp is built; the expected rate of max_err_L2 is O(epsilon)");
  csv.comment("E_frak_* are diagnostics of (Q - Q0 - eps Q1_perp)/eps^3 at T and are not expected to stay bounded");
  csv.header({"epsilon", "max_err_L2", "err_at_T", "err_at_0", "E_frak_group0", "E_frak_group1", "E_frak_group2",
              "E_frak_total", "E_frak_warning", "be_steps", "be_dt", "fitted_slope"});
  json rows = json::array();
  for (const auto& r : res.rows) {
    csv.num(r.epsilon).num(r.max_err).num(r.err_at_T).num(r.err_at_0);
    csv.num(r.frak.group0).num(r.frak.group1).num(r.frak.group2).num(r.frak.total);
    csv.integer(r.frak.warning ? 1 : 0).integer(static_cast<long long>(r.be_steps)).num(r.be_dt);
    if (res.slope_available) csv.num(res.slope);
    else csv.text("N/A");
    csv.end();
    rows.push_back({{"epsilon", r.epsilon},
                    {"max_err_L2", r.max_err},
                    {"err_at_T", r.err_at_T},
                    {"err_at_0", r.err_at_0},
                    {"E_frak", {{"group0", r.frak.group0}, {"group1", r.frak.group1}, {"group2", r.frak.group2},
                                {"total", r.frak.total}, {"warning", r.frak.warning}}},
                    {"be_steps", r.be_steps},
                    {"be_dt", r.be_dt}});
  }
  if (!c.bitrepro) csv.comment("wall_time_s: " + std::to_string(clock.seconds()));

  int code = 0;
  if (!res.slope_available) {
    std::cerr << "warning: a single epsilon gives no slope; fitted_slope is N/A\n";
  } else if (res.slope < c.slope_min) {
    code = kExitCheckFailed;
  }

  if (as_json) {
    json out{{"config", to_json(c)}, {"rows", rows}, {"slope_min", c.slope_min}, {"exit", code}};
    out["fitted_slope"] = res.slope_available ? json(res.slope) : json("N/A");
    std::cout << out.dump(2) << "\n";
  } else {
    char buf[256];
    std::cout << "epsilon        max_err_L2     err_at_T       E_frak_total\n";
    for (const auto& r : res.rows) {
      std::snprintf(buf, sizeof buf, "%-14.6g %-14.6e %-14.6e %-14.6e%s\n", r.epsilon, r.max_err, r.err_at_T,
                    r.frak.total, r.frak.warning ? "  (negative singular part)" : "");
      std::cout << buf;
    }
    if (res.slope_available) {
      std::snprintf(buf, sizeof buf, "fitted slope %.6f (minimum %.3g): %s\n", res.slope, c.slope_min,
                    code == 0 ? "PASS" : "FAIL");
      std::cout << buf;
    } else {
      std::cout << "fitted slope N/A\n";
    }
  }
  return code;
}

int cmd_selftest(const RunConfig& c, bool as_json) {
  if (c.draws < 1) throw ConfigError(key_error("draws", "must be at least 1"));
  const auto results = run_selftest(c.seed, c.draws);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.pass;
  if (as_json) {
    json out{{"seed", c.seed}, {"draws", c.draws}, {"pass", ok}};
    for (const auto& r : results)
      out["checks"].push_back({{"name", r.name}, {"pass", r.pass}, {"worst", r.worst}, {"tol", r.tol}});
    std::cout << out.dump(2) << "\n";
  } else {
    char buf[256];
    for (const auto& r : results) {
      std::snprintf(buf, sizeof buf, "%-4s %-60s worst %.3e tol %.1e\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.worst, r.tol);
      std::cout << buf;
    }
    std::cout << (ok ? "selftest passed\n" : "selftest FAILED\n");
  }
  return ok ? 0 : kExitCheckFailed;
}

struct Flags {
  std::string config;
  bool json = false;
  bool bitrepro = false;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "flat JSON configuration file");
  sub->add_flag("--json", f.json, "machine-readable output on stdout");
  sub->add_flag("--bitrepro", f.bitrepro, "full-precision CSV values and no wall-clock fields");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option_function<std::uint64_t>(
      "--seed", [&f](const std::uint64_t& s) {
        f.seed = s;
        f.seed_set = true;
      },
      "seed for generated fields");
}

}  // namespace

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Q-tensor and director-field nematic solvers"};
  app.require_subcommand(1);
  Flags flags;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] :
       std::vector<std::pair<std::string, std::string>>{{"check-coeffs", "derived coefficients and identity checks"},
                                                        {"run-be", "run the Q-tensor flow"},
                                                        {"run-el", "run the director-field flow"},
                                                        {"converge", "epsilon convergence study"},
                                                        {"selftest", "randomized algebra and coefficient checks"}}) {
    subs[name] = app.add_subcommand(name, help);
    add_flags(subs[name], flags);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    RunConfig c = load_config(flags.config);
    if (!flags.out.empty()) c.out = flags.out;
    if (flags.seed_set) c.seed = flags.seed;
    if (flags.bitrepro) c.bitrepro = true;

    if (subs["check-coeffs"]->parsed()) {
      c.params.validate();
      return cmd_check_coeffs(c, flags.json);
    }
    if (subs["run-be"]->parsed()) return cmd_run_be(c, flags.json);
    if (subs["run-el"]->parsed()) return cmd_run_el(c, flags.json);
    if (subs["converge"]->parsed()) return cmd_converge(c, flags.json);
    if (subs["selftest"]->parsed()) return cmd_selftest(c, flags.json);
  } catch (const SolverAbort& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAbort;
  } catch (const ConsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAbort;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitInput;
}
