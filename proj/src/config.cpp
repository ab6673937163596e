#include "dfnls/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace dfnls::harness {

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::simulate: return "simulate";
    case Experiment::limit_study: return "limit-study";
    case Experiment::dispersion_scan: return "dispersion-scan";
    case Experiment::manifold_scan: return "manifold-scan";
    case Experiment::asymptotics: return "asymptotics";
  }
  return "?";
}

Experiment experiment_from(const std::string& name) {
  for (Experiment e : {Experiment::simulate, Experiment::limit_study, Experiment::dispersion_scan,
                       Experiment::manifold_scan, Experiment::asymptotics})
    if (to_string(e) == name) return e;
  throw ConfigError("run.experiment: unknown experiment '" + name + "'");
}

oscillatory::Band band_from(const std::string& s) {
  if (s == "S1") return oscillatory::Band::S1;
  if (s == "S2") return oscillatory::Band::S2;
  if (s == "S3") return oscillatory::Band::S3;
  throw ConfigError("dispersion.band: expected S1, S2 or S3, got '" + s + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end || !std::isfinite(out))
    throw ConfigError(key + ": expected a real number, got '" + v + "'");
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

std::vector<std::string> split(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

template <class T, class F>
std::vector<T> to_list(const std::string& key, const std::string& v, F conv) {
  std::vector<T> out;
  for (const auto& item : split(v)) out.push_back(static_cast<T>(conv(key, item)));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_integral_v<T>)
      out += std::to_string(xs[i]);
    else
      out += num(xs[i]);
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& registry() {
  static const std::map<std::string, Setter> r = [] {
    std::map<std::string, Setter> m;
    // [run]
    m["run.experiment"] = [](auto& c, auto&, auto& v) { c.experiment = experiment_from(v); };
    m["run.out"] = [](auto& c, auto&, auto& v) { c.out_dir = v; };
    m["run.seed"] = [](auto& c, auto& k, auto& v) {
      const long long s = to_int(k, v);
      if (s < 0) throw ConfigError(k + ": seed must be nonnegative");
      c.seed = static_cast<std::uint64_t>(s);
    };
    m["run.threads"] = [](auto& c, auto& k, auto& v) { c.threads = static_cast<int>(to_int(k, v)); };
    m["run.plot"] = [](auto& c, auto& k, auto& v) { c.plot = to_bool(k, v); };
    // [simulate]
    m["simulate.alpha"] = [](auto& c, auto& k, auto& v) { c.sim.alpha = to_double(k, v); };
    m["simulate.p"] = [](auto& c, auto& k, auto& v) { c.sim.p = static_cast<int>(to_int(k, v)); };
    m["simulate.mu"] = [](auto& c, auto& k, auto& v) { c.sim.mu = static_cast<int>(to_int(k, v)); };
    m["simulate.h"] = [](auto& c, auto& k, auto& v) { c.sim.h = to_double(k, v); };
    m["simulate.n"] = [](auto& c, auto& k, auto& v) { c.sim.n = static_cast<int>(to_int(k, v)); };
    m["simulate.box"] = [](auto& c, auto& k, auto& v) { c.sim.box = to_double(k, v); };
    m["simulate.dt"] = [](auto& c, auto& k, auto& v) { c.sim.dt = to_double(k, v); };
    m["simulate.T"] = [](auto& c, auto& k, auto& v) { c.sim.T = to_double(k, v); };
    m["simulate.stride"] = [](auto& c, auto& k, auto& v) { c.sim.stride = static_cast<int>(to_int(k, v)); };
    m["simulate.symbol"] = [](auto& c, auto&, auto& v) { c.sim.symbol = v; };
    m["simulate.q"] = [](auto& c, auto& k, auto& v) {
      c.sim.q = (v == "inf") ? lattice_core::q_infinity : to_double(k, v);
    };
    m["simulate.radius"] = [](auto& c, auto& k, auto& v) { c.sim.radius = to_double(k, v); };
    m["simulate.nonlinear"] = [](auto& c, auto& k, auto& v) { c.sim.nonlinear = to_bool(k, v); };
    m["simulate.amplitude"] = [](auto& c, auto& k, auto& v) { c.sim.amplitude = to_double(k, v); };
    m["simulate.width"] = [](auto& c, auto& k, auto& v) { c.sim.width = to_double(k, v); };
    m["simulate.k1"] = [](auto& c, auto& k, auto& v) { c.sim.k1 = to_double(k, v); };
    m["simulate.k2"] = [](auto& c, auto& k, auto& v) { c.sim.k2 = to_double(k, v); };
    m["simulate.quad_order"] = [](auto& c, auto& k, auto& v) {
      c.sim.quad_order = static_cast<int>(to_int(k, v));
    };
    // [limit]
    m["limit.h_exponents"] = [](auto& c, auto& k, auto& v) {
      c.limit.h_exponents = to_list<int>(k, v, to_int);
    };
    m["limit.refinement"] = [](auto& c, auto& k, auto& v) {
      c.limit.refinement = static_cast<int>(to_int(k, v));
    };
    m["limit.check_reference"] = [](auto& c, auto& k, auto& v) {
      c.limit.check_reference = to_bool(k, v);
    };
    // [dispersion]
    m["dispersion.alphas"] = [](auto& c, auto& k, auto& v) {
      c.dispersion.alphas = to_list<double>(k, v, to_double);
    };
    m["dispersion.band"] = [](auto& c, auto&, auto& v) { c.dispersion.band = v; };
    m["dispersion.tau_lo"] = [](auto& c, auto& k, auto& v) { c.dispersion.tau_lo = to_double(k, v); };
    m["dispersion.tau_hi"] = [](auto& c, auto& k, auto& v) { c.dispersion.tau_hi = to_double(k, v); };
    m["dispersion.samples"] = [](auto& c, auto& k, auto& v) {
      c.dispersion.samples = static_cast<int>(to_int(k, v));
    };
    m["dispersion.tol"] = [](auto& c, auto& k, auto& v) { c.dispersion.tol = to_double(k, v); };
    m["dispersion.scale_window"] = [](auto& c, auto& k, auto& v) {
      c.dispersion.scale_window = to_bool(k, v);
    };
    m["dispersion.sweep"] = [](auto& c, auto& k, auto& v) { c.dispersion.sweep = to_bool(k, v); };
    // [manifold]
    m["manifold.alphas"] = [](auto& c, auto& k, auto& v) {
      c.manifold.alphas = to_list<double>(k, v, to_double);
    };
    m["manifold.count"] = [](auto& c, auto& k, auto& v) {
      c.manifold.count = static_cast<int>(to_int(k, v));
    };
    // [asymptotics]
    m["asymptotics.alpha"] = [](auto& c, auto& k, auto& v) { c.asymptotics.alpha = to_double(k, v); };
    m["asymptotics.point"] = [](auto& c, auto&, auto& v) { c.asymptotics.point = v; };
    m["asymptotics.tau_lo"] = [](auto& c, auto& k, auto& v) { c.asymptotics.tau_lo = to_double(k, v); };
    m["asymptotics.tau_hi"] = [](auto& c, auto& k, auto& v) { c.asymptotics.tau_hi = to_double(k, v); };
    m["asymptotics.samples"] = [](auto& c, auto& k, auto& v) {
      c.asymptotics.samples = static_cast<int>(to_int(k, v));
    };
    m["asymptotics.tol"] = [](auto& c, auto& k, auto& v) { c.asymptotics.tol = to_double(k, v); };
    return m;
  }();
  return r;
}

void fail(const std::string& key, const std::string& what) { throw ConfigError(key + ": " + what); }

void check_alpha_list(const std::string& key, const std::vector<double>& alphas) {
  for (double a : alphas)
    if (!(a > 1.0 && a < 2.0)) fail(key, "every alpha must lie in (1,2), got " + num(a));
}

void check_window(const std::string& sec, double lo, double hi, int samples, double tol) {
  if (!(lo > 0.0)) fail(sec + ".tau_lo", "must be positive");
  if (!(hi >= 10.0 * lo)) fail(sec + ".tau_hi", "the fit window must span at least one decade");
  if (samples < 6) fail(sec + ".samples", "a decay fit needs at least 6 samples");
  if (!(tol > 0.0)) fail(sec + ".tol", "must be positive");
}

}  // namespace

dynamics::SimConfig to_sim_config(const ExperimentConfig& cfg) {
  const SimBlock& s = cfg.sim;
  dynamics::SimConfig c;
  c.alpha = s.alpha;
  c.p = s.p;
  c.mu = s.mu;
  c.h = s.h;
  c.n = s.n;
  c.dt = s.dt;
  c.T = s.T;
  c.stride = s.stride;
  c.nonlinear = s.nonlinear;
  c.quad_order = s.quad_order;
  if (s.symbol == "discrete")
    c.symbol.kind = lattice_core::SymbolKind::discrete_fractional;
  else if (s.symbol == "continuum")
    c.symbol.kind = lattice_core::SymbolKind::continuum_fractional;
  else if (s.symbol == "long_range")
    c.symbol.kind = lattice_core::SymbolKind::long_range;
  else
    throw ConfigError("simulate.symbol: expected discrete, continuum or long_range, got '" +
                      s.symbol + "'");
  c.symbol.alpha = s.alpha;
  c.symbol.q = s.q;
  c.symbol.radius = s.radius;
  c.initial = discretize::gaussian(s.amplitude, s.width, s.k1, s.k2);
  return c;
}

void finalize(ExperimentConfig& cfg) {
  if (cfg.threads < 0) fail("run.threads", "must be >= 0");
  if (cfg.out_dir.empty()) fail("run.out", "must not be empty");
  const bool sim = cfg.experiment == Experiment::simulate;
  const bool lim = cfg.experiment == Experiment::limit_study;
  auto& echo = cfg.echo;
  echo.clear();
  echo["run.experiment"] = to_string(cfg.experiment);
  echo["run.out"] = cfg.out_dir;
  echo["run.seed"] = std::to_string(cfg.seed);
  echo["run.threads"] = std::to_string(cfg.threads);
  echo["run.plot"] = cfg.plot ? "true" : "false";
  if (sim || lim) {
    SimBlock& s = cfg.sim;
    if (!(s.box > 0.0)) fail("simulate.box", "must be positive");
    if (lim) {
      const auto& ex = cfg.limit.h_exponents;
      if (ex.size() < 4) fail("limit.h_exponents", "need at least 4 mesh sizes");
      for (int e : ex)
        if (e < 0 || e > 12) fail("limit.h_exponents", "exponents must lie in [0,12]");
      if (cfg.limit.refinement < 4) fail("limit.refinement", "must be >= 4");
      int emin = ex[0], emax = ex[0];
      for (int e : ex) emin = std::min(emin, e), emax = std::max(emax, e);
      s.h = std::ldexp(1.0, -emin);
    }
    if (!(s.h > 0.0 && s.h <= 1.0)) fail("simulate.h", "h must lie in (0,1]");
    if (s.n == 0) {
      s.n = static_cast<int>(std::lround(s.box / s.h));
      s.n += s.n & 1;
    }
    s.box = s.n * s.h;
    dynamics::SimConfig c;
    try {
      c = to_sim_config(cfg);
      dynamics::validate(c, lim);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("[simulate] ") + e.what());
    }
    if (lim) {
      for (int e : cfg.limit.h_exponents) {
        const double h = std::ldexp(1.0, -e);
        const double n = s.box / h;
        if (std::abs(n - std::round(n)) > 1e-9 || static_cast<long>(std::round(n)) % 2)
          fail("limit.h_exponents", "h = 2^-" + std::to_string(e) + " does not tile the box");
      }
      if (s.dt == 0.0) {
        // Common step: the phase-resolution rule at the finest mesh.
        int emax = cfg.limit.h_exponents[0];
        for (int e : cfg.limit.h_exponents) emax = std::max(emax, e);
        dynamics::SimConfig f = c;
        f.h = std::ldexp(1.0, -emax);
        f.n = static_cast<int>(std::lround(s.box / f.h));
        s.dt = dynamics::default_dt(f);
      }
    } else if (s.dt == 0.0) {
      s.dt = dynamics::default_dt(c);
    }
    if (!(s.T >= s.dt)) fail("simulate.T", "T must be >= dt");
    echo["simulate.alpha"] = num(s.alpha);
    echo["simulate.p"] = std::to_string(s.p);
    echo["simulate.mu"] = std::to_string(s.mu);
    echo["simulate.h"] = num(s.h);
    echo["simulate.n"] = std::to_string(s.n);
    echo["simulate.box"] = num(s.box);
    echo["simulate.dt"] = num(s.dt);
    echo["simulate.T"] = num(s.T);
    echo["simulate.stride"] = std::to_string(s.stride);
    echo["simulate.symbol"] = s.symbol;
    echo["simulate.q"] = num(s.q);
    echo["simulate.radius"] = num(s.radius);
    echo["simulate.nonlinear"] = s.nonlinear ? "true" : "false";
    echo["simulate.amplitude"] = num(s.amplitude);
    echo["simulate.width"] = num(s.width);
    echo["simulate.k1"] = num(s.k1);
    echo["simulate.k2"] = num(s.k2);
    echo["simulate.quad_order"] = std::to_string(s.quad_order);
    if (lim) {
      echo["limit.h_exponents"] = join(cfg.limit.h_exponents);
      echo["limit.refinement"] = std::to_string(cfg.limit.refinement);
      echo["limit.check_reference"] = cfg.limit.check_reference ? "true" : "false";
    }
  }
  if (cfg.experiment == Experiment::dispersion_scan) {
    auto& d = cfg.dispersion;
    check_alpha_list("dispersion.alphas", d.alphas);
    band_from(d.band);
    check_window("dispersion", d.tau_lo, d.tau_hi, d.samples, d.tol);
    echo["dispersion.alphas"] = join(d.alphas);
    echo["dispersion.band"] = d.band;
    echo["dispersion.tau_lo"] = num(d.tau_lo);
    echo["dispersion.tau_hi"] = num(d.tau_hi);
    echo["dispersion.samples"] = std::to_string(d.samples);
    echo["dispersion.tol"] = num(d.tol);
    echo["dispersion.scale_window"] = d.scale_window ? "true" : "false";
    echo["dispersion.sweep"] = d.sweep ? "true" : "false";
  }
  if (cfg.experiment == Experiment::manifold_scan) {
    auto& m = cfg.manifold;
    check_alpha_list("manifold.alphas", m.alphas);
    if (m.count < 2) fail("manifold.count", "need at least 2 samples per branch");
    echo["manifold.alphas"] = join(m.alphas);
    echo["manifold.count"] = std::to_string(m.count);
  }
  if (cfg.experiment == Experiment::asymptotics) {
    auto& a = cfg.asymptotics;
    check_alpha_list("asymptotics.alpha", {a.alpha});
    if (a.point != "cusp" && a.point != "fold" && a.point != "k1")
      fail("asymptotics.point", "expected cusp, fold or k1, got '" + a.point + "'");
    check_window("asymptotics", a.tau_lo, a.tau_hi, a.samples, a.tol);
    echo["asymptotics.alpha"] = num(a.alpha);
    echo["asymptotics.point"] = a.point;
    echo["asymptotics.tau_lo"] = num(a.tau_lo);
    echo["asymptotics.tau_hi"] = num(a.tau_hi);
    echo["asymptotics.samples"] = std::to_string(a.samples);
    echo["asymptotics.tol"] = num(a.tol);
  }
}

ExperimentConfig parse_config(const std::string& text, std::optional<Experiment> experiment) {
  ExperimentConfig cfg;
  if (experiment) cfg.experiment = *experiment;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  bool saw_experiment = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      static const char* known[] = {"run", "simulate", "limit", "dispersion", "manifold", "asymptotics"};
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      if (!ok) throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key outside of a section");
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto& reg = registry();
    const auto it = reg.find(key);
    if (it == reg.end()) throw ConfigError(key + ": unknown key");
    it->second(cfg, key, value);
    if (key == "run.experiment") {
      saw_experiment = true;
      if (experiment && cfg.experiment != *experiment)
        throw ConfigError("run.experiment: config is for '" + value + "' but the command is '" +
                          to_string(*experiment) + "'");
    }
  }
  if (!experiment && !saw_experiment) throw ConfigError("run.experiment: missing");
  finalize(cfg);
  return cfg;
}

}  // namespace dfnls::harness
