#include "dfnls/harness.hpp"

#include <omp.h>
#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dfnls/dynamics.hpp"
#include "dfnls/manifold.hpp"
#include "dfnls/studies.hpp"
#include "dfnls/svg.hpp"
#include "json.hpp"

namespace dfnls::harness {

using nlohmann::json;
namespace fs = std::filesystem;

const char* artifact_version() { return "1.0.0"; }

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, bytes.data(), bytes.size());
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Output {
 public:
  Output(const ExperimentConfig& cfg, RunManifest& m) : cfg_(cfg), m_(m), dir_(cfg.out_dir) {
    fs::create_directories(dir_);
  }

  void write(const std::string& name, const std::string& content) {
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
    f << content;
    m_.files.push_back({name, sha256_hex(content), content.size()});
  }

  std::string csv_echo() const {
    std::string s = std::string("# dfnls ") + artifact_version() + "\n";
    for (const auto& [k, v] : cfg_.echo) s += "# " + k + " = " + v + "\n";
    return s;
  }

  json json_echo() const { return json(cfg_.echo); }

  void json_file(const std::string& name, json body) {
    body["config"] = json_echo();
    write(name, body.dump(2) + "\n");
  }

  void plot(const std::string& name, svg::Plot p) {
    if (!cfg_.plot) return;
    std::string c;
    for (const auto& [k, v] : cfg_.echo) c += k + " = " + v + "\n";
    p.comment = c;
    write(name, svg::render(p));
  }

 private:
  const ExperimentConfig& cfg_;
  RunManifest& m_;
  fs::path dir_;
};

void run_simulate(const ExperimentConfig& cfg, Output& out) {
  const dynamics::SimConfig sc = to_sim_config(cfg);
  const dynamics::SimResult r = dynamics::simulate(sc);
  std::string csv = out.csv_echo() + "t,mass,energy,supnorm\n";
  for (std::size_t i = 0; i < r.obs.times.size(); ++i)
    csv += num(r.obs.times[i]) + "," + num(r.obs.mass[i]) + "," + num(r.obs.energy[i]) + "," +
           num(r.obs.supnorm[i]) + "\n";
  out.write("observables.csv", csv);
  json s;
  s["dt"] = r.dt;
  s["steps"] = r.monitors.steps;
  s["threads"] = r.threads;
  s["max_mass_drift"] = r.monitors.max_mass_drift;
  s["max_boundary_fraction"] = r.monitors.max_boundary_fraction;
  s["max_supnorm"] = r.monitors.max_supnorm;
  const double e0 = r.obs.energy.front();
  s["energy_drift"] = std::abs(r.obs.energy.back() - e0) / std::max(std::abs(e0), 1e-300);
  if (sc.symbol.kind == lattice_core::SymbolKind::long_range)
    s["long_range_tail_bound"] = lattice_core::long_range_tail_bound(sc.symbol);
  out.json_file("summary.json", s);
  svg::Plot p{"sup-norm", "t", "sup |u_h|", false, false, {{"supnorm", r.obs.times, r.obs.supnorm}}, ""};
  out.plot("plot.svg", p);
}

void run_limit(const ExperimentConfig& cfg, Output& out) {
  const dynamics::SimConfig sc = to_sim_config(cfg);
  std::vector<double> hs;
  for (int e : cfg.limit.h_exponents) hs.push_back(std::ldexp(1.0, -e));
  dynamics::LimitOptions opt;
  opt.refinement = cfg.limit.refinement;
  opt.quad_order = cfg.sim.quad_order;
  opt.check_reference = cfg.limit.check_reference;
  const auto study = dynamics::continuum_limit_study(sc, hs, opt);
  std::string csv = out.csv_echo() + "h,n,error,mass_drift,boundary_fraction,steps\n";
  for (const auto& r : study.rows)
    csv += num(r.h) + "," + std::to_string(r.n) + "," + num(r.error) + "," + num(r.mass_drift) +
           "," + num(r.boundary_fraction) + "," + std::to_string(r.steps) + "\n";
  out.write("errors.csv", csv);
  json f;
  f["order"] = study.fit.slope;
  f["constant"] = study.fit.constant;
  f["residual"] = study.fit.residual;
  f["window"] = {study.fit.window_lo, study.fit.window_hi};
  f["count"] = study.fit.count;
  f["monotone"] = study.monotone;
  f["reference_h"] = study.reference_h;
  f["reference_change"] = study.reference_change;
  f["predicted_rate"] = cfg.sim.alpha / (2.0 + cfg.sim.alpha);
  out.json_file("fit.json", f);
  svg::Series data{"error", {}, {}}, line{"fit", {}, {}, true, false};
  for (const auto& r : study.rows) {
    data.x.push_back(r.h);
    data.y.push_back(r.error);
    line.x.push_back(r.h);
    line.y.push_back(study.fit.constant * std::pow(r.h, study.fit.slope));
  }
  out.plot("plot.svg", {"continuum-limit error", "h", "L2 error", true, true, {data, line}, ""});
}

void run_dispersion(const ExperimentConfig& cfg, Output& out, RunManifest& m) {
  const auto& d = cfg.dispersion;
  const auto band = band_from(d.band);
  studies::ScanOptions opt;
  opt.tau_lo = d.tau_lo;
  opt.tau_hi = d.tau_hi;
  opt.samples = d.samples;
  opt.scale_window = d.scale_window;
  opt.quad.tol = d.tol;
  std::string csv = out.csv_echo() + "alpha,N,band,tau,absJ,sigma_fit,C_fit,residual,status\n";
  json rows = json::array();
  std::vector<svg::Series> series;
  std::vector<double> la, lc;
  for (double alpha : d.alphas) {
    json item;
    item["alpha"] = alpha;
    try {
      const auto r = studies::constant_scan({alpha}, band, opt).front();
      const auto& rep = r.report;
      svg::Series s{"alpha=" + num(alpha).substr(0, 5), {}, {}};
      for (const auto& row : rep.rows) {
        csv += num(alpha) + "," + num(r.N) + "," + oscillatory::to_string(band) + "," + num(row.tau) +
               "," + num(std::abs(row.J)) + "," + num(rep.fit.sigma()) + "," +
               num(rep.geometric_mean) + "," + num(rep.fit.residual) + ",ok\n";
        s.x.push_back(row.tau);
        s.y.push_back(std::abs(row.J));
      }
      series.push_back(s);
      item["N"] = r.N;
      item["xi"] = {r.point.xi.x, r.point.xi.y};
      item["class"] = manifold::to_string(r.point.cls);
      item["sigma_fit"] = rep.fit.sigma();
      item["sigma0"] = r.point.sigma0;
      item["C_measured"] = rep.geometric_mean;
      item["d0_closed_form"] = std::abs(manifold::leading_d0(r.point, rep.zeta));
      item["last_ratio"] = rep.last_ratio;
      item["residual"] = rep.fit.residual;
      item["window_scale"] = r.window_scale;
      item["bump"] = {rep.bump.bump.rx, rep.bump.bump.ry};
      item["status"] = "ok";
      la.push_back(band == oscillatory::Band::S3 ? std::log(2.0 - alpha) : std::log(alpha - 1.0));
      lc.push_back(std::log(rep.geometric_mean));
      if (d.sweep) {
        const auto sw = studies::velocity_sweep(alpha, rep.bump.bump, dispersion::group_velocity(r.point.xi, alpha), 0.05, d.tau_lo, opt.quad);
        item["sweep"] = {{"J_at_v0", sw.J_at_v0}, {"J_best", sw.J_best}, {"v_best", {sw.v_best.x, sw.v_best.y}}};
      }
    } catch (const std::exception& e) {
      csv += num(alpha) + ",,," + ",,,,," + "error: " + e.what() + "\n";
      item["status"] = std::string("error: ") + e.what();
      m.failures.push_back("alpha = " + num(alpha) + ": " + e.what());
    }
    rows.push_back(item);
  }
  out.write("scan.csv", csv);
  json s;
  s["band"] = d.band;
  s["rows"] = rows;
  if (la.size() >= 2) {
    const auto line = fit_line(la, lc);
    s["trend_slope"] = line.slope;
    s["trend_against"] = band == oscillatory::Band::S3 ? "log(2-alpha)" : "log(alpha-1)";
  }
  out.json_file("summary.json", s);
  out.plot("plot.svg", {"oscillatory integral decay", "tau", "|J|", true, true, series, ""});
}

void run_manifold(const ExperimentConfig& cfg, Output& out) {
  std::string csv = out.csv_echo() + "alpha,branch,a,b,residual,class,sigma0,d0\n";
  json rows = json::array();
  std::vector<svg::Series> series;
  for (double alpha : cfg.manifold.alphas) {
    double worst = 0.0;
    svg::Series s{"alpha=" + num(alpha).substr(0, 5), {}, {}, false, true};
    for (auto br : {manifold::Branch::gamma1, manifold::Branch::gamma2})
      for (const auto& c : manifold::sample_curve(alpha, br, cfg.manifold.count)) {
        const auto p = manifold::analyze(manifold::xi_from_ab(c.a, c.b), alpha);
        csv += num(alpha) + "," + manifold::to_string(br) + "," + num(c.a) + "," + num(c.b) + "," +
               num(c.residual) + "," + manifold::to_string(p.cls) + "," + num(p.sigma0) + "," +
               num(std::abs(p.d0)) + "\n";
        worst = std::max(worst, c.residual);
        s.x.push_back(c.a);
        s.y.push_back(c.b);
      }
    series.push_back(s);
    const auto proxy = manifold::fold_proxy(alpha, cfg.manifold.count);
    json item;
    item["alpha"] = alpha;
    item["max_residual"] = worst;
    item["B_at_1_error"] = std::abs(manifold::curve_B(1.0, alpha) - (2.0 - alpha) / alpha);
    item["fold_proxy"] = {{"a", proxy.a}, {"b", proxy.b}, {"d0", proxy.d0}};
    item["cusp_d0"] = std::abs(manifold::analyze(studies::cusp_xi(), alpha).d0);
    rows.push_back(item);
  }
  out.write("curves.csv", csv);
  json s;
  s["rows"] = rows;
  out.json_file("summary.json", s);
  out.plot("plot.svg", {"critical curves E_alpha", "a = cos xi1", "b = cos xi2", false, false, series, ""});
}

void run_asymptotics(const ExperimentConfig& cfg, Output& out) {
  const auto& a = cfg.asymptotics;
  dispersion::Vec2 xi = a.point == "cusp" ? studies::cusp_xi()
                        : a.point == "fold" ? studies::fold_xi_am(a.alpha)
                                            : studies::k1_xi();
  const auto p = manifold::analyze(xi, a.alpha);
  oscillatory::QuadratureOptions q;
  q.tol = a.tol;
  const auto rep = studies::verify_asymptotics(p, log_spaced(a.tau_lo, a.tau_hi, a.samples), q);
  std::string csv = out.csv_echo() + "tau,re_J,im_J,absJ,scaled,ratio,quad_error\n";
  svg::Series s{"|J|", {}, {}}, ref{"d0 tau^-sigma0", {}, {}, true, false};
  const double d0 = std::abs(manifold::leading_d0(p, rep.zeta));
  for (const auto& r : rep.rows) {
    csv += num(r.tau) + "," + num(r.J.real()) + "," + num(r.J.imag()) + "," + num(std::abs(r.J)) +
           "," + num(r.scaled) + "," + num(r.ratio) + "," + num(r.quad_error) + "\n";
    s.x.push_back(r.tau);
    s.y.push_back(std::abs(r.J));
    ref.x.push_back(r.tau);
    ref.y.push_back(d0 * std::pow(r.tau, -p.sigma0));
  }
  out.write("asymptotics.csv", csv);
  json j;
  j["xi"] = {p.xi.x, p.xi.y};
  j["class"] = manifold::to_string(p.cls);
  j["sigma0"] = p.sigma0;
  j["newton_distance"] = p.nf.distance;
  j["d0"] = d0;
  j["zeta"] = rep.zeta;
  j["sigma_fit"] = rep.fit.sigma();
  j["fit_residual"] = rep.fit.residual;
  j["last_ratio"] = rep.last_ratio;
  j["cauchy"] = rep.cauchy;
  j["bump"] = {rep.bump.bump.rx, rep.bump.bump.ry};
  out.json_file("summary.json", j);
  out.plot("plot.svg", {"asymptotics at " + a.point, "tau", "|J|", true, true, {s, ref}, ""});
}

}  // namespace

RunManifest run(const ExperimentConfig& cfg) {
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  const auto start = std::chrono::steady_clock::now();
  RunManifest m;
  m.config = cfg.echo;
  m.version = artifact_version();
  m.threads = omp_get_max_threads();
  Output out(cfg, m);
  switch (cfg.experiment) {
    case Experiment::simulate: run_simulate(cfg, out); break;
    case Experiment::limit_study: run_limit(cfg, out); break;
    case Experiment::dispersion_scan: run_dispersion(cfg, out, m); break;
    case Experiment::manifold_scan: run_manifold(cfg, out); break;
    case Experiment::asymptotics: run_asymptotics(cfg, out); break;
  }
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json j;
  j["version"] = m.version;
  j["config"] = m.config;
  j["threads"] = m.threads;
  j["wall_clock_seconds"] = m.wall_seconds;
  j["failures"] = m.failures;
  json files = json::array();
  for (const auto& f : m.files) files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  j["files"] = files;
  std::ofstream(fs::path(cfg.out_dir) / "manifest.json") << j.dump(2) << "\n";
  return m;
}

int selftest(std::uint64_t seed, std::ostream& out) {
  using namespace lattice_core;
  int failures = 0;
  auto check = [&](const std::string& name, bool ok, double value) {
    out << (ok ? "PASS " : "FAIL ") << name << " (" << value << ")\n";
    if (!ok) ++failures;
  };
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const Grid g = make_grid(0.25, 16);
  LatticeField f(g);
  for (auto& v : f.values) v = cplx(nd(rng), nd(rng));

  const LatticeField back = inverse_dft(forward_dft(f));
  double err = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    err = std::max(err, std::abs(back.values[i] - f.values[i]));
    ref = std::max(ref, std::abs(f.values[i]));
  }
  check("dft round trip", err <= 1e-12 * ref, err / ref);

  SymbolSpec lap{SymbolKind::discrete_fractional, 2.0};
  const LatticeField a = apply_multiplier(lap, f);
  double serr = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const cplx st = (4.0 * f(i, j) - f((i + 1) % g.n, j) - f((i + g.n - 1) % g.n, j) -
                       f(i, (j + 1) % g.n) - f(i, (j + g.n - 1) % g.n)) / (g.h * g.h);
      serr = std::max(serr, std::abs(st - a(i, j)));
    }
  check("alpha = 2 multiplier vs 5-point stencil", serr <= 1e-10 * 64.0 * ref, serr);

  double part = 0.0;
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double r = pi * std::max(ud(rng), 1e-3), t = 2.0 * pi * ud(rng);
    double s = 0.0;
    for (double N = 1.0; N > 1e-9; N *= 0.5) s += oscillatory::eta({r * std::cos(t), r * std::sin(t)}, {N});
    part = std::max(part, std::abs(s - 1.0));
  }
  check("Littlewood-Paley partition of unity", part <= 1e-10, part);

  double berr = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double alpha = 1.0 + k / 100.0;
    berr = std::max(berr, std::abs(manifold::curve_B(1.0, alpha) - (2.0 - alpha) / alpha));
  }
  check("B(1, alpha) = (2 - alpha)/alpha", berr <= 1e-12, berr);

  check("N_2 = 1/8", oscillatory::N_alpha(2.0) == 0.125, oscillatory::N_alpha(2.0));
  return failures;
}

}  // namespace dfnls::harness
