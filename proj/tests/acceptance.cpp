// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "monge/cli.hpp"
#include "monge/hodograph.hpp"
#include "monge/report.hpp"

using namespace monge;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void line(int id, bool ok, const std::string& what) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string sci(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", v);
  return b;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FieldBundle build(const FamilyVariant& v, std::map<std::string, double> mutate = {}) {
  return make_family({v, std::move(mutate), {}});
}

const CheckResult& need(const ResidualReport& r, const std::string& name) {
  const CheckResult* c = r.find(name);
  if (!c) throw std::runtime_error("missing check " + name);
  return *c;
}

// f_{n-k} = conj(f_k) keeps every field real; lambda_0 = 1 (and -1 for even n) get real polynomials.
TrivialCfg random_trivial(int n, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TrivialCfg c;
  c.n = n;
  c.f.assign(static_cast<std::size_t>(n), {});
  for (int k = 0; k <= n / 2; ++k) {
    const bool real = k == 0 || 2 * k == n;
    std::vector<cplx> p(6);
    for (cplx& a : p) a = real ? cplx(u(g)) : cplx(u(g), u(g));
    c.f[static_cast<std::size_t>(k)] = p;
    if (!real) {
      for (cplx& a : p) a = std::conj(a);
      c.f[static_cast<std::size_t>(n - k)] = p;
    }
  }
  return c;
}

M1ImplicitCfg m1(std::vector<cplx> F, cplx seed) {
  M1ImplicitCfg c;
  c.F = std::move(F);
  c.seed = seed;
  return c;
}

DegenerateCfg degenerate(std::vector<cplx> C) {
  DegenerateCfg c;
  c.C = std::move(C);
  c.G = {0, 1};
  c.x_ref = 1.5;
  c.seed = 1.5;
  return c;
}

void criterion1() {
  std::mt19937_64 g(101);
  bool ok = true;
  std::ostringstream os;
  for (int n : {2, 3, 4}) {
    const auto t0 = std::chrono::steady_clock::now();
    const FieldBundle b = build(random_trivial(n, g));
    GridSpec grid;
    grid.nx = grid.nz = 101;
    const CheckResult c = check_compatibility(b, grid, 1e-10);
    const CheckResult r = reconstruct_U(b, grid, 1e-6);
    const double dt = seconds_since(t0);
    ok = ok && c.pass && r.pass && dt < 5.0;
    os << " n=" << n << ": compat " << sci(c.max_abs) << ", reconstruct " << sci(r.max_abs) << ", " << sci(dt) << " s;";
  }
  line(1, ok, "Trivial family, random degree-5 f_k, 101x101:" + os.str());
}

void criterion2() {
  bool ok = true;
  std::ostringstream os;
  for (const auto& [name, cfg] : {std::pair{"l^3", m1({0, 0, 0, 1}, 1.0)},
                                  std::pair{"l^3+0.5l^2-l+0.2", m1({0.2, -1, 0.5, 1}, 1.2)}}) {
    const FieldBundle b = build(cfg);
    double worst = 0.0;
    const auto pts = probe_points(b, b.domain.rect, 20240601, 200);
    for (const auto& [x, z] : pts) worst = std::max(worst, b.characteristic(x, z).raw);
    ok = ok && pts.size() == 200 && worst <= 1e-8;
    os << " F=" << name << ": " << sci(worst) << ";";
  }
  line(2, ok, "M1 |l_z - l l_x| at 200 safe points:" + os.str());
}

void criterion3() {
  const auto one = [](double) { return cplx(1); };
  const auto none = [](double) { return cplx(0); };
  const auto half = [](double k) { return cplx(0.5 * k); };
  KQuadrature single;
  single.nodes = {0.8};
  single.weights = {1.0};
  KQuadrature two;
  two.nodes = {-0.6, 1.1};
  two.weights = {0.7, 0.4};
  const UFn profile = [](const SeriesC& c) { return c * 0.5 + 1.0; };
  const RIntegralResult a = assemble_R_integral(one, none, single, constant_fn(1.0), {-1, 1}, {0, 1});
  const RIntegralResult b = assemble_R_integral(one, half, two, profile, {-1, 1}, {0, 1});
  const double drift = std::max(a.wronskian_drift, b.wronskian_drift);
  const bool ok = a.max_residual <= 1e-8 && b.max_residual <= 1e-8 && drift <= 1e-8;
  line(3, ok, "M2 R-integral: single-mode " + sci(a.max_residual) + ", two-mode " + sci(b.max_residual) +
                  ", Wronskian drift " + sci(drift));
}

void criterion4() {
  bool ok = true;
  std::ostringstream os;
  for (const auto& [name, C] : {std::pair{"a", std::vector<cplx>{0, 1}}, std::pair{"a^2", std::vector<cplx>{0, 0, 1}}}) {
    const FieldBundle b = build(degenerate(C));
    double worst = 0.0;
    const auto pts = grid_points(b, {});
    for (const auto& [x, z] : pts) worst = std::max(worst, b.characteristic(x, z).raw);
    ok = ok && worst <= 1e-8;
    os << " C=" << name << ": " << sci(worst) << " (" << pts.size() << " pts);";
  }
  line(4, ok, "Degenerate |a_z - C_a^(1/2) a_x|:" + os.str());
}

std::vector<std::pair<std::string, FamilyVariant>> m3_families() {
  M3GeneralCfg cosh;
  cosh.g = -1.0;
  return {{"M3SigmaConst", M3SigmaConstCfg{}}, {"M3L1Const", M3L1ConstCfg{}},   {"M3ThetaConst", M3ThetaConstCfg{}},
          {"M3HodoExample", M3HodoExampleCfg{}}, {"M3General", cosh},           {"M3GeneralE0", M3GeneralE0Cfg{}}};
}

void criterion5() {
  bool ok = true;
  std::ostringstream os;
  VerifyOptions o;
  o.checks = {"compat", "dependence", "wf", "eq5", "eq10"};
  for (const auto& [name, v] : m3_families()) {
    const ResidualReport r = run_checks(build(v), {}, o);
    const CheckResult& eq5 = need(r, "eq5");
    const CheckResult& eq = eq5.applicable ? eq5 : need(r, "eq10");
    const CheckResult& wf = need(r, "wf");
    const bool fam = eq.pass && need(r, "eq10").pass && need(r, "compat").pass && need(r, "dependence").pass &&
                     wf.pass && wf.details.value("quadrature_agrees", false);
    ok = ok && fam;
    os << " " << name << (fam ? "" : "(FAIL)") << " " << eq.name << "=" << sci(eq.max_abs) << "/compat="
       << sci(need(r, "compat").max_abs) << "/dep=" << sci(need(r, "dependence").max_abs) << "/wf=" << sci(wf.max_abs)
       << "/quad=" << sci(std::max(wf.details.value("quadrature_f_max", 0.0), wf.details.value("quadrature_W_max", 0.0)))
       << ";";
  }
  line(5, ok, "M3 families (eq5|eq10, compat, dependence, wf, quadrature):" + os.str());
}

void criterion6() {
  bool ok = true;
  std::ostringstream os;
  VerifyOptions o;
  o.checks = {"compat", "eq5"};
  for (int n : {4, 5}) {
    MnThetaConstCfg c;
    c.n = n;
    const ResidualReport r = run_checks(build(c), {}, o);
    ok = ok && need(r, "eq5").pass && need(r, "compat").pass;
    os << " n=" << n << ": eq5 " << sci(need(r, "eq5").max_abs) << ", compat " << sci(need(r, "compat").max_abs) << ";";
  }
  line(6, ok, "Mn family:" + os.str());
}

void criterion7() {
  bool ok = true;
  std::ostringstream os;
  for (const auto& [name, v] : m3_families()) {
    const FieldBundle b = build(v);
    if (!b.quadruple) continue;  // only the constant-nu families carry an (L1', L2') quadruple
    const auto pts = probe_points(b, b.domain.rect, 20240601, 100);
    auto worst = [&](DualityVariant dv) {
      const Quadruple d = duality_transform(*b.quadruple, dv);
      double m = 0.0;
      for (const auto& [x, z] : pts) {
        try {
          m = std::max(m, residual_eq5(d, x, z).normalized);
        } catch (const DomainError&) {
          m = std::max(m, 1.0);
        }
      }
      return m;
    };
    const double lit = worst(DualityVariant::Literal), sym = worst(DualityVariant::Symmetric);
    const std::string passing = lit <= 1e-8 ? (sym <= 1e-8 ? "both" : "literal") : (sym <= 1e-8 ? "symmetric" : "none");
    ok = ok && passing != "none";
    os << " " << name << ": literal " << sci(lit) << ", symmetric " << sci(sym) << " -> " << passing << ";";
  }
  line(7, ok, "duality transform preserves eq5 (<=1e-8):" + os.str());
}

void criterion8() {
  std::mt19937_64 g(101);
  std::vector<std::pair<std::string, FamilyVariant>> fams = {
      {"Trivial n=2", random_trivial(2, g)},
      {"Trivial n=3", random_trivial(3, g)},
      {"Trivial n=4", random_trivial(4, g)},
      {"M1Implicit", m1({0, 0, 0, 1}, 1.0)},
      {"Degenerate", degenerate({0, 0, 1})},
      {"MnThetaConst n=4", MnThetaConstCfg{}},
  };
  for (auto& f : m3_families()) fams.push_back(f);
  VerifyOptions o;
  o.checks = {"compat", "dependence", "wf", "eq5", "eq10"};
  int total = 0, caught = 0;
  std::string missed;
  for (const auto& [name, v] : fams) {
    const FieldBundle base = build(v);
    for (const std::string& target : base.mutation_targets) {
      const ResidualReport r = run_checks(build(v, {{target, 1.1}}), {}, o);
      ++total;
      bool hit = false;
      for (const CheckResult& c : r.checks) hit = hit || (!c.pass && c.max_abs >= 1e-4);
      if (hit) ++caught;
      else missed += " " + name + ":" + target;
    }
  }
  line(8, caught == total, "10% mutation of each derivative function fails a check with residual >= 1e-4: " +
                               std::to_string(caught) + "/" + std::to_string(total) + " caught" +
                               (missed.empty() ? "" : "; missed" + missed));
}

void criterion9() {
  int in_band = 0;
  std::ostringstream os;
  for (const auto& [name, v] : m3_families()) {
    const CheckResult r = reconstruct_U(build(v), {}, 1e-6);
    const double ratio = r.details.value("ratio", 0.0);
    const bool band = r.pass && ratio >= 3.5 && ratio <= 4.5;
    if (band) ++in_band;
    os << " " << name << " " << sci(ratio) << (band ? "" : "(out)") << ";";
  }
  line(9, in_band >= 2, "Richardson ratio r_h/r_(h/2) in [3.5, 4.5] for " + std::to_string(in_band) + " families:" +
                            os.str());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void criterion10() {
  const fs::path base = fs::temp_directory_path() / "monge_acceptance_determinism";
  fs::remove_all(base);
  fs::create_directories(base);
  const fs::path cfg = base / "config.json";
  std::ofstream(cfg) << R"({"family": {"family": "M3SigmaConst"}, "seed": 987654321})";
  std::ostringstream sink;
  const int a = run_cli({"verify", "--config", cfg.string(), "--out", (base / "a").string()}, sink, sink);
  const int b = run_cli({"verify", "--config", cfg.string(), "--out", (base / "b").string()}, sink, sink);
  const bool same_json = slurp(base / "a" / "report.json") == slurp(base / "b" / "report.json");
  const bool same_csv = slurp(base / "a" / "report.csv") == slurp(base / "b" / "report.csv");
  const bool ok = a == 0 && b == 0 && same_json && same_csv && !slurp(base / "a" / "report.json").empty();
  line(10, ok, std::string("two verify runs, same config and seed: report.json ") + (same_json ? "identical" : "differs") +
                   ", report.csv " + (same_csv ? "identical" : "differs"));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  void (*all[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                     criterion6, criterion7, criterion8, criterion9, criterion10};
  int id = 1;
  for (auto f : all) {
    try {
      f();
    } catch (const std::exception& e) {
      line(id, false, std::string("exception: ") + e.what());
    }
    ++id;
  }
  std::printf("total %.1f s, %d failing\n", seconds_since(t0), failures);
  return failures ? 1 : 0;
}
