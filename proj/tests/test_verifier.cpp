#include "doctest.h"

#include "monge/report.hpp"
#include "monge/verifier.hpp"

using namespace monge;

namespace {

FieldBundle custom(std::function<FieldSample(const JetC&, const JetC&)> f) {
  FieldBundle b;
  b.family = "custom";
  b.n = 1;
  b.domain.rect = {0.1, 1.0, 0.1, 1.0};
  b.fields = std::move(f);
  return b;
}

FieldBundle trivial(int n, std::vector<std::vector<cplx>> f) {
  TrivialCfg c;
  c.n = n;
  c.f = std::move(f);
  return make_family({c, {}, {}});
}

}  // namespace

TEST_CASE("dependence on independent and dependent pairs") {
  const FieldBundle ind = custom([](const JetC& x, const JetC& z) { return FieldSample{{x}, z, x}; });
  CHECK(check_dependence(ind, {}, 1e-9).max_abs == doctest::Approx(1.0));
  CHECK_FALSE(check_dependence(ind, {}, 1e-9).pass);
  const FieldBundle dep = custom([](const JetC& x, const JetC& z) { return FieldSample{{x + z}, (x + z) * 2.0, x + z}; });
  CHECK(check_dependence(dep, {}, 1e-9).max_abs == 0.0);
}

TEST_CASE("compatibility") {
  const CheckResult t = check_compatibility(trivial(2, {{0, 0, 0, 1}, {0, 0, 0, 1}}), {}, 1e-9);
  CHECK(t.max_abs <= 1e-12);
  CHECK(t.points == 441);

  const CheckResult s = check_compatibility(make_family({M3SigmaConstCfg{}, {}, {}}), {}, 1e-9);
  CHECK(s.pass);
  const CheckResult m = check_compatibility(make_family({M3SigmaConstCfg{}, {{"theta_z", 2.0}}, {}}), {}, 1e-9);
  CHECK_FALSE(m.pass);
  CHECK(m.max_abs >= 1e-3);
}

TEST_CASE("wf relations") {
  CHECK(check_wf_relation(make_family({M3GeneralCfg{}, {}, {}}), {}, 1e-9).max_abs <= 1e-9);
  CHECK(check_wf_relation(make_family({M3HodoExampleCfg{}, {}, {}}), {}, 1e-9).max_abs <= 1e-9);
  const CheckResult t = check_wf_relation(trivial(2, {{0, 0, 1}, {0, 0, 1}}), {}, 1e-9);
  CHECK(t.max_abs == 0.0);
  CHECK(t.details["relation"] == "Identity");
  const CheckResult none = check_wf_relation(make_family({MnThetaConstCfg{}, {}, {}}), {}, 1e-9);
  CHECK_FALSE(none.applicable);
}

TEST_CASE("reconstruction oracle") {
  GridSpec g;
  g.nx = g.nz = 101;
  const CheckResult q = reconstruct_U(trivial(2, {{0, 0, 1}, {0, 0, 1}}), g, 1e-6);
  CHECK(q.max_abs <= 1e-10);
  const cplx c(0.3, -0.2);
  const CheckResult cub = reconstruct_U(trivial(3, {{0, 0, 0, 1}, {0, 0, 0, c}, {0, 0, 0, std::conj(c)}}), g, 1e-6);
  CHECK(cub.pass);
  const CheckResult s = reconstruct_U(make_family({M3SigmaConstCfg{}, {}, {}}), {}, 1e-6);
  CHECK(s.max_abs <= 1e-4);
  CHECK(s.details["path_difference_extrapolated"].get<double>() <= 1e-6);
  const CheckResult broken = reconstruct_U(make_family({M3SigmaConstCfg{}, {{"a1", 1.1}}, {}}), {}, 1e-6);
  CHECK_FALSE(broken.pass);
  CHECK_FALSE(reconstruct_U(make_family({MnThetaConstCfg{5}, {}, {}}), {}, 1e-6).applicable);
}

TEST_CASE("grid and option validation") {
  GridSpec g;
  g.nx = 4;
  CHECK_THROWS_AS(validate_grid(g), ConfigError);
  g.nx = 21;
  g.h = 0.1;
  CHECK_THROWS_AS(validate_grid(g), ConfigError);
  g.h = 1e-2;
  CHECK_NOTHROW(validate_grid(g));

  const FieldBundle b = make_family({M3SigmaConstCfg{}, {}, {}});
  VerifyOptions o;
  o.checks = {"nope"};
  CHECK_THROWS_AS(run_checks(b, {}, o), ConfigError);
  o.checks = {"wf"};
  o.tolerances = {{"wf", -1.0}};
  CHECK_THROWS_AS(run_checks(b, {}, o), ConfigError);

  GridSpec off;
  off.rect = Rect{-5, -4, 0.1, 0.2};
  CHECK_THROWS_AS(grid_points(b, off), DomainError);
}

TEST_CASE("probe points are reproducible") {
  const FieldBundle b = make_family({M3SigmaConstCfg{}, {}, {}});
  const auto a = probe_points(b, b.domain.rect, 42, 50), c = probe_points(b, b.domain.rect, 42, 50);
  const auto d = probe_points(b, b.domain.rect, 43, 50);
  CHECK(a == c);
  CHECK(a != d);
  for (const auto& [x, z] : a) CHECK(b.domain.contains(x, z));
}

TEST_CASE("report pass flags and serialization") {
  const FieldBundle b = make_family({M3SigmaConstCfg{}, {}, {}});
  VerifyOptions o;
  o.checks = {"wf", "eq5"};
  const ResidualReport r = run_checks(b, {}, o);
  REQUIRE(r.checks.size() == 2);
  for (const CheckResult& c : r.checks) CHECK(c.pass == (c.max_abs <= c.tolerance));
  CHECK(r.find("eq5"));
  CHECK_FALSE(r.find("compat"));
  const std::string j1 = dump_json(report_to_json(r)), j2 = dump_json(report_to_json(run_checks(b, {}, o)));
  CHECK(j1 == j2);
  CHECK(nlohmann::json::parse(j1)["checks"][1]["name"] == "eq5");
  CHECK(fmt(0.1) == "0.10000000000000001");
  const std::string csv = report_csv(r);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
