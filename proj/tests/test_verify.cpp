#include "mlab/error.hpp"
#include "mlab/verify.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mlab;
using oracle::identity;
using oracle::vec;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected mlab::Error");
  return ErrorKind::InvalidSpec;
}

bool has_flag(const TheoremReport& r, std::string_view flag) {
  for (const auto& f : r.flags)
    if (f == flag) return true;
  return false;
}

NormSpec euclid3() {
  Matrix A(3, 3);
  A << 2, 0.3, 0, 0.3, 1, 0.1, 0, 0.1, 1.5;
  return NormSpec::euclidean(A);
}
NormSpec randers3() { return NormSpec::randers(identity(3), vec({0.5, 0, 0})); }
NormSpec quartic3() { return NormSpec::quartic_reg(3, 0.2); }

const SamplePlan kPlan{};  // seed 7, 200 samples, radii in [0.5, 2]

SamplePlan plan_of(int count) {
  SamplePlan p;
  p.count = count;
  return p;
}

}  // namespace

TEST_CASE("Tolerances: defaults, overrides and rejection") {
  Tolerances t;
  CHECK(t["flat"] == 1e-8);
  CHECK(t["cross_route"] == 1e-7);
  CHECK(t["eq23"] == 1e-10);
  CHECK(t["relation"] == 1e-6);
  CHECK(t["parallel"] == 1e-10);
  CHECK(Tolerances::defaults().size() == 17);
  t.set("flat", 1e-3);
  CHECK(t["flat"] == 1e-3);
  CHECK(kind_of([&] { t.set("flatness", 1e-3); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([&] { t.set("flat", 0.0); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([&] { t.set("flat", -1.0); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([&] { t.set("flat", std::nan("")); }) == ErrorKind::InvalidSpec);
}

TEST_CASE("Check semantics") {
  CHECK(Check::upper("x", 1.0, 2.0).verdict() == Verdict::pass);
  CHECK(Check::upper("x", 2.0, 2.0).verdict() == Verdict::fail);
  CHECK(Check::lower("x", 3.0, 2.0).verdict() == Verdict::pass);
  CHECK(Check::upper("x", 3.0, 2.0, false).verdict() == Verdict::measured);
  const Check vacuous = Check::implication("x", false, 10.0, 1.0);
  CHECK(vacuous.verdict() == Verdict::pass);
  CHECK_FALSE(vacuous.note.empty());
  CHECK(Check::implication("x", true, 10.0, 1.0).verdict() == Verdict::fail);
  CHECK(Check::implication("x", true, 0.1, 1.0).verdict() == Verdict::pass);

  TheoremReport r;
  r.add(Check::upper("measured", 5.0, 1.0, false));
  CHECK(r.passed());
  r.add(Check::upper("asserted", 5.0, 1.0));
  CHECK_FALSE(r.passed());
  CHECK_THROWS_AS(r.at("missing"), std::out_of_range);
}

TEST_CASE("frame_planes") {
  const auto p2 = frame_planes(2);
  CHECK(p2.size() == 3);
  for (const auto& [u, v] : p2) {
    CHECK(std::abs(u.norm() - 1.0) < 1e-15);
    CHECK(std::abs(v.norm() - 1.0) < 1e-15);
    CHECK(std::abs(u.dot(v)) < 1e-15);
  }
  CHECK(frame_planes(3).size() == 3);
  CHECK(frame_planes(4).size() == 6);
  CHECK(kind_of([] { frame_planes(1); }) == ErrorKind::DimensionTooSmall);
}

TEST_CASE("axioms_suite") {
  const TheoremReport e = axioms_suite(euclid3(), kPlan);
  CHECK(e.passed());
  CHECK(e.classification == "absolutely homogeneous");
  const TheoremReport r = axioms_suite(randers3(), kPlan);
  CHECK(r.passed());
  CHECK(r.classification == "positively homogeneous only");
  CHECK(r.at("absolute_homogeneity").verdict() == Verdict::measured);
  CHECK(r.samples_used == 200);
}

TEST_CASE("identities_suite holds for every family") {
  for (const auto& spec : {euclid3(), randers3(), quartic3(), NormSpec::quartic_reg(4, 0.2)}) {
    const TheoremReport r = identities_suite(spec, kPlan);
    CHECK(r.passed());
    CHECK(r.failed_points == 0);
    CHECK(r.at("christoffel_cartan").residual < 1e-10);
  }
}

TEST_CASE("flatness_scan examples") {
  const TheoremReport e = flatness_scan(euclid3(), kPlan);
  CHECK(e.passed());
  CHECK(e.classification == "flat");
  CHECK(e.at("sup_R_cartan").residual < 1e-8);

  const TheoremReport q = flatness_scan(quartic3(), kPlan);
  CHECK(q.passed());
  CHECK(q.classification == "not flat");
  CHECK(q.at("sup_R_cartan").residual > oracle::quartic_floor::sup_R);
  CHECK(q.at("cross_route_gap").residual < 1e-7);

  const TheoremReport r = flatness_scan(randers3(), kPlan);
  CHECK(r.passed());
  CHECK(r.classification == "not flat");
  CHECK(r.at("sup_R_cartan").verdict() == Verdict::measured);
}

TEST_CASE("theorem3_suite examples") {
  const std::vector<double> rs{0.5, 1.0, 2.0};
  const TheoremReport e = theorem3_suite(euclid3(), rs, plan_of(50));
  CHECK(e.passed());
  CHECK(e.classification == "flat");
  for (const char* r : {"0.5", "1", "2"}) {
    CHECK(e.at(std::string("b_K_deviation_r=") + r).holds);
    CHECK(e.at(std::string("relation_r=") + r).residual < 1e-6);
  }
  CHECK(e.at("c_K_deviation_r0_r=0.5").holds);

  const TheoremReport q = theorem3_suite(quartic3(), rs, plan_of(50));
  CHECK(q.passed());
  CHECK(q.classification == "not flat");
  CHECK_FALSE(q.at("a_flatness_sup").holds);
  CHECK_FALSE(q.at("b_K_deviation_r=1").holds);
  CHECK(q.at("relation_r=1").residual < 1e-6);
  CHECK(q.at("equivalence_a_iff_b").residual == 0.0);

  const TheoremReport r = theorem3_suite(randers3(), rs, plan_of(50));
  CHECK(r.passed());
  CHECK(r.at("relation_r=2").residual < 1e-6);

  CHECK(kind_of([] { theorem3_suite(NormSpec::euclidean(identity(2)), {1.0}, plan_of(5)); }) ==
        ErrorKind::DimensionTooSmall);
  CHECK(kind_of([] { theorem3_suite(quartic3(), {}, plan_of(5)); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { theorem3_suite(quartic3(), {1.0, -2.0}, plan_of(5)); }) == ErrorKind::InvalidSpec);
}

TEST_CASE("theorem3_suite: the equivalence check fails when (a) and (b) disagree") {
  // A loose flatness tolerance makes (a) hold on the quartic norm while (b)
  // still fails, which is exactly what the equivalence check must catch.
  SuiteConfig cfg;
  cfg.tol.set("flat", 1.0);
  const TheoremReport q = theorem3_suite(quartic3(), {1.0}, plan_of(20), cfg);
  CHECK(q.at("a_flatness_sup").holds);
  CHECK_FALSE(q.at("b_K_deviation_r=1").holds);
  CHECK(q.at("equivalence_a_iff_b").verdict() == Verdict::fail);
  CHECK_FALSE(q.passed());
}

TEST_CASE("deicke_suite examples") {
  const TheoremReport e = deicke_suite(euclid3(), kPlan);
  CHECK(e.passed());
  CHECK(e.at("sup_mean_cartan").residual < 1e-10);
  CHECK(e.at("g_variation").residual < 1e-10);
  CHECK(e.classification == "riemannian (constant g)");

  const TheoremReport q = deicke_suite(quartic3(), kPlan);
  CHECK(q.passed());
  CHECK(q.at("sup_mean_cartan").residual > oracle::quartic_floor::sup_A);
  CHECK(q.at("g_variation").residual > oracle::quartic_floor::g_variation);
  CHECK(has_flag(q, "hypothesis failed: vanishing mean Cartan torsion"));
  CHECK(q.classification == "non-riemannian");

  const TheoremReport r = deicke_suite(NormSpec::randers(identity(2), vec({0.5, 0})), kPlan);
  CHECK(r.passed());
  // randers n = 2 circle-grid oracle: max |A| = 0.75, g variation = 2
  CHECK(r.at("sup_mean_cartan").residual > 0.75 / 4.0);
  CHECK(r.at("g_variation").residual > 0.5);
  CHECK(r.classification == "non-riemannian");
}

TEST_CASE("brickell_suite examples and gating") {
  const TheoremReport e = brickell_suite(euclid3(), kPlan);
  CHECK(e.passed());
  CHECK(e.at("homogeneous_and_flat_implies_inner_product").note.empty());
  CHECK(e.classification == "inner product");
  CHECK(e.flags.empty());

  const TheoremReport r = brickell_suite(randers3(), kPlan);
  CHECK(r.passed());
  CHECK(has_flag(r, "hypothesis failed: absolute homogeneity"));
  CHECK_FALSE(r.at("homogeneous_and_flat_implies_inner_product").note.empty());

  const TheoremReport q = brickell_suite(quartic3(), kPlan);
  CHECK(q.passed());
  CHECK(has_flag(q, "hypothesis failed: flatness"));
  CHECK_FALSE(has_flag(q, "hypothesis failed: absolute homogeneity"));
  CHECK(q.classification == "not an inner product");

  CHECK(kind_of([] { brickell_suite(NormSpec::euclidean(identity(2)), plan_of(5)); }) == ErrorKind::DimensionTooSmall);
}

TEST_CASE("brickell_suite: a hypothesis-meeting spec that violates the conclusion fails") {
  // Loosening the flatness tolerance admits the quartic norm into the
  // hypotheses; its varying g must then trip the implication.
  SuiteConfig cfg;
  cfg.tol.set("flat", 1.0);
  const TheoremReport q = brickell_suite(quartic3(), plan_of(50), cfg);
  CHECK(q.at("homogeneous_and_flat_implies_inner_product").verdict() == Verdict::fail);
  CHECK_FALSE(q.passed());
}

TEST_CASE("deicke_suite: gating with a loosened torsion tolerance") {
  SuiteConfig cfg;
  cfg.tol.set("mean_cartan", 10.0);
  const TheoremReport q = deicke_suite(quartic3(), plan_of(50), cfg);
  CHECK(q.at("vanishing_A_implies_constant_g").verdict() == Verdict::fail);
  CHECK_FALSE(q.passed());
}

TEST_CASE("parallel_vector_suite examples") {
  const TheoremReport e = parallel_vector_suite(euclid3(), vec({1, 0, 0}), kPlan);
  CHECK(e.passed());
  CHECK(e.at("parallelism").residual < 1e-10);
  CHECK(e.at("obata_S1").verdict() == Verdict::pass);
  CHECK(e.at("obata_S1").residual < 1e-6);
  CHECK(e.at("parallel_b_implies_inner_product").note.empty());

  const TheoremReport q = parallel_vector_suite(quartic3(), vec({1, 0, 0}), kPlan);
  CHECK(q.passed());
  CHECK(q.at("parallelism").residual > oracle::quartic_floor::parallel);
  CHECK(has_flag(q, "hypothesis failed: parallel b"));
  CHECK(q.at("obata_S1").verdict() == Verdict::measured);

  const TheoremReport r = parallel_vector_suite(randers3(), vec({1, 0, 0}), kPlan);
  CHECK(r.passed());
  CHECK(has_flag(r, "hypothesis failed: absolute homogeneity"));

  CHECK(kind_of([] { parallel_vector_suite(quartic3(), vec({0, 0, 0}), plan_of(5)); }) == ErrorKind::ZeroVector);
  CHECK(kind_of([] { parallel_vector_suite(quartic3(), vec({1, 0}), plan_of(5)); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { parallel_vector_suite(NormSpec::euclidean(identity(2)), vec({1, 0}), plan_of(5)); }) ==
        ErrorKind::DimensionTooSmall);
}

TEST_CASE("theorem1_suite: off-centre round sphere is the model case") {
  const auto spec = NormSpec::euclidean(identity(3));
  const TheoremReport r = theorem1_suite(spec, SurfaceSpec::euclid_sphere(vec({1, 0, 0}), 2.0), kPlan);
  CHECK(r.passed());
  for (const char* name : {"umbilicity", "normal_curvature_part", "H_variation", "gradient_gap", "obata"}) {
    CAPTURE(name);
    CHECK(r.at(name).verdict() == Verdict::pass);
  }
  CHECK(r.at("umbilicity").residual < 1e-8);
  CHECK(r.at("H_variation").residual < 1e-8);
  CHECK(r.at("normal_curvature_part").residual < 1e-10);
  CHECK(r.at("converse_misalignment").residual > 0.1);
  CHECK(r.flags.empty());
}

TEST_CASE("theorem1_suite: level set and translated indicatrix") {
  const auto e = NormSpec::euclidean(identity(3));
  const TheoremReport s1 = theorem1_suite(e, SurfaceSpec::level_set(1.0), kPlan);
  CHECK(s1.passed());
  CHECK(has_flag(s1, "hypothesis failed: surface is a level set"));
  for (const char* name : {"umbilicity", "H_variation", "obata"}) CHECK(s1.at(name).holds);
  CHECK(s1.at("remark_converse").verdict() == Verdict::pass);

  const TheoremReport t = theorem1_suite(quartic3(), SurfaceSpec::translated_indicatrix(vec({0.1, 0, 0}), 1.0), plan_of(50));
  CHECK(t.passed());
  CHECK(has_flag(t, "measurement only: not the euclidean model case"));
  for (const Check& c : t.checks) {
    if (c.name == "failed_points") continue;
    CAPTURE(c.name);
    CHECK(c.verdict() != Verdict::fail);
    if (c.name != "remark_converse") CHECK(c.verdict() == Verdict::measured);
  }
  CHECK(std::isnan(t.at("gradient_gap").residual));
  CHECK(t.at("umbilicity").residual > 1e-4);
}

TEST_CASE("theorem1_suite: the model case fails under an impossible tolerance") {
  SuiteConfig cfg;
  cfg.tol.set("obata", 1e-300);
  const TheoremReport r =
      theorem1_suite(NormSpec::euclidean(identity(3)), SurfaceSpec::euclid_sphere(vec({1, 0, 0}), 2.0), plan_of(10), cfg);
  CHECK(r.at("obata").verdict() == Verdict::fail);
  CHECK_FALSE(r.passed());
}

TEST_CASE("per-point failures are counted, not fatal") {
  // |b| = 1.5 pushes part of the sphere into F < 0, where the metric is
  // indefinite.
  const auto bad = NormSpec::unchecked(3, Family::randers, identity(3), vec({1.5, 0, 0}), 0.0);
  const TheoremReport r = deicke_suite(bad, plan_of(100));
  CHECK(r.failed_points > 0);
  CHECK(r.failed_points < 100);
  CHECK(r.samples_used == 100 - r.failed_points);
  CHECK(static_cast<int>(r.errors.size()) == r.failed_points);
  CHECK(r.at("failed_points").verdict() == Verdict::fail);
  CHECK_FALSE(r.passed());
}

TEST_CASE("reports are deterministic and independent of the thread count") {
  SuiteConfig one, four;
  four.threads = 4;
  const auto a = dump_json(to_json(flatness_scan(quartic3(), plan_of(60), one)));
  const auto b = dump_json(to_json(flatness_scan(quartic3(), plan_of(60), four)));
  const auto c = dump_json(to_json(flatness_scan(quartic3(), plan_of(60), four)));
  CHECK(a == b);
  CHECK(b == c);
  const auto t1 = dump_json(to_json(theorem3_suite(randers3(), {1.0}, plan_of(20), one)));
  const auto t4 = dump_json(to_json(theorem3_suite(randers3(), {1.0}, plan_of(20), four)));
  CHECK(t1 == t4);
}

TEST_CASE("report JSON schema") {
  const auto j = to_json(flatness_scan(euclid3(), plan_of(10)));
  for (const char* key : {"suite", "spec", "plan", "checks", "overall"}) CHECK(j.contains(key));
  CHECK(j["plan"]["seed"] == 7);
  CHECK(j["plan"]["count"] == 10);
  for (const auto& c : j["checks"])
    for (const char* key : {"name", "residual", "tolerance", "verdict"}) CHECK(c.contains(key));
  CHECK(j["overall"] == "pass");
  // 17 significant digits round-trip exactly
  const double x = 0.1 + 0.2;
  CHECK(nlohmann::json::parse(dump_json(nlohmann::json(x))).get<double>() == x);
  CHECK(dump_json(nlohmann::json(std::nan(""))) == "null");
}

TEST_CASE("CSV output") {
  const TheoremReport r = flatness_scan(quartic3(), plan_of(3));
  const std::string csv = to_csv({r});
  CHECK(csv.rfind("suite,sample_index,y0,y1,y2,name,value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(r.samples.size()));
}

TEST_CASE("sample plans are validated") {
  SamplePlan p;
  p.count = 0;
  CHECK(kind_of([&] { flatness_scan(quartic3(), p); }) == ErrorKind::InvalidSpec);
  p = SamplePlan{};
  p.r_min = 1e-4;
  CHECK(kind_of([&] { deicke_suite(quartic3(), p); }) == ErrorKind::InvalidSpec);
}
