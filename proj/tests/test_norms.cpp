#include "mlab/error.hpp"
#include "mlab/norms.hpp"
#include "mlab/sampling.hpp"
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

}  // namespace

TEST_CASE("evaluate: closed forms at simple points") {
  CHECK(evaluate(NormSpec::euclidean(identity(2)), vec({3, 4})) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(evaluate(NormSpec::randers(identity(2), vec({0.5, 0})), vec({1, 0})) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(evaluate(NormSpec::quartic_reg(3, 0.2), vec({1, 0, 0})) ==
        doctest::Approx(std::pow(1.2, 0.25)).epsilon(1e-15));
}

TEST_CASE("evaluate: rejects points in the exclusion ball and wrong sizes") {
  const auto spec = NormSpec::euclidean(identity(2));
  CHECK(kind_of([&] { evaluate(spec, vec({1e-9, 0})); }) == ErrorKind::DegeneratePoint);
  CHECK(kind_of([&] { evaluate(spec, vec({1, 0, 0})); }) == ErrorKind::DimensionMismatch);
  CHECK_NOTHROW(evaluate(spec, vec({2e-8, 0})));
}

TEST_CASE("evaluate: deterministic and positively homogeneous for every family") {
  std::mt19937_64 rng(11);
  const std::vector<NormSpec> specs = {NormSpec::euclidean(oracle::random_spd(3, rng)),
                                       NormSpec::randers(identity(3), vec({0.3, -0.2, 0.4})),
                                       NormSpec::quartic_reg(3, 0.2)};
  SamplePlan plan;
  plan.count = 100;
  for (const auto& spec : specs) {
    for (const Vector& y : plan.points(3)) {
      const double f = evaluate(spec, y);
      CHECK(f > 0.0);
      CHECK(evaluate(spec, y) == f);
      for (double lambda : {0.1, 3.0, 50.0}) CHECK(std::abs(evaluate(spec, lambda * y) - lambda * f) <= 1e-10 * lambda * f);
    }
  }
}

TEST_CASE("NormSpec invariants") {
  CHECK(kind_of([] { NormSpec::euclidean(identity(1)); }) == ErrorKind::InvalidSpec);
  Matrix asym = identity(2);
  asym(0, 1) = 0.3;
  CHECK(kind_of([&] { NormSpec::euclidean(asym); }) == ErrorKind::InvalidSpec);
  Matrix indefinite = identity(2);
  indefinite(1, 1) = -1.0;
  CHECK(kind_of([&] { NormSpec::euclidean(indefinite); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { NormSpec::randers(identity(2), vec({1.0, 0.0})); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { NormSpec::randers(identity(2), vec({0.5})); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { NormSpec::quartic_reg(3, 0.0); }) == ErrorKind::InvalidSpec);
  CHECK_NOTHROW(NormSpec::randers(identity(2), vec({0.99, 0.0})));
  // drift condition is measured in the A^-1 norm
  Matrix wide = identity(2);
  wide(0, 0) = 4.0;
  CHECK_NOTHROW(NormSpec::randers(wide, vec({1.5, 0.0})));
}

TEST_CASE("check_axioms: euclidean identity has g = I") {
  SamplePlan plan;
  plan.count = 100;
  const AxiomReport r = check_axioms(NormSpec::euclidean(identity(3)), plan);
  CHECK(r.positivity_ok);
  CHECK(r.samples_used == 100);
  CHECK(std::abs(r.min_metric_eigenvalue - 1.0) < 1e-10);
  CHECK(r.homogeneity_residual < 1e-12);
  CHECK(r.abs_homogeneity_residual < 1e-12);
}

TEST_CASE("check_axioms: quartic_reg is strongly convex on the plan") {
  const AxiomReport r = check_axioms(NormSpec::quartic_reg(3, 0.2), SamplePlan{});
  CHECK(r.positivity_ok);
  CHECK(r.samples_used == 200);
  CHECK(r.min_metric_eigenvalue > 0.0);
  CHECK(r.homogeneity_residual < kTolHomogeneity);
}

TEST_CASE("check_axioms: randers with |b| = 1.5 loses strong convexity") {
  // Closed-form Randers metric on a dense circle grid. det g = (F/alpha)^3 det A
  // and g(y, y) = F^2, so g is indefinite exactly where F < 0.
  const Vector b = vec({1.5, 0.0});
  double grid_min = 1e300;
  for (int k = 0; k < 720; ++k) {
    const double t = 2.0 * M_PI * k / 720.0;
    const Vector y = vec({std::cos(t), std::sin(t)});
    const Matrix g = oracle::randers_metric(identity(2), b, y);
    const double lo = Eigen::SelfAdjointEigenSolver<Matrix>(g).eigenvalues().minCoeff();
    grid_min = std::min(grid_min, lo);
    const double F = 1.0 + b.dot(y);
    if (std::abs(F) > 1e-3) CHECK((lo < 0.0) == (F < 0.0));
  }
  REQUIRE(grid_min < 0.0);

  const auto spec = NormSpec::unchecked(2, Family::randers, identity(2), b, 0.0);
  SamplePlan plan;
  plan.count = 200;
  const AxiomReport r = check_axioms(spec, plan.points(2));
  CHECK_FALSE(r.positivity_ok);
  CHECK(r.min_metric_eigenvalue < 0.0);
}

TEST_CASE("is_absolutely_homogeneous") {
  SamplePlan plan;
  const auto e = is_absolutely_homogeneous(NormSpec::euclidean(identity(3)), plan);
  CHECK(e.holds);
  CHECK(e.residual < 1e-12);
  const auto q = is_absolutely_homogeneous(NormSpec::quartic_reg(3, 0.2), plan);
  CHECK(q.holds);
  CHECK(q.residual < 1e-12);
  const auto spec = NormSpec::randers(identity(2), vec({0.5, 0}));
  // |F(-y) - F(y)| / F(y): 1/1.5 at y = (1,0), 1/0.5 at y = (-1,0)
  const std::vector<Vector> forward = {vec({1, 0}), vec({0, 1})};
  const auto r = is_absolutely_homogeneous(spec, forward);
  CHECK_FALSE(r.holds);
  CHECK(r.residual == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  const std::vector<Vector> backward = {vec({-1, 0})};
  CHECK(is_absolutely_homogeneous(spec, backward).residual == doctest::Approx(2.0).epsilon(1e-14));
  const auto sampled = is_absolutely_homogeneous(spec, plan);
  CHECK_FALSE(sampled.holds);
  CHECK(sampled.residual >= 1.0);
}

TEST_CASE("parse_spec: valid documents") {
  const NormSpec e = parse_spec(R"({"dim":2,"family":"euclidean","A":[[1,0],[0,1]]})");
  CHECK(e.dim == 2);
  CHECK(e.family == Family::euclidean);
  CHECK(e.A.isApprox(identity(2)));
  const NormSpec r = parse_spec(R"({"dim":2,"family":"randers","A":[[1,0],[0,1]],"b":[0.5,0]})");
  CHECK(r.b[0] == 0.5);
  const NormSpec q = parse_spec(R"({"dim":3,"family":"quartic_reg","eps":0.2})");
  CHECK(q.eps == 0.2);
  const NormSpec round = parse_spec(to_json(r).dump());
  CHECK(round.family == Family::randers);
  CHECK(round.b.isApprox(r.b));
}

TEST_CASE("parse_spec: errors name the problem") {
  CHECK(kind_of([] { parse_spec(R"({"dim":2,"family":"randers","A":[[1,0],[0,1]],"b":[2,0]})"); }) ==
        ErrorKind::InvalidSpec);
  CHECK(kind_of([] { parse_spec(R"({"dim":1,"family":"euclidean","A":[[1]]})"); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { parse_spec("{not json"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_spec(R"({"dim":2,"family":"euclidean"})"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_spec(R"({"dim":2,"family":"hyperbolic"})"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_spec(R"({"dim":2,"family":"euclidean","A":[[1,0],[0,1]],"colour":1})"); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { parse_spec(R"({"dim":3,"family":"quartic_reg","eps":0.2,"b":[1,0,0]})"); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] { parse_spec(R"({"dim":"2","family":"euclidean","A":[[1,0],[0,1]]})"); }) == ErrorKind::ParseError);
  try {
    parse_spec(R"({"dim":2,"family":"randers","A":[[1,0],[0,1]],"b":[2,0]})");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("drift") != std::string::npos);
  }
  try {
    parse_spec(R"({"dim":2,"family":"euclidean","A":[[1,0],[0,-1]]})");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("positive definite") != std::string::npos);
  }
}

TEST_CASE("SamplePlan: deterministic, admissible, validated") {
  SamplePlan plan;
  const auto a = plan.points(4);
  const auto b = plan.points(4);
  REQUIRE(a.size() == 200);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(a[i].norm() >= plan.r_min * (1 - 1e-12));
    CHECK(a[i].norm() <= plan.r_max * (1 + 1e-12));
  }
  for (const Vector& u : plan.directions(3)) CHECK(std::abs(u.norm() - 1.0) < 1e-14);
  SamplePlan other = plan;
  other.seed = 8;
  CHECK(other.points(4)[0] != a[0]);
  SamplePlan bad;
  bad.count = 0;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidSpec);
  bad = SamplePlan{};
  bad.r_min = 1e-4;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidSpec);
  bad = SamplePlan{};
  bad.r_max = 0.1;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::InvalidSpec);
}
