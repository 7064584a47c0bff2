#pragma once

#include "mlab/hypersurfaces.hpp"
#include "mlab/norms.hpp"
#include "mlab/report.hpp"
#include "mlab/sampling.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mlab {

/// Named tolerances used by the suites. Every name has a documented default;
/// overrides of unknown names are rejected.
///
///   flat            1e-8   sup |R| below which the space counts as flat
///   cross_route     1e-7   curvature route gap, relative to 1 + |R|
///   eq23            1e-10  |G - C^/F|, relative to 1 + |G|
///   euler           1e-10  C.y and G.y relative to 1 + |C|, 1 + |G|; g(y,y) - F^2
///                          relative to F^2; g(2y) - g(y) relative to 1 + |g|
///   homogeneity     1e-10  |F(ly) - lF(y)| / F(y)
///   abs_homog       1e-9   |F(-y) - F(y)| / F(y)
///   mean_cartan     1e-10  sup |A|
///   g_variation     1e-10  max entrywise spread of g over the samples
///   relation        1e-6   |K - K^ - 1/r^2|
///   constant_K      1e-6   |K - 1/r^2| on level sets
///   umbilic         1e-6   umbilicity deviation, relative to 1 + |H|
///   mean_curvature  1e-6   |H - 1/r| and H spread
///   normal_part     1e-10  |ĝ(R(e_a,e_b)e_c, nu)|
///   gradient        1e-6   closed-form vs difference-route gradient gap
///   obata           1e-6   Obata Hessian residual
///   parallel        1e-10  sup |G(., b)|
///   alignment       1e-9   normal/radial misalignment and F spread
class Tolerances {
 public:
  Tolerances();

  double operator[](std::string_view name) const;
  /// Throws Error(InvalidSpec) for an unknown name or a non-positive value.
  void set(const std::string& name, double value);

  static const std::map<std::string, double>& defaults();

 private:
  std::map<std::string, double> values_;
};

struct SuiteConfig {
  Tolerances tol;
  unsigned threads = 1;
};

nlohmann::json to_json(const SamplePlan& plan);

TheoremReport axioms_suite(const NormSpec& spec, const SamplePlan& plan, const SuiteConfig& cfg = {});

/// Pointwise identities: Christoffel/Cartan identity and the Euler relations.
TheoremReport identities_suite(const NormSpec& spec, const SamplePlan& plan, const SuiteConfig& cfg = {});

TheoremReport flatness_scan(const NormSpec& spec, const SamplePlan& plan, const SuiteConfig& cfg = {});

TheoremReport theorem3_suite(const NormSpec& spec, const std::vector<double>& r_list, const SamplePlan& plan,
                             const SuiteConfig& cfg = {});

TheoremReport deicke_suite(const NormSpec& spec, const SamplePlan& plan, const SuiteConfig& cfg = {});

TheoremReport brickell_suite(const NormSpec& spec, const SamplePlan& plan, const SuiteConfig& cfg = {});

TheoremReport parallel_vector_suite(const NormSpec& spec, const Vector& b, const SamplePlan& plan,
                                    const SuiteConfig& cfg = {});

TheoremReport theorem1_suite(const NormSpec& spec, const SurfaceSpec& surface, const SamplePlan& plan,
                             const SuiteConfig& cfg = {});

/// Coefficient pairs (in the tangent frame basis) used for sampled
/// sectional curvatures: every index pair, topped up with rotated copies of
/// the first pair until there are at least `minimum`.
std::vector<std::pair<Vector, Vector>> frame_planes(int tangent_dim, int minimum = 3);

}  // namespace mlab
