#include "mlab/sampling.hpp"

#include "mlab/error.hpp"

#include <cmath>
#include <random>
#include <string>

namespace mlab {

namespace {

// Every draw for sample i comes from its own engine seeded by (seed, i), so
// the point stream does not depend on how work is partitioned.
std::mt19937_64 engine_for(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

Vector unit_direction(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (;;) {
    for (int i = 0; i < dim; ++i) v[i] = normal(rng);
    const double len = v.norm();
    if (len > 1e-6) return v / len;
  }
}

}  // namespace

void SamplePlan::validate() const {
  if (count < 1) throw Error(ErrorKind::InvalidSpec, "sample plan count must be >= 1");
  if (!(r_min >= 1e-3)) throw Error(ErrorKind::InvalidSpec, "sample plan r_min must be >= 1e-3");
  if (!(r_max >= r_min)) throw Error(ErrorKind::InvalidSpec, "sample plan needs r_max >= r_min");
}

std::vector<Vector> SamplePlan::points(int dim) const {
  validate();
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  const double log_lo = std::log(r_min);
  const double log_hi = std::log(r_max);
  for (int i = 0; i < count; ++i) {
    auto rng = engine_for(seed, i);
    Vector dir = unit_direction(rng, dim);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double radius = std::exp(log_lo + (log_hi - log_lo) * uniform(rng));
    out.push_back(radius * dir);
  }
  return out;
}

std::vector<Vector> SamplePlan::directions(int dim) const {
  validate();
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    auto rng = engine_for(seed, i);
    out.push_back(unit_direction(rng, dim));
  }
  return out;
}

}  // namespace mlab
