#include "mlab/norms.hpp"

#include "mlab/error.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace mlab {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::euclidean: return "euclidean";
    case Family::randers: return "randers";
    case Family::quartic_reg: return "quartic_reg";
  }
  return "unknown";
}

NormSpec NormSpec::euclidean(Matrix a) {
  const int dim = static_cast<int>(a.rows());
  NormSpec s = unchecked(dim, Family::euclidean, std::move(a), Vector(), 0.0);
  s.validate();
  return s;
}

NormSpec NormSpec::randers(Matrix a, Vector drift) {
  const int dim = static_cast<int>(a.rows());
  NormSpec s = unchecked(dim, Family::randers, std::move(a), std::move(drift), 0.0);
  s.validate();
  return s;
}

NormSpec NormSpec::quartic_reg(int dim, double eps) {
  NormSpec s = unchecked(dim, Family::quartic_reg, Matrix(), Vector(), eps);
  s.validate();
  return s;
}

NormSpec NormSpec::unchecked(int dim, Family family, Matrix a, Vector drift, double eps) {
  NormSpec s;
  s.dim = dim;
  s.family = family;
  s.A = std::move(a);
  s.b = std::move(drift);
  s.eps = eps;
  return s;
}

void NormSpec::validate() const {
  auto fail = [](const std::string& why) { throw Error(ErrorKind::InvalidSpec, why); };
  if (dim < 2) fail("dimension must be >= 2");

  if (family == Family::euclidean || family == Family::randers) {
    if (A.rows() != dim || A.cols() != dim) fail("A must be dim x dim");
    if (!A.allFinite()) fail("A has non-finite entries");
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) fail("A not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(A, Eigen::EigenvaluesOnly);
    if (!(eig.eigenvalues().minCoeff() > 0.0)) fail("A not positive definite");
  }
  if (family == Family::randers) {
    if (b.size() != dim) fail("randers drift b must have dim entries");
    if (!b.allFinite()) fail("randers drift has non-finite entries");
    const double drift2 = b.dot(A.ldlt().solve(b));
    if (!(drift2 < 1.0)) fail("randers drift too large (b'A^-1 b >= 1)");
  }
  if (family == Family::quartic_reg) {
    if (!(eps > 0.0) || !std::isfinite(eps)) fail("quartic_reg requires eps > 0");
  }
}

void require_admissible(const NormSpec& spec, const Vector& y) {
  if (y.size() != spec.dim) {
    throw Error(ErrorKind::DimensionMismatch,
                "point has " + std::to_string(y.size()) + " components, spec dim is " + std::to_string(spec.dim));
  }
  if (!y.allFinite() || !(y.norm() >= kExclusionRadius)) {
    throw Error(ErrorKind::DegeneratePoint, "point inside the exclusion ball around the origin");
  }
}

double evaluate(const NormSpec& spec, const Vector& y) {
  require_admissible(spec, y);
  switch (spec.family) {
    case Family::euclidean: return std::sqrt(y.dot(spec.A * y));
    case Family::randers: return std::sqrt(y.dot(spec.A * y)) + spec.b.dot(y);
    case Family::quartic_reg: {
      const double s = y.squaredNorm();
      const double quartic = y.array().square().square().sum();
      return std::sqrt(std::sqrt(s * s + spec.eps * quartic));
    }
  }
  throw Error(ErrorKind::InvalidSpec, "unknown family");
}

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& why) { throw Error(ErrorKind::ParseError, why); }

double as_number(const json& j, const std::string& what) {
  if (!j.is_number()) parse_fail(what + " must be a number");
  return j.get<double>();
}

Matrix as_matrix(const json& j) {
  if (!j.is_array() || j.empty()) parse_fail("A must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  Matrix m;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array()) parse_fail("A rows must be arrays");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      m.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      parse_fail("A rows have unequal lengths");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = as_number(row[static_cast<std::size_t>(c)], "A entry");
  }
  return m;
}

Vector as_vector(const json& j, const std::string& what) {
  if (!j.is_array()) parse_fail(what + " must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = as_number(j[i], what + " entry");
  return v;
}

}  // namespace

NormSpec parse_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_fail("norm spec must be a JSON object");

  static const std::set<std::string> known = {"dim", "family", "A", "b", "eps"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) parse_fail("unknown field '" + key + "'");
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) parse_fail("dim must be an integer");
  if (!doc.contains("family") || !doc["family"].is_string()) parse_fail("family must be a string");

  const int dim = doc["dim"].get<int>();
  const std::string family = doc["family"].get<std::string>();

  auto require = [&](const char* key) {
    if (!doc.contains(key)) parse_fail(family + " spec requires field '" + key + "'");
  };
  auto forbid = [&](const char* key) {
    if (doc.contains(key)) parse_fail(family + " spec does not take field '" + key + "'");
  };

  NormSpec spec;
  if (family == "euclidean") {
    require("A");
    forbid("b");
    forbid("eps");
    spec = NormSpec::unchecked(dim, Family::euclidean, as_matrix(doc["A"]), Vector(), 0.0);
  } else if (family == "randers") {
    require("A");
    require("b");
    forbid("eps");
    spec = NormSpec::unchecked(dim, Family::randers, as_matrix(doc["A"]), as_vector(doc["b"], "b"), 0.0);
  } else if (family == "quartic_reg") {
    require("eps");
    forbid("A");
    forbid("b");
    spec = NormSpec::unchecked(dim, Family::quartic_reg, Matrix(), Vector(), as_number(doc["eps"], "eps"));
  } else {
    parse_fail("unknown family '" + family + "'");
  }
  spec.validate();
  return spec;
}

NormSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open norm spec '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

nlohmann::json to_json(const NormSpec& spec) {
  json j;
  j["dim"] = spec.dim;
  j["family"] = std::string(to_string(spec.family));
  if (spec.family != Family::quartic_reg) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < spec.A.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < spec.A.cols(); ++c) row.push_back(spec.A(r, c));
      rows.push_back(row);
    }
    j["A"] = rows;
  }
  if (spec.family == Family::randers) {
    json drift = json::array();
    for (Eigen::Index i = 0; i < spec.b.size(); ++i) drift.push_back(spec.b[i]);
    j["b"] = drift;
  }
  if (spec.family == Family::quartic_reg) j["eps"] = spec.eps;
  return j;
}

}  // namespace mlab
