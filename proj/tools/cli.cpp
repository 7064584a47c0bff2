#include "cli.hpp"

#include "mlab/error.hpp"
#include "mlab/hypersurfaces.hpp"
#include "mlab/norms.hpp"
#include "mlab/report.hpp"
#include "mlab/tensors.hpp"
#include "mlab/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

namespace mlab::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string norm_path;
  std::string surface_path;
  SamplePlan plan;
  std::vector<std::string> tol_overrides;
  std::string out_path;
  std::string format = "json";
  bool no_timestamp = false;
  std::string at;
  std::string r_list = "0.5,1,2";
  std::string b;
};

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + item + "' is not a number");
    }
    if (used != item.size()) throw UsageError(flag + ": '" + item + "' is not a number");
    values.push_back(v);
  }
  if (values.empty()) throw UsageError(flag + ": expected comma-separated numbers");
  return values;
}

Vector parse_point(const std::string& text, const std::string& flag, int dim) {
  const std::vector<double> v = parse_list(text, flag);
  if (static_cast<int>(v.size()) != dim) {
    throw UsageError(flag + ": expected " + std::to_string(dim) + " components, got " + std::to_string(v.size()));
  }
  return Eigen::Map<const Vector>(v.data(), dim);
}

SuiteConfig suite_config(const RunConfig& rc) {
  SuiteConfig cfg;
  for (const std::string& item : rc.tol_overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--tol: expected NAME=VALUE, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const std::vector<double> value = parse_list(item.substr(eq + 1), "--tol " + name);
    if (value.size() != 1) throw UsageError("--tol " + name + ": expected a single value");
    cfg.tol.set(name, value.front());
  }
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MLAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1) throw UsageError("MLAB_THREADS must be a positive integer");
    threads = std::min<unsigned>(threads, static_cast<unsigned>(cap));
  }
  cfg.threads = threads;
  return cfg;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json tensor_json(const Tensor3& t) {
  const int n = t.dim();
  json out = json::array();
  for (int i = 0; i < n; ++i) {
    json a = json::array();
    for (int j = 0; j < n; ++j) {
      json b = json::array();
      for (int k = 0; k < n; ++k) b.push_back(t(i, j, k));
      a.push_back(std::move(b));
    }
    out.push_back(std::move(a));
  }
  return out;
}

json tensor_json(const Tensor4& t) {
  const int n = t.dim();
  json out = json::array();
  for (int i = 0; i < n; ++i) {
    json a = json::array();
    for (int j = 0; j < n; ++j) {
      json b = json::array();
      for (int k = 0; k < n; ++k) {
        json c = json::array();
        for (int l = 0; l < n; ++l) c.push_back(t(i, j, k, l));
        b.push_back(std::move(c));
      }
      a.push_back(std::move(b));
    }
    out.push_back(std::move(a));
  }
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

json vector_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::string tensors_text(const json& doc) {
  std::ostringstream out;
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "% .10e", v);
    return std::string(buf);
  };
  out << "point:";
  for (const auto& v : doc["point"]) out << ' ' << num(v.get<double>());
  out << "\nF: " << num(doc["F"].get<double>()) << "\ng:\n";
  for (const auto& row : doc["g"]) {
    out << ' ';
    for (const auto& v : row) out << ' ' << num(v.get<double>());
    out << '\n';
  }
  auto rank3 = [&](const char* name, const json& t) {
    out << name << ":\n";
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < t[i].size(); ++j) {
        out << "  [" << i << "][" << j << "]";
        for (const auto& v : t[i][j]) out << ' ' << num(v.get<double>());
        out << '\n';
      }
  };
  rank3("C_ijk", doc["C"]);
  out << "A:";
  for (const auto& v : doc["A"]) out << ' ' << num(v.get<double>());
  out << '\n';
  rank3("gamma^i_jk", doc["gamma"]);
  out << "R^i_jkl (nonzero entries):\n";
  const json& R = doc["R"];
  for (std::size_t i = 0; i < R.size(); ++i)
    for (std::size_t j = 0; j < R.size(); ++j)
      for (std::size_t k = 0; k < R.size(); ++k)
        for (std::size_t l = 0; l < R.size(); ++l) {
          const double v = R[i][j][k][l].get<double>();
          if (std::abs(v) > 1e-14) out << "  [" << i << "][" << j << "][" << k << "][" << l << "] " << num(v) << '\n';
        }
  out << "eq23_residual: " << num(doc["eq23_residual"].get<double>()) << '\n';
  return out.str();
}

void emit(const RunConfig& rc, const std::string& text, std::ostream& out) {
  if (rc.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(rc.out_path, std::ios::binary);
  if (!file) throw UsageError("--out: cannot open '" + rc.out_path + "'");
  file << text;
}

int run_tensors(const RunConfig& rc, const NormSpec& spec, std::ostream& out) {
  if (rc.at.empty()) throw UsageError("tensors: --at is required");
  const Vector y = parse_point(rc.at, "--at", spec.dim);
  const PointGeometry geo = PointGeometry::at(spec, y, 4);
  json doc;
  doc["spec"] = to_json(spec);
  doc["point"] = vector_json(y);
  doc["F"] = geo.norm_value();
  doc["g"] = matrix_json(geo.metric().g);
  doc["C"] = tensor_json(geo.cartan().lower);
  doc["A"] = vector_json(geo.cartan().mean);
  doc["gamma"] = tensor_json(geo.christoffel());
  doc["R"] = tensor_json(geo.curvature_cartan().R);
  doc["eq23_residual"] = geo.christoffel_cartan_residual();
  if (!rc.no_timestamp) doc["generated_at"] = timestamp();
  if (rc.format == "text") emit(rc, tensors_text(doc), out);
  else if (rc.format == "json") emit(rc, dump_json(doc) + "\n", out);
  else throw UsageError("tensors: --format csv is not available for tensor output");
  return kExitPass;
}

struct Battery {
  std::vector<TheoremReport> reports;
  std::vector<std::string> skipped;
};

Battery run_suites(const RunConfig& rc, const NormSpec& spec, const SuiteConfig& cfg) {
  Battery bat;
  const std::string& cmd = rc.command;
  const bool all = cmd == "all";
  std::optional<SurfaceSpec> surface;
  if (!rc.surface_path.empty()) surface = load_surface(rc.surface_path, spec);
  const std::vector<double> r_list = parse_list(rc.r_list, "--r");
  std::optional<Vector> b;
  if (!rc.b.empty()) b = parse_point(rc.b, "--b", spec.dim);

  auto needs_3 = [&](const char* suite) {
    if (spec.dim >= 3) return true;
    if (!all) throw Error(ErrorKind::DimensionTooSmall, std::string(suite) + " needs n >= 3");
    bat.skipped.push_back(std::string(suite) + ": needs n >= 3");
    return false;
  };

  if (all || cmd == "axioms") bat.reports.push_back(axioms_suite(spec, rc.plan, cfg));
  if (all) bat.reports.push_back(identities_suite(spec, rc.plan, cfg));
  if (all || cmd == "flatness") bat.reports.push_back(flatness_scan(spec, rc.plan, cfg));
  if ((all || cmd == "theorem3") && needs_3("theorem3")) bat.reports.push_back(theorem3_suite(spec, r_list, rc.plan, cfg));
  if (all || cmd == "deicke") bat.reports.push_back(deicke_suite(spec, rc.plan, cfg));
  if ((all || cmd == "brickell") && needs_3("brickell")) bat.reports.push_back(brickell_suite(spec, rc.plan, cfg));
  if (all || cmd == "parallel") {
    if (!b) {
      if (!all) throw UsageError("parallel: --b is required");
      b = Vector::Unit(spec.dim, 0);
    }
    if (needs_3("parallel")) bat.reports.push_back(parallel_vector_suite(spec, *b, rc.plan, cfg));
  }
  if (all || cmd == "theorem1") {
    if (!surface) {
      if (!all) throw UsageError("theorem1: --surface is required");
      surface = SurfaceSpec::level_set(1.0);
    }
    if (spec.dim >= 3 || !all) {
      bat.reports.push_back(theorem1_suite(spec, *surface, rc.plan, cfg));
    } else {
      bat.skipped.push_back("theorem1: needs n >= 3");
    }
  }
  return bat;
}

int run_command(const RunConfig& rc, std::ostream& out) {
  if (rc.norm_path.empty()) throw UsageError("--norm is required");
  const NormSpec spec = load_spec(rc.norm_path);
  rc.plan.validate();
  const SuiteConfig cfg = suite_config(rc);
  if (rc.command == "tensors") return run_tensors(rc, spec, out);

  const Battery bat = run_suites(rc, spec, cfg);
  const bool pass = std::all_of(bat.reports.begin(), bat.reports.end(), [](const auto& r) { return r.passed(); });

  std::string text;
  if (rc.format == "csv") {
    text = to_csv(bat.reports);
  } else if (rc.format == "text") {
    for (const auto& r : bat.reports) text += to_text(r);
    for (const auto& s : bat.skipped) text += "skipped: " + s + "\n";
    if (rc.command == "all") text += std::string("overall: ") + (pass ? "pass" : "fail") + "\n";
  } else {
    json doc;
    if (rc.command == "all") {
      doc["reports"] = json::array();
      for (const auto& r : bat.reports) doc["reports"].push_back(to_json(r));
      doc["skipped"] = bat.skipped;
      doc["overall"] = pass ? "pass" : "fail";
    } else {
      doc = to_json(bat.reports.front());
    }
    if (!rc.no_timestamp) doc["generated_at"] = timestamp();
    text = dump_json(doc) + "\n";
  }
  emit(rc, text, out);
  return pass ? kExitPass : kExitFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Minkowski-norm geometry toolkit", "mlab"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--norm", rc.norm_path, "norm-spec JSON file");
  app.add_option("--surface", rc.surface_path, "surface-spec JSON file");
  app.add_option("--seed", rc.plan.seed, "sampling seed");
  app.add_option("--count", rc.plan.count, "number of samples")->check(CLI::PositiveNumber);
  app.add_option("--rmin", rc.plan.r_min, "smallest sample radius");
  app.add_option("--rmax", rc.plan.r_max, "largest sample radius");
  app.add_option("--tol", rc.tol_overrides, "tolerance override NAME=VALUE (repeatable)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--out", rc.out_path, "write the report here instead of stdout");
  app.add_option("--format", rc.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--no-timestamp", rc.no_timestamp, "omit generated_at from reports");

  app.add_subcommand("axioms", "Minkowski-norm axioms and absolute homogeneity");
  app.add_subcommand("tensors", "g, C, A, gamma, R and the Christoffel/Cartan residual at a point")
      ->add_option("--at", rc.at, "comma-separated point")
      ->required();
  app.add_subcommand("flatness", "curvature scan through both routes");
  app.add_subcommand("theorem3", "level-set curvature relation")->add_option("--r", rc.r_list, "comma-separated radii");
  app.add_subcommand("deicke", "mean Cartan torsion versus constancy of g");
  app.add_subcommand("brickell", "absolute homogeneity and flatness versus inner product");
  app.add_subcommand("parallel", "parallel vector field test")->add_option("--b", rc.b, "comma-separated vector");
  app.add_subcommand("theorem1", "totally umbilical hypersurface chain");
  app.add_subcommand("all", "full suite battery");
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  rc.command = app.get_subcommands().front()->get_name();

  try {
    return run_command(rc, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace mlab::cli
