#include "mlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace mlab {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::measured: return "measured-only";
  }
  return "unknown";
}

Check Check::upper(std::string name, double residual, double tolerance, bool asserting) {
  Check c{std::move(name), residual, tolerance, Bound::upper, asserting, residual < tolerance, {}};
  return c;
}

Check Check::lower(std::string name, double residual, double tolerance, bool asserting) {
  Check c{std::move(name), residual, tolerance, Bound::lower, asserting, residual > tolerance, {}};
  return c;
}

Check Check::implication(std::string name, bool antecedent, double conclusion_residual, double tolerance,
                         std::string note) {
  Check c{std::move(name), conclusion_residual, tolerance, Bound::implication, true,
          !antecedent || conclusion_residual < tolerance, std::move(note)};
  if (!antecedent && c.note.empty()) c.note = "vacuous: hypothesis not met";
  return c;
}

Verdict Check::verdict() const {
  if (!asserting) return Verdict::measured;
  return holds ? Verdict::pass : Verdict::fail;
}

const Check* TheoremReport::find(std::string_view name) const {
  for (const Check& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

const Check& TheoremReport::at(std::string_view name) const {
  if (const Check* c = find(name)) return *c;
  throw std::out_of_range("no check named '" + std::string(name) + "' in suite " + suite);
}

bool TheoremReport::passed() const {
  for (const Check& c : checks)
    if (c.verdict() == Verdict::fail) return false;
  return true;
}

namespace {

std::string_view bound_name(Check::Bound b) {
  switch (b) {
    case Check::Bound::upper: return "upper";
    case Check::Bound::lower: return "lower";
    case Check::Bound::implication: return "implication";
  }
  return "unknown";
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(std::ostringstream& out, const nlohmann::json& v, int indent, int depth) {
  const auto pad = [&](int d) {
    if (indent > 0) out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ',';
        first = false;
        pad(depth + 1);
        out << nlohmann::json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write_json(out, it.value(), indent, depth + 1);
      }
      pad(depth);
      out << '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out << ',';
        first = false;
        pad(depth + 1);
        write_json(out, item, indent, depth + 1);
      }
      pad(depth);
      out << ']';
      return;
    }
    case nlohmann::json::value_t::number_float: out << format_number(v.get<double>()); return;
    default: out << v.dump(); return;
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& value, int indent) {
  std::ostringstream out;
  write_json(out, value, indent, 0);
  return out.str();
}

nlohmann::json to_json(const TheoremReport& report) {
  nlohmann::json j;
  j["suite"] = report.suite;
  j["spec"] = report.spec;
  j["plan"] = report.plan;
  nlohmann::json checks = nlohmann::json::array();
  for (const Check& c : report.checks) {
    nlohmann::json cj;
    cj["name"] = c.name;
    cj["residual"] = c.residual;
    cj["tolerance"] = c.tolerance;
    cj["bound"] = std::string(bound_name(c.bound));
    cj["verdict"] = std::string(to_string(c.verdict()));
    if (!c.asserting) cj["within_tolerance"] = c.holds;
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  if (!report.classification.empty()) j["classification"] = report.classification;
  j["flags"] = report.flags;
  j["errors"] = report.errors;
  j["samples_used"] = report.samples_used;
  j["failed_points"] = report.failed_points;
  j["overall"] = report.passed() ? "pass" : "fail";
  return j;
}

std::string to_csv(const std::vector<TheoremReport>& reports) {
  std::ostringstream out;
  int width = 0;
  for (const auto& r : reports)
    for (const auto& s : r.samples) width = std::max(width, static_cast<int>(s.point.size()));
  out << "suite,sample_index";
  for (int i = 0; i < width; ++i) out << ",y" << i;
  out << ",name,value\n";
  for (const auto& r : reports) {
    for (const auto& s : r.samples) {
      out << r.suite << ',' << s.index;
      for (int i = 0; i < width; ++i) out << ',' << (i < s.point.size() ? format_number(s.point[i]) : std::string());
      out << ',' << s.name << ',' << format_number(s.value) << '\n';
    }
  }
  return out.str();
}

std::string to_text(const TheoremReport& report) {
  std::ostringstream out;
  out << "suite " << report.suite << " (" << report.spec.value("family", std::string("?")) << ", n="
      << report.spec.value("dim", 0) << ", samples=" << report.samples_used << ")\n";
  char line[256];
  for (const Check& c : report.checks) {
    const char* rel = c.bound == Check::Bound::lower ? ">" : "<";
    std::snprintf(line, sizeof line, "  %-14s %-44s %13.6e %s %-10.3e", std::string(to_string(c.verdict())).c_str(),
                  c.name.c_str(), c.residual, rel, c.tolerance);
    out << line;
    if (!c.note.empty()) out << "  [" << c.note << "]";
    out << '\n';
  }
  if (!report.classification.empty()) out << "  classification: " << report.classification << '\n';
  for (const auto& f : report.flags) out << "  flag: " << f << '\n';
  for (const auto& e : report.errors) out << "  error: " << e << '\n';
  out << "  overall: " << (report.passed() ? "pass" : "fail") << '\n';
  return out.str();
}

}  // namespace mlab
