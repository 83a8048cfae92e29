#include "gwt/report.hpp"

#include <cmath>
#include <sstream>

#include "gwt/text.hpp"
#include "json.hpp"

namespace gwt {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string witness_text(const Witness& w) {
  std::string out;
  for (const auto& [k, v] : w) out += (out.empty() ? "" : ", ") + k + "=" + v;
  return out;
}

}  // namespace

std::string report_text(const CheckReport& r, const std::string& suite) {
  std::ostringstream os;
  std::size_t passed = 0;
  os << "suite " << suite << "\n";
  for (const CheckResult& c : r.results) {
    if (c.verdict != Verdict::fail) ++passed;
    std::string id = c.id;
    id.resize(std::max<std::size_t>(id.size(), 9), ' ');
    os << id << ' ' << (c.verdict == Verdict::fail ? "FAIL" : to_string(c.verdict));
    if (c.vacuous) os << " (vacuous)";
    os << "  checked " << c.checked;
    if (c.coverage < 1.0) os << "  coverage " << format_double(c.coverage);
    if (c.max_residual > 0) os << "  residual " << format_double(c.max_residual);
    if (c.extreme) os << "  min production " << format_double(*c.extreme);
    os << '\n';
    if (c.witness) os << "    witness: " << witness_text(*c.witness) << '\n';
    for (const auto& n : c.notes) os << "    note: " << n << '\n';
    for (const BoundSeries& b : c.bounds) {
      os << "    " << b.name << ":";
      for (double v : b.values) os << ' ' << format_double(v);
      os << '\n';
    }
  }
  os << passed << '/' << r.results.size() << " checks pass\n";
  return os.str();
}

std::string report_json(const CheckReport& r, const Tolerance& tol, const std::string& suite) {
  Json j;
  j["schema"] = kReportSchema;
  j["suite"] = suite;
  j["pass"] = r.pass();
  j["tolerance"] = {{"balance", tol.eps_balance}, {"inequality", tol.eps_ineq}};
  Json results = Json::array();
  for (const CheckResult& c : r.results) {
    Json e;
    e["id"] = c.id;
    e["verdict"] = to_string(c.verdict);
    e["vacuous"] = c.vacuous;
    e["checked"] = c.checked;
    e["coverage"] = number(c.coverage);
    e["max_residual"] = number(c.max_residual);
    e["extreme"] = c.extreme ? number(*c.extreme) : Json(nullptr);
    if (c.witness) {
      Json w = Json::array();
      for (const auto& [k, v] : *c.witness) w.push_back({{"key", k}, {"value", v}});
      e["witness"] = w;
    } else {
      e["witness"] = nullptr;
    }
    e["notes"] = c.notes;
    Json bounds = Json::array();
    for (const BoundSeries& b : c.bounds) {
      Json values = Json::array();
      for (double v : b.values) values.push_back(number(v));
      bounds.push_back({{"name", b.name}, {"values", values}, {"attained_by", b.attained_by}});
    }
    e["bounds"] = bounds;
    results.push_back(e);
  }
  j["results"] = results;
  return j.dump(2) + "\n";
}

std::string search_text(const SearchResult& s, const std::string& target) {
  std::ostringstream os;
  os << "target " << target << ": " << to_string(s.outcome) << " (" << s.examined << " of "
     << s.family_size << " candidates examined)\n";
  for (const auto& l : s.certificate) os << "  " << l << '\n';
  if (s.witness) {
    for (const auto& l : s.witness->certificate) os << "  " << l << '\n';
  }
  return os.str();
}

std::string search_json(const SearchResult& s, const std::string& target) {
  Json j;
  j["schema"] = kReportSchema;
  j["target"] = target;
  j["outcome"] = to_string(s.outcome);
  j["examined"] = s.examined;
  j["family_size"] = s.family_size;
  Json rejected = Json::array();
  for (const auto& [why, n] : s.rejected) rejected.push_back({{"reason", why}, {"count", n}});
  j["rejected"] = rejected;
  j["certificate"] = s.certificate;
  j["witness"] = s.witness ? Json(s.witness->certificate) : Json(nullptr);
  return j.dump(2) + "\n";
}

}  // namespace gwt
