#pragma once

// Verification reports: per-sample results plus exact checks, printable as
// text and as JSON.

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace quadrikit {

struct SampleCheck {
  std::string point;
  std::size_t rejections = 0;
  bool pass = false;
  std::vector<std::pair<std::string, long long>> values;
  std::string detail;
};

struct ExactCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::string operation;
  std::string configuration;
  std::vector<SampleCheck> samples;
  std::vector<ExactCheck> exact;
  std::vector<std::string> notes;

  bool pass() const {
    return std::all_of(samples.begin(), samples.end(), [](const SampleCheck &s) { return s.pass; }) &&
           std::all_of(exact.begin(), exact.end(), [](const ExactCheck &e) { return e.pass; });
  }

  std::string str() const {
    std::ostringstream os;
    os << operation << " [" << configuration << "]: " << (pass() ? "PASS" : "FAIL") << "\n";
    for (const auto &e : exact)
      os << "  exact " << e.name << ": " << (e.pass ? "pass" : "FAIL") << (e.detail.empty() ? "" : " (" + e.detail + ")")
         << "\n";
    for (const auto &s : samples) {
      os << "  sample " << s.point << ": " << (s.pass ? "pass" : "FAIL");
      for (const auto &[k, v] : s.values)
        os << " " << k << "=" << v;
      if (s.rejections)
        os << " rejected=" << s.rejections;
      if (!s.detail.empty())
        os << " (" << s.detail << ")";
      os << "\n";
    }
    for (const auto &n : notes)
      os << "  note: " << n << "\n";
    return os.str();
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["operation"] = operation;
    j["configuration"] = configuration;
    j["pass"] = pass();
    j["exact"] = nlohmann::ordered_json::array();
    for (const auto &e : exact)
      j["exact"].push_back({{"name", e.name}, {"pass", e.pass}, {"detail", e.detail}});
    j["samples"] = nlohmann::ordered_json::array();
    for (const auto &s : samples) {
      nlohmann::ordered_json values = nlohmann::ordered_json::object();
      for (const auto &[k, v] : s.values)
        values[k] = v;
      j["samples"].push_back({{"point", s.point},
                              {"rejections", s.rejections},
                              {"pass", s.pass},
                              {"values", values},
                              {"detail", s.detail}});
    }
    j["notes"] = notes;
    return j;
  }
};

} // namespace quadrikit
