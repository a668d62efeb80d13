#pragma once

// Shared report and error types used by every checker in the library.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace rcat {

using json = nlohmann::json;

/// Structurally bad input: unknown ids, duplicates, ill-typed data.
/// The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A law that is a theorem failed on validated input. This is never a
/// property of the data; it means the implementation itself is wrong.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

enum class Status { pass, fail, not_applicable, input_error };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::not_applicable: return "not-applicable";
    case Status::input_error: return "input-error";
  }
  return "?";
}

/// One violated law together with the witness bindings that exhibit it.
struct Violation {
  std::string law;
  std::vector<std::pair<std::string, std::string>> witness;  // name -> id

  friend bool operator<(const Violation& a, const Violation& b) {
    return std::tie(a.law, a.witness) < std::tie(b.law, b.witness);
  }
  friend bool operator==(const Violation& a, const Violation& b) {
    return a.law == b.law && a.witness == b.witness;
  }
};

struct CheckReport {
  std::string check;
  Status status = Status::pass;
  std::vector<Violation> violations;
  std::map<std::string, std::string> truncation;  // shape bounds in effect
  std::vector<std::string> notes;                 // e.g. not-applicable detail
  std::vector<CheckReport> sub;                   // per-condition subreports

  bool passed() const {
    return status == Status::pass || status == Status::not_applicable;
  }

  void add(std::string law,
           std::vector<std::pair<std::string, std::string>> witness) {
    violations.push_back({std::move(law), std::move(witness)});
  }

  /// Sorts violations/notes and recomputes pass/fail from them.
  /// not-applicable and input-error are preserved.
  CheckReport& finalize() {
    std::sort(violations.begin(), violations.end());
    violations.erase(std::unique(violations.begin(), violations.end()),
                     violations.end());
    std::sort(notes.begin(), notes.end());
    for (auto& r : sub) r.finalize();
    if (status != Status::input_error && status != Status::not_applicable) {
      bool bad = !violations.empty();
      for (const auto& r : sub)
        if (!r.passed()) bad = true;
      status = bad ? Status::fail : Status::pass;
    }
    return *this;
  }

  json to_json() const {
    json jv = json::array();
    for (const auto& v : violations) {
      json w = json::object();
      for (const auto& [k, id] : v.witness) w[k] = id;
      jv.push_back(json{{"law", v.law}, {"witness", w}});
    }
    json j{{"check", check}, {"status", to_string(status)}, {"violations", jv}};
    if (!truncation.empty()) j["truncation"] = truncation;
    if (!notes.empty()) j["notes"] = notes;
    if (!sub.empty()) {
      json js = json::array();
      for (const auto& r : sub) js.push_back(r.to_json());
      j["conditions"] = js;
    }
    return j;
  }

  std::string text() const {
    std::string out = check + ": " + to_string(status) + "\n";
    for (const auto& v : violations) {
      out += "  " + v.law;
      for (const auto& [k, id] : v.witness) out += " " + k + "=" + id;
      out += "\n";
    }
    for (const auto& n : notes) out += "  note: " + n + "\n";
    for (const auto& r : sub) {
      std::string t = r.text();
      // indent subreports
      out += "  ";
      for (char c : t) {
        out += c;
        if (c == '\n') out += "  ";
      }
      if (out.size() >= 2 && out.compare(out.size() - 2, 2, "  ") == 0)
        out.erase(out.size() - 2);
    }
    return out;
  }
};

}  // namespace rcat
