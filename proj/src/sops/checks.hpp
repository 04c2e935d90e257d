#pragma once

#include <json.hpp>
#include <string>

namespace sops {

// Each check yields records {check_name, inputs, value, bound, pass}; a report
// is a JSON array of such records.
struct CheckReport {
  nlohmann::json records = nlohmann::json::array();
  bool pass() const;
  void add(const std::string& name, nlohmann::json inputs, nlohmann::json value, nlohmann::json bound, bool pass);
};

// Names accepted by run_check: "kp", "nu", "thresholds", "isoperimetric",
// "partition", "pair", "oracle". Parameters are a JSON object; missing
// entries take documented defaults.
CheckReport run_check(const std::string& name, const nlohmann::json& params);

}  // namespace sops
