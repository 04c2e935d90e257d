#include "sops/types.hpp"

namespace sops {

std::string_view to_string(Setting s) { return s == Setting::Connected ? "connected" : "general"; }
std::string_view to_string(Model m) { return m == Model::Potts ? "potts" : "clock"; }

std::optional<Setting> parse_setting(std::string_view text) {
  if (text == "connected") return Setting::Connected;
  if (text == "general") return Setting::General;
  return std::nullopt;
}

std::optional<Model> parse_model(std::string_view text) {
  if (text == "potts") return Model::Potts;
  if (text == "clock") return Model::Clock;
  return std::nullopt;
}

}  // namespace sops
