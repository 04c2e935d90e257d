#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace sops {

enum class Setting { Connected, General };
enum class Model { Potts, Clock };

std::string_view to_string(Setting s);
std::string_view to_string(Model m);
std::optional<Setting> parse_setting(std::string_view text);
std::optional<Model> parse_model(std::string_view text);

}  // namespace sops
