#pragma once

#include <string>
#include <vector>

namespace nonbark {

// Shipped run descriptions, embedded so `preset <name>` works from any
// directory; the copies under presets/ carry the same bytes.
std::vector<std::string> preset_names();
std::string preset_config_text(const std::string& name);  // ConfigError

}  // namespace nonbark
