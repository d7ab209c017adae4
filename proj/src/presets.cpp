#include "nonbark/presets.hpp"

#include "nonbark/errors.hpp"

namespace nonbark {

namespace {

constexpr const char* kFig1 = R"json({
  "model": "tunnel_closed",
  "format": "csv",
  "params": {"b": 1.0, "mu": 1000.0, "kappa": 1000.0, "k0": 5000.0, "L": 100.0},
  "T_over_Lv": 14.0
}
)json";

constexpr const char* kFig2 = R"json({
  "model": "tunnel_closed",
  "format": "csv",
  "params": {"b": 1.0, "mu": 1000.0, "kappa": 1000.0, "k0": 5000.0, "L": 100.0},
  "T_over_Lv": 6.0,
  "spots": [{"n": 1, "m": 1}],
  "grid": {"min": 190.0, "max": 210.0, "points": 801}
}
)json";

constexpr const char* kFig3 = R"json({
  "model": "tunnel_closed",
  "format": "csv",
  "params": {"b": 1.0, "mu": 1000.0, "kappa": 1000.0, "k0": 5000.0, "L": 100.0},
  "T_over_Lv": 14.0,
  "spots": [{"n": 2, "m": 2}, {"n": 1, "m": 1}],
  "grid": {"half_width": 10.0, "points": 801}
}
)json";

constexpr const char* kAtomGrowth = R"json({
  "model": "atom_decay",
  "format": "csv",
  "params": {"gamma": 1.0, "n_side": 200, "band": 20.0, "level": 0},
  "sweep": {"min": 2.0, "max": 8.0, "points": 13}
}
)json";

constexpr const char* kChecks = R"json({
  "model": "checks",
  "fast_only": false
}
)json";

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "atom-growth", "checks"};
}

std::string preset_config_text(const std::string& name) {
  if (name == "fig1") return kFig1;
  if (name == "fig2") return kFig2;
  if (name == "fig3") return kFig3;
  if (name == "atom-growth") return kAtomGrowth;
  if (name == "checks") return kChecks;
  throw ConfigError("unknown preset: " + name);
}

}  // namespace nonbark
