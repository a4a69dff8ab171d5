#pragma once

#include <string>
#include <vector>

#include "apgrad/core.hpp"
#include "apgrad/moment.hpp"

namespace apgrad {

// Named optimizer configuration. The catalog crosses three families
// (ADAM: max estimator with bias-corrected averaging, gamma 0.9;
// AMSG: raw-max estimator, gamma 0; MAMSG: raw-max estimator, gamma 0.1)
// with three constant and three diminishing schedules; delta is 0.999
// throughout.
struct Preset {
  std::string name;
  EstimatorKind estimator = EstimatorKind::AmsGrad;
  ScheduleConfig schedule;
};

// Throws std::invalid_argument naming the offending preset.
Preset resolve_preset(const std::string& name);

std::vector<Preset> all_presets();

}  // namespace apgrad
