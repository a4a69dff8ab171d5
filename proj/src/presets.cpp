#include "apgrad/presets.hpp"

namespace apgrad {

namespace {

Preset make(const std::string& family, const std::string& variant) {
  Preset p;
  p.name = family + "-" + variant;
  if (family == "ADAM") {
    p.estimator = EstimatorKind::AdamMax;
    p.schedule.gamma = 0.9;
  } else if (family == "AMSG") {
    p.estimator = EstimatorKind::AmsGrad;
    p.schedule.gamma = 0.0;
  } else {  // MAMSG
    p.estimator = EstimatorKind::AmsGrad;
    p.schedule.gamma = 0.1;
  }
  p.schedule.delta = 0.999;
  p.schedule.epsilon = 1e-8;

  if (variant == "C1") {
    p.schedule.alpha = AlphaRule::constant(1e-3);
    p.schedule.beta = BetaRule::constant(0.9);
  } else if (variant == "C2") {
    p.schedule.alpha = AlphaRule::constant(1e-3);
    p.schedule.beta = BetaRule::constant(1e-3);
  } else if (variant == "C3") {
    p.schedule.alpha = AlphaRule::constant(1e-2);
    p.schedule.beta = BetaRule::constant(1e-2);
  } else {
    // Diminishing: alpha_n = 1/n^eta with eta 1/2, 3/4, 1; beta_n = 2^-n.
    const double eta = variant == "D1" ? 0.5 : variant == "D2" ? 0.75 : 1.0;
    p.schedule.alpha = AlphaRule::inverse_power(eta);
    p.schedule.beta = BetaRule::geometric(0.5);
  }
  p.schedule.validate();
  return p;
}

}  // namespace

Preset resolve_preset(const std::string& name) {
  for (const auto& p : all_presets()) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

std::vector<Preset> all_presets() {
  std::vector<Preset> out;
  for (const char* family : {"ADAM", "AMSG", "MAMSG"}) {
    for (const char* variant : {"C1", "C2", "C3", "D1", "D2", "D3"}) {
      out.push_back(make(family, variant));
    }
  }
  return out;
}

}  // namespace apgrad
