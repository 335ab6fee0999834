#include "msfou/hurst.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace msfou {

std::string_view to_string(HurstRegime regime) {
  switch (regime) {
    case HurstRegime::kBrownian:
      return "brownian";
    case HurstRegime::kErgodicClt:
      return "ergodic_clt";
    case HurstRegime::kBoundary:
      return "boundary";
    case HurstRegime::kRosenblatt:
      return "rosenblatt";
    case HurstRegime::kRough:
      return "rough";
  }
  return "unknown";
}

namespace {

HurstRegime classify(double h) {
  if (h == 0.5) return HurstRegime::kBrownian;
  if (h < 0.5) return HurstRegime::kRough;
  if (h < 0.75) return HurstRegime::kErgodicClt;
  if (h == 0.75) return HurstRegime::kBoundary;
  return HurstRegime::kRosenblatt;
}

}  // namespace

HurstParam::HurstParam(double h) : h_(h), regime_(HurstRegime::kBrownian) {
  if (!(h > 0.0 && h < 1.0) || !std::isfinite(h)) {
    throw std::invalid_argument("Hurst index must lie in (0, 1), got " +
                                std::to_string(h));
  }
  regime_ = classify(h);
}

}  // namespace msfou
