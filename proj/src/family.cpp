#include "rungs/family.hpp"

#include <cmath>

namespace rungs {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Ladder: return "ladder";
    case Family::Zigzag: return "zigzag";
    case Family::Helix3: return "helix3";
    case Family::EnhancedHelix3: return "enhanced";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "ladder") return Family::Ladder;
  if (name == "zigzag" || name == "helix2") return Family::Zigzag;
  if (name == "helix3") return Family::Helix3;
  if (name == "enhanced" || name == "enhanced-helix3" || name == "enhanced_helix3")
    return Family::EnhancedHelix3;
  throw ValidationError("unknown family '" + std::string(name) +
                        "' (expected ladder, zigzag, helix3, enhanced)");
}

GraphFamily GraphFamily::numeric(Family kind, double c, double d) {
  validate_weights(kind, c, d);
  return {kind, c, d};
}

Weights GraphFamily::weights() const {
  if (!c) throw ValidationError("numeric weights required but family is symbolic");
  return {*c, d.value_or(0.0)};
}

void validate_weights(Family f, double c, double d, bool allow_infinite_c) {
  if (std::isnan(c) || c <= 0.0 || (std::isinf(c) && !allow_infinite_c))
    throw ValidationError("rung weight c must be a positive finite number");
  if (std::isnan(d) || d < 0.0 || std::isinf(d))
    throw ValidationError("chord weight d must be a finite number >= 0");
  if (d != 0.0 && f != Family::EnhancedHelix3)
    throw ValidationError("chord weight d is only meaningful for the enhanced helix-3 graph");
}

int class_count(Family f) {
  return (f == Family::Ladder || f == Family::Zigzag) ? 2 : 5;
}

int chord_span(Family f) {
  switch (f) {
    case Family::Ladder: return 1;
    case Family::Zigzag: return 2;
    case Family::Helix3:
    case Family::EnhancedHelix3: return 3;
  }
  return 1;
}

}  // namespace rungs
