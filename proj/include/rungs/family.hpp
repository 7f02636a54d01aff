#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rungs {

/// The four ladder-like graphs. Helix graphs live on vertex set Z with
/// rungs z_m = {m-1, m} and horizontals h_m = {m-k, m}; the ladder lives on
/// {0,1} x Z.
enum class Family { Ladder, Zigzag, Helix3, EnhancedHelix3 };

std::string_view to_string(Family f);
Family parse_family(std::string_view name);

/// Raised when an input violates a documented precondition (bad family,
/// weight out of range, oversize window). The CLI maps it to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical routine leaves its tolerance envelope
/// (root on the unit circle, conditional probability outside [0,1]).
/// The CLI maps it to exit code 2.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric edge weights: z-edges weigh c, g-edges weigh d, h-edges weigh 1.
struct Weights {
  double c = 1.0;
  double d = 0.0;
};

/// A family together with (optionally) numeric weights. Absent weights mean
/// the consumer works symbolically in (c, d).
struct GraphFamily {
  Family kind = Family::Ladder;
  std::optional<double> c;
  std::optional<double> d;

  static GraphFamily symbolic(Family kind) { return {kind, std::nullopt, std::nullopt}; }
  static GraphFamily numeric(Family kind, double c, double d = 0.0);

  bool is_numeric() const { return c.has_value(); }
  /// Throws ValidationError when the family carries no numeric weights.
  Weights weights() const;
};

/// c > 0 (c = +inf only if allow_infinite_c), d >= 0, and d == 0 unless the
/// family has chord edges.
void validate_weights(Family f, double c, double d, bool allow_infinite_c = false);

/// Number of boundary classes of the transfer scheme (2 or 5).
int class_count(Family f);

/// Vertices one step of the transfer recursion adds, and the chord span k of
/// the helix (ladder: 1 column, span 1).
int chord_span(Family f);

}  // namespace rungs
