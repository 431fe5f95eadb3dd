#pragma once

#include <string>
#include <string_view>

#include "curvecross/curve.hpp"

namespace curvecross {

/// A curve together with the metric order it was sampled in.
struct CurveFile {
  TrigCurve curve;
  SobolevOrder r;
};

/// {"degree": N, "r": r, "x": {"a": [...], "b": [...]}, "y": {"a": [...], "b": [...]}}
///
/// Every coefficient is printed with 17 significant digits so that parsing
/// the text back yields the identical doubles.
std::string to_curve_json(const TrigCurve& c, SobolevOrder r);

/// Parses the format above. Throws SchemaError, with line/column context for
/// syntax errors and the offending key for schema violations.
CurveFile parse_curve_json(std::string_view text);

/// Formats a double with 17 significant digits.
std::string format_exact_double(double v);

}  // namespace curvecross
