#pragma once

#include "dgcurv/curvature.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace dgcurv {

/// Parses α; throws std::invalid_argument unless it lies in [0, 1).
double parse_alpha(std::string_view text);
/// Parses m; accepts "inf"; throws std::invalid_argument unless m >= 1.
double parse_dimension(std::string_view text);

/// Rounds to 12 significant digits; infinities become "inf"/"-inf".
nlohmann::ordered_json json_real(double x);
/// "%.12g", with "inf"/"-inf".
std::string format_real(double x);

// Field order is fixed:
//   alpha, m, vertices[label, phi, C, K_theorem, K_optimal, cd_holds],
//   summary[min_K_theorem, min_K_optimal, all_cd_hold]
// The verify report appends samples, seed, K_override after m, extra
// per-vertex fields (K_checked, min_sample_residual, sample_violations,
// C_at_least_one), a
// "violations" array and summary.violations.

nlohmann::ordered_json analyze_json(const CurvatureReport& report);
nlohmann::ordered_json verify_json(const CurvatureReport& report, std::optional<double> k_override);

/// One row per vertex: label,phi,C,K_theorem,K_optimal,cd_holds
std::string report_csv(const CurvatureReport& report);

}  // namespace dgcurv
