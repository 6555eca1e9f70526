#pragma once

#include <numbers>

namespace ergopose {

constexpr double kStandardGravity = 9.81;  // m/s^2

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

constexpr double seconds_to_minutes(double s) { return s / 60.0; }
constexpr double minutes_to_seconds(double min) { return min * 60.0; }

}  // namespace ergopose
