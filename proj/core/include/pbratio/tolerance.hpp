#pragma once

namespace pbratio {

// Repo-wide comparison tolerance; every call that compares takes an override.
inline constexpr double kDefaultTol = 1e-12;

}  // namespace pbratio
