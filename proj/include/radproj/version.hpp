#pragma once

namespace radproj {
inline constexpr const char* kArtifactName = "radproj";
inline constexpr const char* kVersion = "1.0.0";
} // namespace radproj
