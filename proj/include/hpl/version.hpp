#pragma once

namespace hpl {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kCsvHeader = "# homodyne-pointer-lab v0.1.0";

}  // namespace hpl
