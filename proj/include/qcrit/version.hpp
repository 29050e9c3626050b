#pragma once

namespace qcrit {

inline constexpr const char* kVersion = "1.0.0";

}
