#pragma once

namespace litsim {

inline constexpr const char kVersion[] = "0.1.0";

}  // namespace litsim
