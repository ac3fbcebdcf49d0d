#pragma once

namespace swiptgame {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace swiptgame
