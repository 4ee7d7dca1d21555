#ifndef SFHEDGE_VERSION_HPP
#define SFHEDGE_VERSION_HPP

namespace sfhedge {

inline constexpr const char* kToolName = "sfhedge";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace sfhedge

#endif
