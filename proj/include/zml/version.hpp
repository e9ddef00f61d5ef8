#ifndef ZML_VERSION_HPP
#define ZML_VERSION_HPP

namespace zml {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
