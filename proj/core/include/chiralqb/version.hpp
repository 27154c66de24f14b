#ifndef CHIRALQB_VERSION_HPP
#define CHIRALQB_VERSION_HPP

namespace chiralqb {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
