#pragma once

#include <string>
#include <vector>

namespace phononet {

// Validity-regime warnings (e.g. K/omega0 too large) are collected here so the
// CLI can echo them into output metadata. Thread safe.
void warn(const std::string& message);
std::vector<std::string> take_warnings();

}  // namespace phononet
