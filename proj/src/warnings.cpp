#include "phononet/warnings.hpp"

#include <algorithm>
#include <mutex>

namespace phononet {
namespace {
std::mutex g_mutex;
std::vector<std::string> g_warnings;
}  // namespace

void warn(const std::string& message) {
  std::lock_guard<std::mutex> lock(g_mutex);
  for (const auto& w : g_warnings)
    if (w == message) return;
  g_warnings.push_back(message);
}

std::vector<std::string> take_warnings() {
  std::lock_guard<std::mutex> lock(g_mutex);
  std::vector<std::string> out;
  out.swap(g_warnings);
  // arrival order depends on thread scheduling
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace phononet
