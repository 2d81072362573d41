#include "olive/parallel.hpp"

#include <cstdlib>
#include <string>

namespace olive {

namespace {
std::atomic<int> g_override{0};
}

void set_thread_count(int n) { g_override = n > 0 ? n : 0; }

int thread_count() {
  if (const int n = g_override.load(); n > 0) return n;
  if (const char* env = std::getenv("OLIVE_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace olive
