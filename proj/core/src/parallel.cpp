#include "naqgt/parallel.hpp"

#include <algorithm>

namespace naqgt {

namespace {
std::atomic<int> g_default_threads{0};
}

void set_default_threads(int n) { g_default_threads.store(std::max(0, n)); }

int default_threads() { return g_default_threads.load(); }

int resolve_threads(int requested)
{
    int n = requested > 0 ? requested : default_threads();
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, n);
}

}  // namespace naqgt
