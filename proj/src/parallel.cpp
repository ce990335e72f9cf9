#include "anosovlab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace anosov {

namespace {

std::atomic<unsigned> configured{0};

}  // namespace

void set_thread_count(unsigned n) { configured = n; }

unsigned thread_count() {
    if (unsigned n = configured.load()) return n;
    if (const char* env = std::getenv("ANOSOVLAB_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return unsigned(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace anosov
