#include "smt/parallel.hpp"

#include <atomic>

namespace smt {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_num_threads(unsigned n) { g_threads.store(n); }

namespace detail {
bool& in_parallel_region() {
    thread_local bool flag = false;
    return flag;
}
}  // namespace detail

unsigned num_threads() {
    const unsigned n = g_threads.load();
    if (n != 0) return n;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace smt
