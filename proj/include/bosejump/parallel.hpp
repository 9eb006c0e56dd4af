#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bosejump {

// Kernels come in two flavours. The serial one is the reference the OpenMP
// one is tested against; both must produce bit-identical results.
enum class Execution { serial, parallel };

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

// Restores the previous thread count on scope exit.
class ScopedThreads {
  public:
    explicit ScopedThreads(int n) : saved_(max_threads()) { set_threads(n); }
    ~ScopedThreads() { set_threads(saved_); }
    ScopedThreads(const ScopedThreads&) = delete;
    ScopedThreads& operator=(const ScopedThreads&) = delete;

  private:
    int saved_;
};

}  // namespace bosejump
