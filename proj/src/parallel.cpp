#include "boundaries/parallel.hpp"

#include <cstdlib>
#include <string>

namespace boundaries {

int configure_threads() {
    if (const char* s = std::getenv("BOUNDARIES_THREADS")) {
        int n = std::atoi(s);
        if (n > 0) omp_set_num_threads(n);
    }
    return omp_get_max_threads();
}

}  // namespace boundaries
