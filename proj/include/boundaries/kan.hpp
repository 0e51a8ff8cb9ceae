#pragma once

#include "boundaries/sset.hpp"

#include <optional>

namespace boundaries {

// A horn Lambda^n_k -> X over y in Y_n with no filler.
struct HornWitness {
    int n = 0, k = 0;
    Id base = 0;             // y in Y_n
    std::vector<Id> faces;   // x_i in X_{n-1} for i != k; -1 at k
    std::string str() const;
};

struct KanResult {
    bool ok = true;
    std::optional<HornWitness> witness;
    std::size_t horns_checked = 0;
};

// Exhaustive horn lifting for every Lambda^n_k with 1 <= n <= max_dim.
KanResult is_kan_fibration_up_to(const SimplicialMap& f, int max_dim);

}  // namespace boundaries
