#pragma once

#include "boundaries/sset.hpp"

#include <functional>

namespace boundaries {

// A simplicial homotopy G: X x Delta^1 -> Y on an explicit cylinder.
struct Homotopy {
    ProductSet cyl;
    SimplicialMap g;
};

// Natural transformation between phi0 and phi1 = c^-1 phi0 c, as a functor
// H x [1] -> G. Nerves must share the truncation.
Homotopy conjugation_homotopy(const Nerve& nh, const Nerve& ng, const Homomorphism& phi0, int c);

// Monotone map [k] x [1] -> [m] (values g(a, t)), as Delta^k x Delta^1 -> Delta^m.
Homotopy poset_homotopy(int k, int m, const std::function<int(int, int)>& g, int trunc);

// The simplicial map Delta^k -> Delta^m of a monotone vertex map.
SimplicialMap simplex_map(int k, int m, const std::vector<int>& on_vertices, int trunc);

}  // namespace boundaries
