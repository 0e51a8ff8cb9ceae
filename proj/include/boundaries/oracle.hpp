#pragma once

#include "boundaries/sset.hpp"

#include <string>
#include <vector>

namespace boundaries {

// Constant untwisted coefficients for the independent oracle.
enum class OracleRing { Integers, Rationals, ModP };

struct OracleResult {
    std::size_t rank = 0;             // free rank (dimension for fields)
    std::vector<std::string> torsion;  // elementary divisors > 1, integers only
};

// H^n(X; M) from dense normalized cochains; shares no code with the bounded
// cochain assembly. Rank-1 coefficients; needs n+1 <= trunc.
OracleResult ordinary_cohomology_oracle(const SimplicialSet& x, OracleRing ring, int n, int prime = 2);

}  // namespace boundaries
