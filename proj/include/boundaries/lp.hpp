#pragma once

#include "boundaries/matrix.hpp"

#include <string>

namespace boundaries {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* lp_status_name(LpStatus s);

// min c.x  s.t.  A x = b,  D x <= e,  x free.
template <class T>
struct LpProblem {
    Vec<T> c;
    Matrix<T> A;
    Vec<T> b;
    Matrix<T> D;
    Vec<T> e;
    std::size_t num_vars() const { return c.size(); }
};

// For Optimal: x primal, (y, z) with z >= 0 solving the dual
//   max b.y - e.z  s.t.  A^T y - D^T z = c.
// For Infeasible: (y, z), z >= 0, with A^T y - D^T z = 0 and b.y - e.z > 0.
// For Unbounded: x feasible and ray with A ray = 0, D ray <= 0, c.ray < 0.
template <class T>
struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    T value{};
    Vec<T> x;
    Vec<T> y;
    Vec<T> z;
    Vec<T> ray;
    std::size_t iterations = 0;
};

struct LpOptions {
    std::size_t max_iterations = 200000;
};

// Exact problems use Bland's rule throughout; float problems use Dantzig
// pricing with a Bland fallback after degenerate stalls, and tolerances.
template <class T>
LpResult<T> lp_solve(const LpProblem<T>& prob, const LpOptions& opt = {});

// Checks the returned certificate against the problem data.
template <class T>
bool lp_certificate_ok(const LpProblem<T>& prob, const LpResult<T>& res, std::string* why = nullptr);

}  // namespace boundaries
