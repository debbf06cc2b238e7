#pragma once

#include "barycentra/linalg.hpp"

namespace barycentra::lp {

// maximize c.z  subject to  A z = b,  z >= 0, over exact rationals.
struct Problem {
    Matrix a;
    Vec b;
    Vec c;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
    Status status = Status::Infeasible;
    Vec z;
    Rational objective = 0;
};

// Two-phase tableau simplex with Bland's rule (terminates, no cycling).
Solution solve(const Problem& problem);

// Some z >= 0 with A z = b, if any exists.
std::optional<Vec> feasible_point(const Matrix& a, const Vec& b);

}  // namespace barycentra::lp
