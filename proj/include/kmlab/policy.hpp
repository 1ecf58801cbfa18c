#pragma once

#include "kmlab/errors.hpp"

namespace kmlab {

// Evaluation policy for the divided-difference kernels. When the relative
// spread of the arguments falls below rel_degeneracy_tol the closed forms
// cancel catastrophically and evaluation switches to a local expansion
// around the mean argument; series_order is the number of expansion terms
// kept beyond the leading one.
struct EvalPolicy {
    double rel_degeneracy_tol = 1e-6;
    int series_order = 4;

    void validate() const {
        if (!(rel_degeneracy_tol > 0.0 && rel_degeneracy_tol < 1e-2))
            throw usage_error("EvalPolicy: rel_degeneracy_tol must lie in (0, 1e-2)");
        if (series_order < 2)
            throw usage_error("EvalPolicy: series_order must be >= 2");
    }
};

inline const EvalPolicy& default_policy() {
    static const EvalPolicy p{};
    return p;
}

} // namespace kmlab
