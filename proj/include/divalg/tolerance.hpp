#pragma once

#include <stdexcept>

namespace divalg {

/// Absolute/relative thresholds used by every rank, residual and scalarity
/// decision in the library.  eps is the absolute floor, rel scales with the
/// magnitude of the operands.
struct Tolerance {
    double eps = 1e-9;
    double rel = 1e-9;

    Tolerance() = default;
    Tolerance(double eps_, double rel_) : eps(eps_), rel(rel_) {
        if (!(eps > 0.0 && eps < 1.0) || !(rel > 0.0 && rel < 1.0))
            throw std::invalid_argument("Tolerance: eps and rel must lie in (0, 1)");
    }
};

}  // namespace divalg
