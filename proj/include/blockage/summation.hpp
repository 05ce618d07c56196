#pragma once

#include <cmath>

namespace blockage {

// Kahan-Babuska-Neumaier compensated sum. Unlike plain Kahan, the
// compensation also tracks the case where the addend dominates the
// running total, so it stays exact-ish for long streams of values of
// mixed magnitude.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + comp; }
};

}  // namespace blockage
