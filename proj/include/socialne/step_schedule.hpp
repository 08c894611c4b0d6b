#pragma once

#include <cmath>
#include <cstddef>

#include "socialne/errors.hpp"

namespace socialne {

// Diminishing step alpha(k) = a / (b + k)^tau. With tau in (0.5, 1] the steps
// are not summable but are square summable.
struct StepSchedule {
    double a = 1.0;
    double b = 10.0;
    double tau = 0.7;

    double operator()(std::size_t k) const { return a / std::pow(b + static_cast<double>(k), tau); }

    void validate() const {
        if (!(a > 0.0)) throw InputError("step_a must be > 0");
        if (!(b >= 0.0)) throw InputError("step_b must be >= 0");
        if (!(tau > 0.5 && tau <= 1.0)) throw InputError("step_tau must lie in (0.5, 1]");
    }

    friend bool operator==(const StepSchedule&, const StepSchedule&) = default;
};

} // namespace socialne
