#pragma once

#include <stdexcept>
#include <string>

namespace speclab {

// numerical failure (non-convergence, singularity): CLI exit code 3
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// result exists but fails the reliability policy: CLI exit code 4
struct ReliabilityError : std::runtime_error {
    explicit ReliabilityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace speclab
