#pragma once

#include <stdexcept>
#include <string>

namespace mz {

// Thrown when a mathematical property the run was asked to certify turns out
// to be false (a measured inequality violated, a net that fails a claimed
// covering/packing property). The CLI maps this to exit code 1.
// Bad parameters throw std::invalid_argument and map to exit code 2, like I/O.
struct assertion_error : std::runtime_error {
    explicit assertion_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mz
