#pragma once

#include <stdexcept>

namespace spantree {

// The operation needs a path between the involved vertices (or a connected
// graph) and the input does not provide one.
struct DisconnectedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The inputs fall outside the validity regime of the bound being evaluated.
struct OutOfRegimeError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace spantree
