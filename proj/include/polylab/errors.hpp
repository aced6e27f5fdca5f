// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace polylab {

// Invalid input or violated precondition. The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// A state-space or enumeration cap was exceeded. Exit code 3.
class ResourceCapExceeded : public std::runtime_error {
public:
    explicit ResourceCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A recomputation disagreed with a recorded result. Exit code 4.
class VerificationFailure : public std::runtime_error {
public:
    explicit VerificationFailure(const std::string& what) : std::runtime_error(what) {}
};

// Iterative numerics gave up (root finding).
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polylab
