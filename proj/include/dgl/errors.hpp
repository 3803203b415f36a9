// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace dgl {

// Input or precondition problem: bad file, bad flag, disconnected graph
// where connectivity is required, ... CLI exit code 1.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative solver did not converge, or a solve produced a result that can
// only be explained by solver failure. CLI exit code 2.
class solver_error : public std::runtime_error {
public:
    explicit solver_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematically guaranteed inequality failed to hold numerically.
// This signals a bug, not a user error. CLI exit code 3.
class assertion_error : public std::logic_error {
public:
    explicit assertion_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace dgl
