#pragma once

#include <stdexcept>
#include <string>

namespace ptnn {

// Shape, geometry, and spec-validation failures.
class SpecError : public std::runtime_error {
public:
    explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

// File and format failures: parse errors, bad magic, truncated payloads.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Memory-budget violations: arena overflow, infeasible channel solve.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ptnn
