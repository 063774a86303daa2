#pragma once

#include <stdexcept>
#include <string>

namespace fnfb {

// Error taxonomy maps onto CLI exit codes: config 2, solver 3, audit 4.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct GridError : std::runtime_error {
    explicit GridError(const std::string& msg) : std::runtime_error(msg) {}
};

struct OperatorError : std::runtime_error {
    explicit OperatorError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

struct AuditError : std::runtime_error {
    explicit AuditError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fnfb
