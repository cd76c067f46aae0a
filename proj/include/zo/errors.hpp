#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace zo {

// Process exit codes used by the command-line tool map onto these.
enum class ErrorCategory {
    config = 2,
    oracle = 3,
    io = 4,
    domain = 5,
    internal = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorCategory::domain, what) {}
};

class InvalidPrior : public DomainError {
public:
    explicit InvalidPrior(const std::string& what) : DomainError(what) {}
};

class RequiresPrior : public DomainError {
public:
    explicit RequiresPrior(const std::string& what) : DomainError(what) {}
};

class UnsupportedDiagnostic : public Error {
public:
    explicit UnsupportedDiagnostic(const std::string& what) : Error(ErrorCategory::domain, what) {}
};

class IoError : public Error {
public:
    IoError(std::string path, const std::string& what)
        : Error(ErrorCategory::io, path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class InvariantViolation : public Error {
public:
    explicit InvariantViolation(const std::string& what) : Error(ErrorCategory::internal, what) {}
};

/// Raised when the black-box objective returns a non-finite value.
/// Carries the point that was being evaluated.
class OracleError : public Error {
public:
    OracleError(Eigen::VectorXd point, const std::string& what)
        : Error(ErrorCategory::oracle, what), point_(std::move(point)) {}

    const Eigen::VectorXd& point() const noexcept { return point_; }

private:
    Eigen::VectorXd point_;
};

}  // namespace zo
