#pragma once

#include <stdexcept>
#include <string>

namespace rlab {

// Error taxonomy shared by the library and the CLI exit codes:
//   config/domain/range/resource -> exit 4
//   accuracy / numerical consistency -> exit 3
//   property failure / search failure -> exit 2
enum class ErrorKind {
    config,
    domain,
    range,
    resource,
    accuracy,
    property_failure,
    search_failure,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error(ErrorKind::range, what) {}
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(ErrorKind::resource, what) {}
};

// Quadrature or numeric agreement failed to reach the requested tolerance.
// Carries the best value obtained and its estimated error.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double best_value, double error_estimate)
        : Error(ErrorKind::accuracy, what), best_value_(best_value), error_estimate_(error_estimate) {}
    double best_value() const { return best_value_; }
    double error_estimate() const { return error_estimate_; }

private:
    double best_value_;
    double error_estimate_;
};

// A checked invariant or inequality of the method failed.
class PropertyError : public Error {
public:
    explicit PropertyError(const std::string& what) : Error(ErrorKind::property_failure, what) {}
};

class SearchError : public Error {
public:
    explicit SearchError(const std::string& what) : Error(ErrorKind::search_failure, what) {}
};

inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::config:
        case ErrorKind::domain:
        case ErrorKind::range:
        case ErrorKind::resource: return 4;
        case ErrorKind::accuracy: return 3;
        case ErrorKind::property_failure:
        case ErrorKind::search_failure: return 2;
    }
    return 1;
}

}  // namespace rlab
