#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hypzero {

/// Input outside the mathematical domain of an operation (n = 0, z on the cut, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Working precision reached PrecisionConfig::maxBits without resolving a decision.
class PrecisionExhausted : public std::runtime_error {
public:
    PrecisionExhausted(const std::string& what, std::vector<std::string> trace = {})
        : std::runtime_error(what), trace_(std::move(trace)) {}

    const std::vector<std::string>& trace() const noexcept { return trace_; }

private:
    std::vector<std::string> trace_;
};

/// A computed root could not be certified (possible multiple root or overlapping disks).
class CertificationFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure while tracing a steepest path or integrating along it.
class PathError : public std::runtime_error {
public:
    enum class Kind { SaddleProximity, EndpointMismatch, PathTooCoarse, NewtonFailure };

    PathError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

} // namespace hypzero
