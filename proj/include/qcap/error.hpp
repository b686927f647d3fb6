#pragma once

#include <stdexcept>
#include <string>

namespace qcap {

enum class ErrorKind {
    invalid_input,
    not_psd,
    linear_dependence,
    resource_limit,
    unconverged,
    no_root,
    io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every exception thrown by the library. `kind()` lets the CLI map
/// failures to messages without a cascade of catch clauses.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(ErrorKind::invalid_input, what) {}
};

/// A matrix that should be positive semidefinite has an eigenvalue below the clamp tolerance.
class NotPsd : public Error {
public:
    explicit NotPsd(const std::string& what) : Error(ErrorKind::not_psd, what) {}
};

/// The states (or sequences) are linearly dependent, so a Gram matrix or basis matrix is singular.
class LinearDependence : public Error {
public:
    explicit LinearDependence(const std::string& what)
        : Error(ErrorKind::linear_dependence, what) {}
};

class ResourceLimit : public Error {
public:
    explicit ResourceLimit(const std::string& what) : Error(ErrorKind::resource_limit, what) {}
};

class NoRoot : public Error {
public:
    explicit NoRoot(const std::string& what) : Error(ErrorKind::no_root, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace qcap
