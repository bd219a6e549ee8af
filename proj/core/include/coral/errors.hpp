#pragma once

#include <stdexcept>
#include <string>

namespace coral {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition (bad n, inverted range, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// The parametrization degenerates at the requested point (r_u x r_v = 0).
class SingularPointError : public Error {
public:
    using Error::Error;
};

/// The first fundamental form is not positive definite.
class SingularMetricError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace coral
