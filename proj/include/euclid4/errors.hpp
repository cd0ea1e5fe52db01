#ifndef EUCLID4_ERRORS_HPP
#define EUCLID4_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace euclid4 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise malformed numeric input.
class InvalidInput : public Error
{
public:
    using Error::Error;
};

/// A three-velocity at or beyond the admissible limit for the operation.
class SuperluminalError : public Error
{
public:
    using Error::Error;
};

/// Input outside the mathematical domain, e.g. a spacelike separation.
class DomainError : public Error
{
public:
    using Error::Error;
};

/// The caller violated an operation precondition.
class PreconditionError : public Error
{
public:
    using Error::Error;
};

/// A particle table or reaction file could not be ingested.
class IngestionError : public Error
{
public:
    using Error::Error;
};

} // namespace euclid4

#endif // EUCLID4_ERRORS_HPP
