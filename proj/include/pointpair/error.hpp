#pragma once

#include <stdexcept>
#include <string>

namespace pointpair {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point does not lie in the open domain it was used with.
class MembershipError : public Error {
public:
    using Error::Error;
};

/// Point and domain (or two points) disagree on the ambient dimension.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An argument is outside its admissible range.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// The operation has no closed form (or no meaning) on this domain variant.
class UnsupportedDomainError : public Error {
public:
    using Error::Error;
};

/// x = y, or z coincides with x or y, in a triangle-ratio evaluation.
class DegenerateTripleError : public Error {
public:
    using Error::Error;
};

/// A numerical routine failed to produce a result (no bracket, non-finite value).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Malformed text form of a domain, metric, or point.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace pointpair
