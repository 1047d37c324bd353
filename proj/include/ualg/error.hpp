#pragma once

#include <stdexcept>
#include <string>

namespace ualg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SignatureError : public Error {
public:
    using Error::Error;
};

class TermError : public Error {
public:
    using Error::Error;
};

class AlgebraError : public Error {
public:
    using Error::Error;
};

/// Malformed input files (JSON structure, unknown names, bad term text).
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace ualg
