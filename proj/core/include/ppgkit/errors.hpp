#pragma once

#include <stdexcept>
#include <string>

namespace ppgkit {

/// Base class for all ppgkit domain errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ConstantSignal : public Error {
public:
    using Error::Error;
};

class TooShort : public Error {
public:
    using Error::Error;
};

class BadWindow : public Error {
public:
    using Error::Error;
};

class BadBand : public Error {
public:
    using Error::Error;
};

class BadLength : public Error {
public:
    using Error::Error;
};

class Malformed : public Error {
public:
    using Error::Error;
};

class NoPeak : public Error {
public:
    using Error::Error;
};

class ZeroSpectrum : public Error {
public:
    using Error::Error;
};

class ZeroMass : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class RateMismatch : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class NoBeats : public Error {
public:
    using Error::Error;
};

class ConstantInput : public Error {
public:
    using Error::Error;
};

class BadConfig : public Error {
public:
    using Error::Error;
};

class ZeroVector : public Error {
public:
    using Error::Error;
};

class Diverged : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace ppgkit
