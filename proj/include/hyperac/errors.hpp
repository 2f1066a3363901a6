#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperac {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A potential or damping function violates its structural hypotheses.
class InvalidPotential : public Error {
public:
    using Error::Error;
};

/// Inadmissible parameters or configuration (CFL bound, bad K, unknown names, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Caller-side precondition violated (shape mismatch, inadmissible delta, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The stepper produced a non-finite value.
class BlowUp : public Error {
public:
    BlowUp(std::size_t cell, double time);

    std::size_t cell() const noexcept { return cell_; }
    double time() const noexcept { return time_; }

private:
    std::size_t cell_;
    double time_;
};

/// No sample of the correct sign was found near a jump of the step profile.
class CertificateFailure : public Error {
public:
    CertificateFailure(std::size_t jump, double position, const std::string& side);

    std::size_t jump() const noexcept { return jump_; }

private:
    std::size_t jump_;
};

}  // namespace hyperac
