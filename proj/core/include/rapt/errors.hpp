#pragma once

#include <stdexcept>
#include <string>

namespace rapt {

/// Base class for all library errors. The `kind()` maps onto the CLI
/// exit-code contract: validation errors exit 2, numerical failures 3,
/// I/O failures 4.
class Error : public std::runtime_error {
public:
    enum class Kind { validation, numerical, io };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Bad input: parameter constraints or domain preconditions violated.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(Kind::validation, what) {}
};

/// An argument left the mathematical domain of an operation.
class DomainError : public ValidationError {
public:
    explicit DomainError(const std::string& what) : ValidationError(what) {}
};

/// A numerical procedure failed (ill-conditioning, no convergence, ...).
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(Kind::numerical, what) {}
};

/// The linear system of a rational fit is numerically rank-deficient;
/// signals that the requested degree is too high for f on this domain.
class SingularSystemError : public NumericalError {
public:
    explicit SingularSystemError(const std::string& what) : NumericalError(what) {}
};

/// A denominator has (numerically) repeated roots; the remedy is to
/// change the degree of the rational approximation, never to merge.
class RepeatedRootError : public NumericalError {
public:
    explicit RepeatedRootError(const std::string& what) : NumericalError(what) {}
};

/// No degree within the allowed policy met the slice acceptance
/// threshold; the caller drops this x value and interpolates.
class SliceRejectedError : public NumericalError {
public:
    SliceRejectedError(const std::string& what, double best_error)
        : NumericalError(what), best_error_(best_error) {}
    double best_error() const noexcept { return best_error_; }

private:
    double best_error_;
};

/// Fewer than four slices survived a cache build.
class CacheDegenerateError : public NumericalError {
public:
    explicit CacheDegenerateError(const std::string& what) : NumericalError(what) {}
};

/// Query outside the supported range of a cache or table.
class OutOfRangeError : public NumericalError {
public:
    explicit OutOfRangeError(const std::string& what) : NumericalError(what) {}
};

/// Normalized price outside the Li bounds of an implied-vol entry.
class BoundsError : public NumericalError {
public:
    explicit BoundsError(const std::string& what) : NumericalError(what) {}
};

/// Price violates static no-arbitrage limits for the contract.
class ArbitrageError : public ValidationError {
public:
    explicit ArbitrageError(const std::string& what) : ValidationError(what) {}
};

/// Characteristic-function argument outside the model's analyticity
/// strip (dampening parameter too large for the model parameters).
class StripError : public DomainError {
public:
    explicit StripError(const std::string& what) : DomainError(what) {}
};

/// The model has neither a closed-form distribution nor a simulator.
class SimulationUnavailableError : public NumericalError {
public:
    explicit SimulationUnavailableError(const std::string& what) : NumericalError(what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(Kind::io, what) {}
};

} // namespace rapt
