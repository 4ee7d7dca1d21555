#ifndef SFHEDGE_ERRORS_HPP
#define SFHEDGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sfhedge {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid numeric input: probabilities outside [0,1], negative payoffs,
/// malformed parameters.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Market parameters admit arbitrage (d >= 1+rho or 1+rho >= u).
class ArbitrageError : public DomainError {
public:
    explicit ArbitrageError(const std::string& what) : DomainError(what) {}
};

/// A requested level is not attainable by the claim on some path.
class MembershipError : public DomainError {
public:
    explicit MembershipError(const std::string& what) : DomainError(what) {}
};

/// Problem size exceeds a configured cap.
class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& what) : Error(what) {}
};

/// Config file could not be parsed; message carries line diagnostics.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace sfhedge

#endif
