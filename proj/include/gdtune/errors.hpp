#pragma once

#include <stdexcept>
#include <string>

namespace gdtune {

/// Base for all engine errors; `code()` is the machine-readable identifier
/// emitted in CLI error records.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error("dimension_error", msg) {}
};

struct SymbolicBudgetExceeded : Error {
    explicit SymbolicBudgetExceeded(const std::string& msg)
        : Error("symbolic_budget_exceeded", msg) {}
};

struct ZeroPolynomialError : Error {
    explicit ZeroPolynomialError(const std::string& msg) : Error("zero_polynomial", msg) {}
};

struct DomainMismatchError : Error {
    explicit DomainMismatchError(const std::string& msg) : Error("domain_mismatch", msg) {}
};

struct DegenerateTrajectoryError : Error {
    explicit DegenerateTrajectoryError(const std::string& msg)
        : Error("degenerate_trajectory", msg) {}
};

struct MissingPieceError : Error {
    explicit MissingPieceError(const std::string& msg) : Error("missing_piece", msg) {}
};

struct CapExceededError : Error {
    explicit CapExceededError(const std::string& msg) : Error("cap_exceeded", msg) {}
};

struct BudgetExceededError : Error {
    explicit BudgetExceededError(const std::string& msg) : Error("budget_exceeded", msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse_error", msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("config_error", msg) {}
};

struct NonFiniteIterateError : Error {
    explicit NonFiniteIterateError(const std::string& msg)
        : Error("non_finite_iterate", msg) {}
};

} // namespace gdtune
