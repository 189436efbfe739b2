#pragma once

#include <stdexcept>
#include <string>

namespace splitk {

// A product was requested outside the region where the decomposition rules
// are stated (index sums past the modular wall, or bookkeeping-only labels
// used as factors).
class OutOfRangeError : public std::domain_error {
public:
    explicit OutOfRangeError(const std::string& what) : std::domain_error(what) {}
};

// A provided seed disagrees with the series the recurrence forces.
class SeedInconsistentError : public std::runtime_error {
public:
    explicit SeedInconsistentError(const std::string& what) : std::runtime_error(what) {}
};

// An input exceeds the configured computation budget.
class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

// Point count requested at a prime dividing the discriminant.
class BadReductionError : public std::runtime_error {
public:
    explicit BadReductionError(const std::string& what) : std::runtime_error(what) {}
};

// A summand failed the End/J = F_l certificate (would require extension-field
// logic, which is out of scope by design).
class CertificateError : public std::runtime_error {
public:
    explicit CertificateError(const std::string& what) : std::runtime_error(what) {}
};

// An internal consistency check failed; indicates an implementation bug,
// never bad input.
class InternalCheckError : public std::logic_error {
public:
    explicit InternalCheckError(const std::string& what) : std::logic_error(what) {}
};

inline void internal_check(bool ok, const std::string& what) {
    if (!ok) throw InternalCheckError(what);
}

}  // namespace splitk
