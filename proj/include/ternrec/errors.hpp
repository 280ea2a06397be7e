#pragma once

#include <stdexcept>
#include <string>

namespace ternrec {

/// Input violates an operation's precondition (bad spec, prime outside Z, ...).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured resource budget (term digits, scan states, factoring effort) ran out.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ternrec
