#pragma once

#include <stdexcept>
#include <string>

namespace qlbm {

// Error categories map 1:1 onto CLI exit codes (see tools/).
// Precondition violations use std::invalid_argument / std::out_of_range.

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Resource budgets: sparse entry caps, ensemble branch explosion, register
// size limits for dense expansion.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotRealizableError : std::runtime_error {
    explicit NotRealizableError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qlbm
