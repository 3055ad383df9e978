#pragma once

#include <stdexcept>
#include <string>

namespace namemine {

/// Failure while reading a Git repository (maps to CLI exit code 2).
class RepositoryError : public std::runtime_error {
public:
    enum class Kind { not_found, branch_not_found, unreadable_object, command_failed, empty };

    RepositoryError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Malformed input document: predictions, score files, config (exit code 4).
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Violated internal consistency, e.g. two refactoring links into one method.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Non-fatal problem attached to a file (parse failures, skipped members).
struct Diagnostic {
    std::string path;
    int line = 0;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

}  // namespace namemine
