#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dynrisk {

/// Input violates one or more model invariants. Carries every violation found.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    [[nodiscard]] const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out = "invalid assessment input";
        for (const auto& issue : issues) {
            out += "\n  - " + issue;
        }
        return out;
    }

    std::vector<std::string> issues_;
};

/// Malformed or unreadable dataset file. `locus` names the file, line or field.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string locus, std::string message)
        : std::runtime_error(locus.empty() ? message : locus + ": " + message),
          locus_(std::move(locus)),
          message_(std::move(message)) {}

    [[nodiscard]] const std::string& locus() const noexcept { return locus_; }
    [[nodiscard]] const std::string& message() const noexcept { return message_; }

private:
    std::string locus_;
    std::string message_;
};

/// Destination could not be written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation hit an undefined case (e.g. both incidence degrees zero).
class DegenerateError : public std::runtime_error {
public:
    DegenerateError(std::string step, const std::string& what)
        : std::runtime_error(step.empty() ? what : "step '" + step + "': " + what), step_(std::move(step)) {}

    [[nodiscard]] const std::string& step() const noexcept { return step_; }

private:
    std::string step_;
};

}  // namespace dynrisk
