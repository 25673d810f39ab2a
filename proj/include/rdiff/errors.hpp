#pragma once

#include <stdexcept>
#include <string>

namespace rdiff {

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Every neighbor was excluded from a weight computation.
class AllExcluded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// 1 - mu*|u|^2 is numerically zero, the LMS step cannot be inverted.
class SingularUpdate : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ZeroStepSize : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class EmptyWindow : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class DivisionByZero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace rdiff
