#ifndef COHESION_LAB_ERRORS_HPP
#define COHESION_LAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cohesion_lab {

// Base of every error thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed edge-list input. Carries the 1-based line number.
class parse_error : public error {
public:
    parse_error(std::size_t line, const std::string& what)
        : error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Structurally invalid data: self-loops, duplicate edges, out-of-range vertices.
class validation_error : public error {
public:
    using error::error;
};

// Arguments outside an operation's mathematical domain.
class domain_error : public error {
public:
    using error::error;
};

// Operation refused because the input exceeds a configured guard.
class refusal_error : public error {
public:
    using error::error;
};

// Operation not available for this kind of object (e.g. a virtual reduction instance).
class unsupported_operation : public error {
public:
    using error::error;
};

// A claimed certificate (clique, cohesive set) does not hold.
class witness_invalid : public error {
public:
    using error::error;
};

// Bad command-level arguments, such as an unknown property-suite name.
class usage_error : public error {
public:
    using error::error;
};

} // namespace cohesion_lab

#endif // COHESION_LAB_ERRORS_HPP
