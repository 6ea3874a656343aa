#pragma once

#include <stdexcept>
#include <string>

namespace ldg {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid construction arguments or parameters outside their domain.
class validation_error : public error {
public:
    using error::error;
};

// An exact-mode operation was asked to run above its size limit.
class size_limit_error : public error {
public:
    using error::error;
};

// Malformed input file; the message names the offending field.
class parse_error : public error {
public:
    using error::error;
};

}  // namespace ldg
