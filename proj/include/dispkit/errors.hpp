#pragma once

#include <stdexcept>
#include <string>

namespace dispkit {

// Bad user input: malformed files, out-of-domain parameters, dimension
// mismatches. The CLI maps this to exit code 2.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Work refused because it would exceed a resource budget (memory, search
// size). The CLI maps this to exit code 3. The message carries the estimate.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dispkit
