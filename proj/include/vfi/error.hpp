#pragma once

#include <stdexcept>
#include <string>

namespace vfi {

// Unreadable, unwritable or malformed files. The CLI maps this (and
// std::invalid_argument) to exit code 2; anything else is an internal error.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace vfi
