#pragma once

#include <stdexcept>
#include <string>

namespace toolalign {

// Base error for all domain failures raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace toolalign
