#pragma once

#include <stdexcept>
#include <string>

namespace pseudobox {

// Bad values fed into an operation (non-finite coordinates, mismatched lengths).
struct InvalidInput : std::invalid_argument {
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Bad configuration (out-of-range knob, unknown key). CLI exit code 1.
struct InvalidConfig : std::runtime_error {
    explicit InvalidConfig(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data (exchange files, traces). CLI exit code 2.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pseudobox
