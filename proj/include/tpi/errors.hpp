#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tpi {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No admissible TPI schedule for the given spectrum or knobs.
struct ScheduleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integration left the stable regime (growth detector or non-finite values).
struct BlowUpError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteError : BlowUpError {
    std::size_t cell;
    NonFiniteError(const std::string& what, std::size_t c) : BlowUpError(what), cell(c) {}
};

}  // namespace tpi
