#pragma once

#include <stdexcept>
#include <string>

namespace cardioseis {

/// Bad input data or configuration (CLI exit code 2).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The analysis cannot proceed on this data: empty groups, zero-RMS
/// averages, constant templates (CLI exit code 3).
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cardioseis
