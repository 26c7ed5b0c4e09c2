#pragma once

#include "cardioseis/signal_core.hpp"

#include <string>

namespace cardioseis {

/// Synchronized SCG (z-axis), ECG and respiratory flow channels.
struct Recording {
    std::string id;
    Channel scg;
    Channel ecg;
    Channel flow;

    double fs() const { return scg.fs; }
    std::size_t size() const { return scg.size(); }
};

/// Equal lengths, equal rates, finite samples. Throws InputError.
void validate(const Recording& rec);

}  // namespace cardioseis
