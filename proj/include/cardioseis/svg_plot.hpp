#pragma once

#include "cardioseis/signal_core.hpp"

#include <string>
#include <vector>

namespace cardioseis::svg {

struct Series {
    std::string name;
    Waveform y;
    std::string color;
};

struct Panel {
    std::string title;
    std::vector<Series> series;
};

/// Stacked line-plot panels sharing a time axis (seconds, x = i / fs).
std::string line_panels(const std::vector<Panel>& panels, double fs, const std::string& title);

struct Bar {
    std::string label;
    double value;
    std::string color;
};

std::string bar_chart(const std::vector<Bar>& bars, const std::string& title, const std::string& y_label);

}  // namespace cardioseis::svg
