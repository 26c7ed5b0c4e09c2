#pragma once

#include "cardioseis/grouping.hpp"

#include <array>
#include <string>
#include <vector>

namespace cardioseis {

struct GroupRow {
    Group group{};
    std::size_t n = 0;
    double same_mean = 0.0;
    double same_sd = 0.0;
    double alt_mean = 0.0;
    double alt_sd = 0.0;
    double rd = 0.0;
};

/// One recording's line of the dissimilarity table.
struct ReportRow {
    std::string id;
    std::size_t events_detected = 0;
    std::size_t events_screened_out = 0;
    std::array<GroupRow, 4> groups{};  // Inspiration, Expiration, LLV, HLV
    std::array<Winner, 2> pair_winner{};  // Inspiration/LLV, Expiration/HLV
    Winner overall = Winner::Tie;
};

ReportRow make_row(const std::string& id, const CriterionComparison& cmp, std::size_t detected, std::size_t screened);

/// Rows are emitted sorted by id.
std::string report_json(std::vector<ReportRow> rows);
std::string report_csv(std::vector<ReportRow> rows);

/// Parses a report produced by report_json. Throws InputError.
std::vector<ReportRow> parse_report_json(const std::string& text);

struct CheckResult {
    bool ok = true;
    std::vector<std::string> problems;
};

/// Recomputes every RD from its row's mean columns (tolerance rd_tol) and
/// re-derives the winner flags from the stored RDs.
CheckResult check_report(const std::vector<ReportRow>& rows, double rd_tol = 0.01);

}  // namespace cardioseis
