#include "cardioseis/report.hpp"

#include "cardioseis/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cardioseis {

namespace {

using json = nlohmann::ordered_json;

constexpr std::array<Group, 4> kGroupOrder{Group::Inspiration, Group::Expiration, Group::LLV, Group::HLV};
constexpr std::array<const char*, 2> kPairNames{"Inspiration/LLV", "Expiration/HLV"};

Criterion criterion_of(Group g)
{
    return (g == Group::Inspiration || g == Group::Expiration) ? Criterion::FlowRate : Criterion::LungVolume;
}

Group parse_group(const std::string& s)
{
    for (Group g : kGroupOrder)
        if (to_string(g) == s) return g;
    throw InputError("report: unknown group '" + s + "'");
}

Winner parse_winner(const std::string& s)
{
    for (Winner w : {Winner::FlowRate, Winner::LungVolume, Winner::Tie})
        if (to_string(w) == s) return w;
    throw InputError("report: unknown winner '" + s + "'");
}

void sort_rows(std::vector<ReportRow>& rows)
{
    std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) { return a.id < b.id; });
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

ReportRow make_row(const std::string& id, const CriterionComparison& cmp, std::size_t detected, std::size_t screened)
{
    ReportRow row;
    row.id = id;
    row.events_detected = detected;
    row.events_screened_out = screened;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& s = cmp.stats[i];
        row.groups[i] = {s.group, s.n, s.same.mean, s.same.sd, s.alt.mean, s.alt.sd, s.rd};
    }
    row.pair_winner = cmp.pair_winner;
    row.overall = cmp.overall;
    return row;
}

std::string report_json(std::vector<ReportRow> rows)
{
    sort_rows(rows);
    json root;
    root["format"] = "cardioseis-report";
    root["version"] = 1;
    root["rows"] = json::array();
    for (const auto& r : rows) {
        json jr;
        jr["id"] = r.id;
        jr["events_detected"] = r.events_detected;
        jr["events_screened_out"] = r.events_screened_out;
        jr["groups"] = json::array();
        for (const auto& g : r.groups) {
            json jg;
            jg["group"] = to_string(g.group);
            jg["criterion"] = to_string(criterion_of(g.group));
            jg["n"] = g.n;
            jg["same_mean"] = g.same_mean;
            jg["same_sd"] = g.same_sd;
            jg["alt_mean"] = g.alt_mean;
            jg["alt_sd"] = g.alt_sd;
            jg["rd"] = g.rd;
            jr["groups"].push_back(jg);
        }
        jr["winners"][kPairNames[0]] = to_string(r.pair_winner[0]);
        jr["winners"][kPairNames[1]] = to_string(r.pair_winner[1]);
        jr["winners"]["overall"] = to_string(r.overall);
        root["rows"].push_back(jr);
    }
    return root.dump(2) + "\n";
}

std::string report_csv(std::vector<ReportRow> rows)
{
    sort_rows(rows);
    std::ostringstream os;
    os << "id,group,criterion,n,same_mean,same_sd,alt_mean,alt_sd,rd,pair_winner,overall_winner\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < 4; ++i) {
            const auto& g = r.groups[i];
            os << r.id << ',' << to_string(g.group) << ',' << to_string(criterion_of(g.group)) << ',' << g.n << ','
               << fmt(g.same_mean) << ',' << fmt(g.same_sd) << ',' << fmt(g.alt_mean) << ',' << fmt(g.alt_sd) << ','
               << fmt(g.rd) << ',' << to_string(r.pair_winner[i % 2]) << ',' << to_string(r.overall) << '\n';
        }
    }
    return os.str();
}

std::vector<ReportRow> parse_report_json(const std::string& text)
{
    std::vector<ReportRow> rows;
    try {
        const json root = json::parse(text);
        if (root.value("format", std::string{}) != "cardioseis-report")
            throw InputError("report: not a cardioseis report (format field)");
        if (root.value("version", 0) != 1) throw InputError("report: unsupported version");
        for (const auto& jr : root.at("rows")) {
            ReportRow r;
            r.id = jr.at("id").get<std::string>();
            r.events_detected = jr.value("events_detected", std::size_t{0});
            r.events_screened_out = jr.value("events_screened_out", std::size_t{0});
            const auto& groups = jr.at("groups");
            if (groups.size() != 4) throw InputError("report: row '" + r.id + "' must have 4 groups");
            for (std::size_t i = 0; i < 4; ++i) {
                const auto& jg = groups[i];
                GroupRow g;
                g.group = parse_group(jg.at("group").get<std::string>());
                if (g.group != kGroupOrder[i]) throw InputError("report: row '" + r.id + "' groups out of order");
                g.n = jg.at("n").get<std::size_t>();
                g.same_mean = jg.at("same_mean").get<double>();
                g.same_sd = jg.at("same_sd").get<double>();
                g.alt_mean = jg.at("alt_mean").get<double>();
                g.alt_sd = jg.at("alt_sd").get<double>();
                g.rd = jg.at("rd").get<double>();
                r.groups[i] = g;
            }
            const auto& w = jr.at("winners");
            r.pair_winner[0] = parse_winner(w.at(kPairNames[0]).get<std::string>());
            r.pair_winner[1] = parse_winner(w.at(kPairNames[1]).get<std::string>());
            r.overall = parse_winner(w.at("overall").get<std::string>());
            rows.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("report: malformed JSON: ") + e.what());
    }
    return rows;
}

CheckResult check_report(const std::vector<ReportRow>& rows, double rd_tol)
{
    CheckResult res;
    auto fail = [&](const std::string& msg) {
        res.ok = false;
        res.problems.push_back(msg);
    };
    for (const auto& r : rows) {
        for (const auto& g : r.groups) {
            const std::string where = r.id + "/" + std::string(to_string(g.group));
            if (!(g.same_mean > 0.0)) {
                fail(where + ": same-group mean must be positive");
                continue;
            }
            if (g.same_mean < 0 || g.alt_mean < 0 || g.same_sd < 0 || g.alt_sd < 0) fail(where + ": negative dissimilarity");
            const double rd = relative_difference(g.same_mean, g.alt_mean);
            if (std::abs(rd - g.rd) > rd_tol) {
                std::ostringstream os;
                os << where << ": stored rd " << g.rd << " but means give " << rd;
                fail(os.str());
            }
        }
        const Winner w0 = pick_winner(r.groups[0].rd, r.groups[2].rd);
        const Winner w1 = pick_winner(r.groups[1].rd, r.groups[3].rd);
        const Winner wo = pick_winner((r.groups[0].rd + r.groups[1].rd) / 2.0, (r.groups[2].rd + r.groups[3].rd) / 2.0);
        if (w0 != r.pair_winner[0]) fail(r.id + ": " + kPairNames[0] + " winner inconsistent with rd values");
        if (w1 != r.pair_winner[1]) fail(r.id + ": " + kPairNames[1] + " winner inconsistent with rd values");
        if (wo != r.overall) fail(r.id + ": overall winner inconsistent with rd values");
    }
    return res;
}

}  // namespace cardioseis
