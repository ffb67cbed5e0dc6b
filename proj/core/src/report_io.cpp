#include "vpr/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace vpr {

namespace {

using nlohmann::json;

const char* kSubsetKeys[4] = {"overall", "easy", "hard", "semi_hard"};

const RecallSubset* subset_of(const RecallReport& report, int i) {
    switch (i) {
        case 0: return &report.overall;
        case 1: return &report.easy;
        case 2: return &report.hard;
        default: return &report.semi_hard;
    }
}

RecallSubset* subset_of(RecallReport& report, int i) {
    return const_cast<RecallSubset*>(
        subset_of(static_cast<const RecallReport&>(report), i));
}

std::string row(std::size_t k, const double* values, bool signed_fmt) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  signed_fmt ? "%-6zu%+9.2f%+9.2f%+9.2f%+9.2f\n"
                             : "%-6zu%9.2f%9.2f%9.2f%9.2f\n",
                  k, values[0], values[1], values[2], values[3]);
    return buf;
}

std::string header(const char* prefix) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "K     %9s%9s%9s%9s\n",
                  (std::string(prefix) + "R@K").c_str(),
                  (std::string(prefix) + "R@K(E)").c_str(),
                  (std::string(prefix) + "R@K(H)").c_str(),
                  (std::string(prefix) + "R@K(SH)").c_str());
    return buf;
}

} // namespace

std::string format_recall_table(const RecallReport& report) {
    std::string out = header("");
    for (std::size_t ki = 0; ki < report.ks.size(); ++ki) {
        double values[4];
        for (int s = 0; s < 4; ++s)
            values[s] = 100.0 * subset_of(report, s)->at(ki);
        out += row(report.ks[ki], values, false);
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "queries: %zu evaluated (easy %zu, semi_hard %zu, hard %zu), "
                  "%zu skipped\n",
                  report.overall.queries, report.easy.queries,
                  report.semi_hard.queries, report.hard.queries,
                  report.skipped);
    out += buf;
    return out;
}

std::string format_recall_comparison(const RecallReport& base,
                                     const RecallReport& other) {
    if (base.ks != other.ks)
        throw InvalidInput("recall comparison: reports use different K lists");
    std::string out = header("d");
    for (std::size_t ki = 0; ki < base.ks.size(); ++ki) {
        double values[4];
        for (int s = 0; s < 4; ++s)
            values[s] = 100.0 * (subset_of(other, s)->at(ki) -
                                 subset_of(base, s)->at(ki));
        out += row(base.ks[ki], values, true);
    }
    return out;
}

std::string recall_report_to_json(const RecallReport& report) {
    json doc;
    doc["ks"] = report.ks;
    doc["skipped"] = report.skipped;
    for (int s = 0; s < 4; ++s) {
        const RecallSubset* subset = subset_of(report, s);
        json entry;
        entry["queries"] = subset->queries;
        entry["hits"] = subset->hits;
        json recall = json::array();
        for (std::size_t ki = 0; ki < report.ks.size(); ++ki)
            recall.push_back(subset->at(ki));
        entry["recall"] = recall;
        doc[kSubsetKeys[s]] = entry;
    }
    return doc.dump(2) + "\n";
}

RecallReport recall_report_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("recall report: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("recall report: expected an object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "ks" && key != "skipped" && key != kSubsetKeys[0] &&
            key != kSubsetKeys[1] && key != kSubsetKeys[2] &&
            key != kSubsetKeys[3])
            throw FormatError("recall report: unknown key '" + key + "'");
    }
    RecallReport report;
    if (!doc.contains("ks") || !doc["ks"].is_array())
        throw FormatError("recall report: missing ks array");
    for (const auto& k : doc["ks"]) {
        if (!k.is_number_unsigned() || k.get<std::size_t>() == 0)
            throw FormatError("recall report: ks must be positive integers");
        report.ks.push_back(k.get<std::size_t>());
    }
    report.skipped = doc.value("skipped", std::size_t{0});
    for (int s = 0; s < 4; ++s) {
        if (!doc.contains(kSubsetKeys[s]))
            throw FormatError(std::string("recall report: missing subset '") +
                              kSubsetKeys[s] + "'");
        const json& entry = doc[kSubsetKeys[s]];
        RecallSubset* subset = subset_of(report, s);
        if (!entry.contains("queries") || !entry["queries"].is_number_unsigned())
            throw FormatError("recall report: subset lacks a queries count");
        subset->queries = entry["queries"].get<std::size_t>();
        if (!entry.contains("hits") || !entry["hits"].is_array() ||
            entry["hits"].size() != report.ks.size())
            throw FormatError(
                "recall report: subset hits must align with the ks list");
        for (const auto& h : entry["hits"]) {
            if (!h.is_number_unsigned())
                throw FormatError("recall report: hits must be non-negative");
            subset->hits.push_back(h.get<std::size_t>());
        }
    }
    return report;
}

void save_recall_report(const std::string& path, const RecallReport& report) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    out << recall_report_to_json(report);
    if (!out.good()) throw FormatError("short write to '" + path + "'");
}

RecallReport load_recall_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return recall_report_from_json(buffer.str());
    } catch (const FormatError& e) {
        throw FormatError("'" + path + "': " + e.what());
    }
}

} // namespace vpr
