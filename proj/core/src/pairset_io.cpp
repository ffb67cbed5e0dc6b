#include "vpr/pairset_io.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

namespace vpr {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw FormatError("pairs line " + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> id_array(const json& value, std::size_t line_no,
                                  const char* key) {
    if (!value.is_array())
        fail(line_no, std::string(key) + " must be an array of ids");
    std::vector<std::string> out;
    out.reserve(value.size());
    for (const auto& item : value) {
        if (!item.is_string())
            fail(line_no, std::string(key) + " must hold strings only");
        out.push_back(item.get<std::string>());
    }
    return out;
}

} // namespace

void write_pairsets(std::ostream& out, const std::vector<PairSet>& pairs) {
    for (const auto& pair : pairs) {
        json row;
        row["query_id"] = pair.query_id;
        row["positive_ids"] = pair.positive_ids;
        row["negative_ids"] = pair.negative_ids;
        if (pair.difficulty)
            row["difficulty"] = to_string(*pair.difficulty);
        else
            row["difficulty"] = nullptr;
        out << row.dump() << '\n';
    }
    if (!out) throw FormatError("pairs write failed");
}

std::vector<PairSet> read_pairsets(std::istream& in) {
    std::vector<PairSet> pairs;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        json row;
        try {
            row = json::parse(line);
        } catch (const json::parse_error& e) {
            fail(line_no, e.what());
        }
        if (!row.is_object()) fail(line_no, "expected a JSON object");
        for (const auto& [key, value] : row.items()) {
            (void)value;
            if (key != "query_id" && key != "positive_ids" &&
                key != "negative_ids" && key != "difficulty")
                fail(line_no, "unknown key '" + key + "'");
        }
        for (const char* key :
             {"query_id", "positive_ids", "negative_ids", "difficulty"})
            if (!row.contains(key))
                fail(line_no, std::string("missing key '") + key + "'");

        PairSet pair;
        if (!row["query_id"].is_string())
            fail(line_no, "query_id must be a string");
        pair.query_id = row["query_id"].get<std::string>();
        if (!seen.insert(pair.query_id).second)
            fail(line_no, "duplicate query_id '" + pair.query_id + "'");
        pair.positive_ids = id_array(row["positive_ids"], line_no, "positive_ids");
        pair.negative_ids = id_array(row["negative_ids"], line_no, "negative_ids");
        const auto& difficulty = row["difficulty"];
        if (difficulty.is_null()) {
            pair.difficulty.reset();
        } else if (difficulty.is_string()) {
            try {
                pair.difficulty =
                    difficulty_from_string(difficulty.get<std::string>());
            } catch (const InvalidInput& e) {
                fail(line_no, e.what());
            }
        } else {
            fail(line_no, "difficulty must be a string or null");
        }
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

void save_pairsets(const std::string& path, const std::vector<PairSet>& pairs) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    write_pairsets(out, pairs);
}

std::vector<PairSet> load_pairsets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "' for reading");
    try {
        return read_pairsets(in);
    } catch (const FormatError& e) {
        throw FormatError("'" + path + "': " + e.what());
    }
}

} // namespace vpr
