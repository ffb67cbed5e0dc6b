#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vpr/geometry.hpp"

namespace vpr {

// Mined pairs as JSON lines, one query per line:
//   {"query_id": "...", "positive_ids": [...], "negative_ids": [...],
//    "difficulty": "easy" | "semi_hard" | "hard" | null}
// Readers are strict: missing or unknown keys and duplicate queries are
// format errors naming the line.

void write_pairsets(std::ostream& out, const std::vector<PairSet>& pairs);
std::vector<PairSet> read_pairsets(std::istream& in);
void save_pairsets(const std::string& path, const std::vector<PairSet>& pairs);
std::vector<PairSet> load_pairsets(const std::string& path);

} // namespace vpr
