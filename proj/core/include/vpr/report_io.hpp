#pragma once

#include <string>

#include "vpr/retrieval.hpp"

namespace vpr {

// Text table, one row per K, recall in percent with two decimals:
//   K     R@K     R@K(E)  R@K(H)  R@K(SH)
std::string format_recall_table(const RecallReport& report);

// Same layout showing point deltas of `other` minus `base`; the two reports
// must share their K list.
std::string format_recall_comparison(const RecallReport& base,
                                     const RecallReport& other);

std::string recall_report_to_json(const RecallReport& report);
RecallReport recall_report_from_json(const std::string& text);
void save_recall_report(const std::string& path, const RecallReport& report);
RecallReport load_recall_report(const std::string& path);

} // namespace vpr
