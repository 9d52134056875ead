#pragma once

#include <string>
#include <vector>

#include "tpc/analysis.hpp"
#include "tpc/bits.hpp"
#include "tpc/channel.hpp"
#include "tpc/params.hpp"

namespace tpc::io {

/// Single-line ASCII '0'/'1' file.
BitString read_bitstring(const std::string& path);
void write_bitstring(const std::string& path, const BitString& b);

/// One fragment per line, shuffled order.
std::vector<BitString> read_fragments(const std::string& path);
void write_fragments(const std::string& path, const std::vector<BitString>& frags);

/// Ground-truth sidecar: "offset,length" per line, original order.
struct TruthEntry {
  std::size_t offset = 0, length = 0;
};
std::vector<TruthEntry> read_truth(const std::string& path);
void write_truth(const std::string& path, const TearOutcome& out);

std::string params_to_json(const CodeParams& p);
std::string rate_reports_to_json(const std::vector<RateReport>& reports);
std::string rate_reports_to_csv(const std::vector<RateReport>& reports);
std::string tpclp_report_to_json(double alpha, const DeletionProfile& prof, const TpclpReport& rep);
std::string tpclp_report_to_csv(double alpha, const TpclpReport& rep);

}  // namespace tpc::io
