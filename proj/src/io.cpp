#include "tpc/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tpc/errors.hpp"

namespace tpc::io {

using nlohmann::json;

BitString read_bitstring(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  std::getline(in, line);
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
  try {
    return BitString::from_string(line);
  } catch (const std::invalid_argument&) {
    throw IoError(path + ": expected a line of '0'/'1'");
  }
}

void write_bitstring(const std::string& path, const BitString& b) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << b.to_string() << '\n';
  if (!out) throw IoError("write failed: " + path);
}

std::vector<BitString> read_fragments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<BitString> frags;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    try {
      frags.push_back(BitString::from_string(line));
    } catch (const std::invalid_argument&) {
      throw IoError(path + ": expected lines of '0'/'1'");
    }
  }
  return frags;
}

void write_fragments(const std::string& path, const std::vector<BitString>& frags) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (const auto& f : frags) out << f.to_string() << '\n';
  if (!out) throw IoError("write failed: " + path);
}

std::vector<TruthEntry> read_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<TruthEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    TruthEntry e;
    char comma = 0;
    if (!(ss >> e.offset >> comma >> e.length) || comma != ',')
      throw IoError(path + ": expected 'offset,length' lines");
    entries.push_back(e);
  }
  return entries;
}

void write_truth(const std::string& path, const TearOutcome& out) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path + " for writing");
  for (const auto& frag : out.fragments) f << frag.offset << ',' << frag.bits.size() << '\n';
  if (!f) throw IoError("write failed: " + path);
}

std::string params_to_json(const CodeParams& p) {
  json j{{"n_target", p.n_target},
         {"n", p.n},
         {"m", p.m},
         {"beta", p.beta},
         {"delta", p.delta},
         {"eta", p.eta},
         {"alpha", p.alpha},
         {"L", p.L},
         {"B", p.B},
         {"n_er", p.n_er},
         {"r", p.r},
         {"R_er", p.R_er},
         {"gamma", p.gamma},
         {"q_len", p.q_len},
         {"order", p.order},
         {"w", p.w},
         {"min_frag_len", p.min_frag_len},
         {"frag_threshold", p.frag_threshold},
         {"lemma8_margin_ok", p.lemma8_margin_ok},
         {"p_n", p.p_n},
         {"message_bits", message_capacity(p)}};
  return j.dump(2);
}

std::string rate_reports_to_json(const std::vector<RateReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports)
    arr.push_back(json{{"alpha", r.alpha},
                       {"m_opt_baseline", r.m_opt_baseline},
                       {"baseline", r.baseline},
                       {"m_opt", r.m_opt},
                       {"achievable", r.achievable},
                       {"capacity", r.capacity}});
  return arr.dump(2);
}

std::string rate_reports_to_csv(const std::vector<RateReport>& reports) {
  std::ostringstream out;
  out << "alpha,m_opt_baseline,baseline_rate,m_opt,achievable_rate,capacity\n";
  for (const auto& r : reports) {
    out << r.alpha << ',' << r.m_opt_baseline << ',' << round_half_even(r.baseline, 3) << ','
        << r.m_opt << ',' << round_half_even(r.achievable, 3) << ','
        << round_half_even(r.capacity, 3) << '\n';
  }
  return out.str();
}

std::string tpclp_report_to_json(double alpha, const DeletionProfile& prof,
                                 const TpclpReport& rep) {
  json pieces = json::array();
  for (const auto& p : prof.pieces)
    pieces.push_back(json{{"lo", p.lo}, {"hi", std::isinf(p.hi) ? json("inf") : json(p.hi)}, {"d", p.d}});
  json j{{"alpha", alpha},
         {"m", prof.m_threshold},
         {"pieces", pieces},
         {"capacity", rep.capacity},
         {"F_d", rep.F_d},
         {"R_ach", rep.R_ach},
         {"gap", rep.gap},
         {"gap_bound", rep.gap_bound}};
  return j.dump(2);
}

std::string tpclp_report_to_csv(double alpha, const TpclpReport& rep) {
  std::ostringstream out;
  out << "alpha,capacity,F_d,R_ach,gap,gap_bound\n";
  out << alpha << ',' << rep.capacity << ',' << rep.F_d << ',' << rep.R_ach << ',' << rep.gap
      << ',' << rep.gap_bound << '\n';
  return out.str();
}

}  // namespace tpc::io
