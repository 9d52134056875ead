// Command-line surface: parameter derivation, the encode/tear/filter/decode
// pipeline as file-to-file steps, the Monte Carlo roundtrip runner, and the
// rate/capacity calculators.
//
// Exit codes: 0 ok, 1 I/O error, 2 parameter error, 3 decode failure.
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "tpc/analysis.hpp"
#include "tpc/channel.hpp"
#include "tpc/codec.hpp"
#include "tpc/errors.hpp"
#include "tpc/io.hpp"

using namespace tpc;

namespace {

struct ParamFlags {
  std::size_t n_target = 1 << 16;
  unsigned m = 3;
  unsigned beta = 8;
  double delta = 0.5;
  double eta = 0.02;
  double alpha = 0.3;
  std::uint64_t code_seed = 0xC0DE;
  std::string matrix_mode = "auto";

  void attach(CLI::App* app) {
    app->add_option("--n", n_target, "target codeword length");
    app->add_option("--m", m, "interleaving factor");
    app->add_option("--beta", beta, "marker/RLL length");
    app->add_option("--delta", delta, "alignment slack");
    app->add_option("--eta", eta, "rate margin");
    app->add_option("--alpha", alpha, "channel breaking parameter");
    app->add_option("--code-seed", code_seed, "codebook matrix seed");
    app->add_option("--matrix", matrix_mode, "parity matrix mode: auto|uniform|systematic")
        ->check(CLI::IsMember({"auto", "uniform", "systematic"}));
  }

  CodeParams derive() const { return derive_params(n_target, m, alpha, beta, delta, eta); }

  Codebook build_codebook(const CodeParams& p) const {
    MatrixMode mode = matrix_mode == "uniform"      ? MatrixMode::uniform
                      : matrix_mode == "systematic" ? MatrixMode::systematic
                                                    : Codebook::default_mode(p);
    return Codebook::build(p, code_seed, mode);
  }
};

std::vector<DeletionPiece> parse_pieces(const std::vector<std::string>& specs) {
  std::vector<DeletionPiece> pieces;
  for (const auto& s : specs) {
    DeletionPiece p;
    std::istringstream ss(s);
    std::string lo, hi, d;
    if (!std::getline(ss, lo, ':') || !std::getline(ss, hi, ':') || !std::getline(ss, d))
      throw ParamInvalid("--piece expects lo:hi:d");
    p.lo = std::stod(lo);
    p.hi = (hi == "inf" || hi == "INF") ? std::numeric_limits<double>::infinity() : std::stod(hi);
    p.d = std::stod(d);
    pieces.push_back(p);
  }
  return pieces;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot open " + out_path + " for writing");
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  }
}

const char* cause_name(gf2::SolveStatus s) {
  switch (s) {
    case gf2::SolveStatus::rank_deficient: return "rank_deficient";
    case gf2::SolveStatus::inconsistent: return "inconsistent";
    default: return "";
  }
}

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t K = 0;
  double V_gamma = 0;
  std::vector<std::size_t> erasures;
  bool success = false;
  std::string cause;
  double ms = 0;
};

int run_roundtrip(const ParamFlags& pf, std::uint64_t seed, std::size_t trials, unsigned jobs,
                  const std::vector<DeletionPiece>& pieces, unsigned del_m,
                  const std::string& out_path) {
  const CodeParams params = pf.derive();
  const Codebook cb = pf.build_codebook(params);
  const ChannelParams ch = ChannelParams::from_alpha(params.n, params.alpha);
  std::optional<DeletionProfile> profile;
  if (!pieces.empty()) profile = DeletionProfile::threshold(del_m, pieces);

  std::vector<TrialRecord> records(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= trials) return;
      auto t0 = std::chrono::steady_clock::now();
      TrialRecord rec;
      rec.index = i;
      rec.seed = seed + i;
      Rng trial_rng(rec.seed);
      Rng msg_rng = trial_rng.split(1), tear_rng = trial_rng.split(2), del_rng = trial_rng.split(3);

      BitString msg(message_capacity(params));
      for (std::size_t b = 0; b < msg.size(); ++b) msg.set(b, msg_rng.bernoulli(0.5));
      BitString cw = encode(msg, cb);
      TearOutcome out = tear(cw, ch, tear_rng);
      if (profile) out = tpclp_filter(out, *profile, del_rng);
      rec.K = out.K();
      rec.V_gamma = coverage(out, params.gamma);

      DecodeResult dr = decode(out.shuffled_view, cb);
      rec.erasures = dr.diag.erasures_per_stream;
      if (dr.success && dr.message == msg) {
        rec.success = true;
      } else if (dr.success) {
        rec.success = false;
        rec.cause = "mismatch";  // must never happen; surfaced loudly in the CSV
      } else {
        rec.cause = cause_name(dr.failure);
      }
      rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      records[i] = std::move(rec);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::ostringstream csv;
  csv << "trial,seed,K,V_gamma,";
  for (unsigned j = 1; j < params.m; ++j) csv << "erasures_" << j << ',';
  csv << "success,cause,ms\n";
  std::size_t ok = 0;
  double sum_v = 0, sum_k = 0;
  for (const auto& rec : records) {
    csv << rec.index << ',' << rec.seed << ',' << rec.K << ',' << rec.V_gamma << ',';
    for (unsigned j = 0; j + 1 < params.m; ++j)
      csv << (j < rec.erasures.size() ? rec.erasures[j] : 0) << ',';
    csv << (rec.success ? 1 : 0) << ',' << rec.cause << ',' << rec.ms << '\n';
    ok += rec.success;
    sum_v += rec.V_gamma;
    sum_k += (double)rec.K;
  }
  if (trials > 0) {
    csv << "summary,,mean_K=" << sum_k / trials << ",mean_V=" << sum_v / trials << ',';
    for (unsigned j = 0; j + 1 < params.m; ++j) csv << ',';
    csv << "rate=" << (double)ok / trials << ",,\n";
  } else {
    csv << "summary,,mean_K=0,mean_V=0,rate=0,,\n";
  }
  emit(csv.str(), out_path);
  std::cerr << "roundtrip: " << ok << "/" << trials << " succeeded\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torn-paper coding via local alignment"};
  app.require_subcommand(1);

  // params
  auto* c_params = app.add_subcommand("params", "derive and print code parameters");
  ParamFlags pf_params;
  pf_params.attach(c_params);

  // encode
  auto* c_encode = app.add_subcommand("encode", "message file -> codeword file");
  ParamFlags pf_encode;
  pf_encode.attach(c_encode);
  std::string enc_in, enc_out;
  c_encode->add_option("--in", enc_in, "message file")->required();
  c_encode->add_option("--out", enc_out, "codeword file")->required();

  // tear
  auto* c_tear = app.add_subcommand("tear", "codeword file -> shuffled fragments file");
  std::string tear_in, tear_out, tear_truth;
  std::uint64_t tear_seed = 0;
  double tear_alpha = 0.3, tear_p = -1;
  c_tear->add_option("--in", tear_in)->required();
  c_tear->add_option("--out", tear_out)->required();
  c_tear->add_option("--truth", tear_truth, "ground-truth sidecar (offset,length)");
  c_tear->add_option("--seed", tear_seed)->required();
  c_tear->add_option("--alpha", tear_alpha, "breaking parameter (p = alpha/log2 n)");
  c_tear->add_option("--p", tear_p, "direct break probability, overrides --alpha");

  // filter
  auto* c_filter = app.add_subcommand("filter", "drop fragments per a TPC-LP deletion profile");
  std::string fil_in, fil_out;
  std::uint64_t fil_seed = 0;
  std::size_t fil_n = 0;
  unsigned fil_m = 10;
  std::vector<std::string> fil_pieces;
  c_filter->add_option("--in", fil_in)->required();
  c_filter->add_option("--out", fil_out)->required();
  c_filter->add_option("--seed", fil_seed)->required();
  c_filter->add_option("--n", fil_n, "codeword length (for the log2 n threshold)")->required();
  c_filter->add_option("--del-m", fil_m, "threshold multiplier m");
  c_filter->add_option("--piece", fil_pieces, "deletion piece lo:hi:d above the threshold");

  // decode
  auto* c_decode = app.add_subcommand("decode", "fragments file -> message file");
  ParamFlags pf_decode;
  pf_decode.attach(c_decode);
  std::string dec_in, dec_out, dec_truth;
  c_decode->add_option("--in", dec_in)->required();
  c_decode->add_option("--out", dec_out)->required();
  c_decode->add_option("--truth", dec_truth, "verify alignment against a ground-truth sidecar");

  // roundtrip
  auto* c_round = app.add_subcommand("roundtrip", "seeded end-to-end Monte Carlo, CSV per trial");
  ParamFlags pf_round;
  pf_round.attach(c_round);
  std::uint64_t round_seed = 1;
  std::size_t round_trials = 10;
  unsigned round_jobs = 1, round_del_m = 10;
  std::vector<std::string> round_pieces;
  std::string round_out;
  c_round->add_option("--seed", round_seed);
  c_round->add_option("--trials", round_trials);
  c_round->add_option("--jobs", round_jobs);
  c_round->add_option("--piece", round_pieces, "optional TPC-LP deletion pieces lo:hi:d");
  c_round->add_option("--del-m", round_del_m, "TPC-LP threshold multiplier");
  c_round->add_option("--out", round_out, "CSV path (stdout if omitted)");

  // rates
  auto* c_rates = app.add_subcommand("rates", "achievable/baseline/capacity table");
  std::vector<double> rate_alphas;
  unsigned rates_mmax = 10000;
  bool rates_json = false;
  std::string rates_out;
  c_rates->add_option("--alpha", rate_alphas, "alpha grid (default 0.1..1.5 step 0.1)");
  c_rates->add_option("--m-max", rates_mmax);
  c_rates->add_flag("--json", rates_json, "emit JSON instead of CSV");
  c_rates->add_option("--out", rates_out);

  // tpclp
  auto* c_tpclp = app.add_subcommand("tpclp", "TPC-LP capacity/rate for a deletion profile");
  double tp_alpha = 0.1;
  unsigned tp_m = 10;
  std::vector<std::string> tp_pieces;
  bool tp_json = false;
  std::string tp_out;
  c_tpclp->add_option("--alpha", tp_alpha)->required();
  c_tpclp->add_option("--m", tp_m, "threshold multiplier")->required();
  c_tpclp->add_option("--piece", tp_pieces, "pieces lo:hi:d covering [m, inf)")->required();
  c_tpclp->add_flag("--json", tp_json);
  c_tpclp->add_option("--out", tp_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_params) {
      emit(io::params_to_json(pf_params.derive()), "");
      return 0;
    }
    if (*c_encode) {
      const CodeParams p = pf_encode.derive();
      const Codebook cb = pf_encode.build_codebook(p);
      BitString msg = io::read_bitstring(enc_in);
      io::write_bitstring(enc_out, encode(msg, cb));
      return 0;
    }
    if (*c_tear) {
      BitString cw = io::read_bitstring(tear_in);
      ChannelParams ch = tear_p >= 0 ? ChannelParams::from_p(cw.size(), tear_p)
                                     : ChannelParams::from_alpha(cw.size(), tear_alpha);
      Rng rng(tear_seed);
      TearOutcome out = tear(cw, ch, rng);
      io::write_fragments(tear_out, out.shuffled_view);
      if (!tear_truth.empty()) io::write_truth(tear_truth, out);
      return 0;
    }
    if (*c_filter) {
      std::vector<BitString> frags = io::read_fragments(fil_in);
      DeletionProfile prof = DeletionProfile::threshold(fil_m, parse_pieces(fil_pieces));
      TearOutcome pseudo;
      pseudo.n = fil_n;
      for (auto& f : frags) pseudo.fragments.push_back({0, std::move(f)});
      Rng rng(fil_seed);
      TearOutcome kept = tpclp_filter(pseudo, prof, rng);
      io::write_fragments(fil_out, kept.shuffled_view);
      return 0;
    }
    if (*c_decode) {
      const CodeParams p = pf_decode.derive();
      const Codebook cb = pf_decode.build_codebook(p);
      std::vector<BitString> frags = io::read_fragments(dec_in);
      DecodeResult res = decode(frags, cb);
      const auto& d = res.diag;
      std::cerr << "fragments: " << d.fragments_total << " total, " << d.fragments_used
                << " used, " << d.too_short << " too short, " << d.no_pilot << " no pilot, "
                << d.ambiguous_pilot << " ambiguous, " << d.window_not_found
                << " window not found, " << d.offset_out_of_range << " out of range, "
                << d.conflicts << " conflicts\n";
      std::cerr << "erasures per stream:";
      for (auto e : d.erasures_per_stream) std::cerr << ' ' << e;
      std::cerr << '\n';
      if (!dec_truth.empty()) {
        // oracle mode: every placed fragment must match a ground-truth piece
        auto truth = io::read_truth(dec_truth);
        std::multiset<std::pair<std::size_t, std::size_t>> truth_set;
        for (const auto& t : truth) truth_set.insert({t.offset, t.length});
        std::size_t mismatches = 0;
        for (const auto& f : frags) {
          AlignOutcome a = align_fragment(f, cb);
          if (a.drop != FragmentDrop::none) continue;
          auto it = truth_set.find({a.offset, f.size()});
          if (it == truth_set.end())
            ++mismatches;
          else
            truth_set.erase(it);
        }
        std::cerr << "alignment oracle: " << mismatches << " mismatches\n";
        if (mismatches > 0) return 3;
      }
      if (!res.success) {
        std::cerr << "decode failed: stream " << res.failed_stream << " "
                  << cause_name(res.failure) << '\n';
        return 3;
      }
      io::write_bitstring(dec_out, res.message);
      return 0;
    }
    if (*c_round)
      return run_roundtrip(pf_round, round_seed, round_trials, round_jobs,
                           parse_pieces(round_pieces), round_del_m, round_out);
    if (*c_rates) {
      if (rate_alphas.empty())
        for (int i = 1; i <= 15; ++i) rate_alphas.push_back(i / 10.0);
      auto reports = rate_table(rate_alphas, rates_mmax);
      emit(rates_json ? io::rate_reports_to_json(reports) : io::rate_reports_to_csv(reports),
           rates_out);
      return 0;
    }
    if (*c_tpclp) {
      DeletionProfile prof = DeletionProfile::threshold(tp_m, parse_pieces(tp_pieces));
      TpclpReport rep = tpclp_report(tp_alpha, prof);
      emit(tp_json ? io::tpclp_report_to_json(tp_alpha, prof, rep)
                   : io::tpclp_report_to_csv(tp_alpha, rep),
           tp_out);
      return 0;
    }
  } catch (const ParamInvalid& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const LengthMismatch& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
