#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "tpc/channel.hpp"
#include "tpc/errors.hpp"
#include "tpc/io.hpp"

using namespace tpc;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("tpc_io_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("bitstring file round trip") {
  TempDir tmp;
  BitString b = BitString::from_string("0101110001");
  io::write_bitstring(tmp.file("x.txt"), b);
  CHECK(io::read_bitstring(tmp.file("x.txt")) == b);

  std::ofstream bad(tmp.file("bad.txt"));
  bad << "01x0\n";
  bad.close();
  CHECK_THROWS_AS(io::read_bitstring(tmp.file("bad.txt")), IoError);
  CHECK_THROWS_AS(io::read_bitstring(tmp.file("missing.txt")), IoError);
}

TEST_CASE("fragment and truth files") {
  TempDir tmp;
  Rng rng(3);
  BitString x(300);
  for (std::size_t i = 0; i < x.size(); ++i) x.set(i, rng.bernoulli(0.5));
  TearOutcome out = tear(x, ChannelParams::from_p(300, 0.05), rng);

  io::write_fragments(tmp.file("frags.txt"), out.shuffled_view);
  auto frags = io::read_fragments(tmp.file("frags.txt"));
  REQUIRE(frags.size() == out.shuffled_view.size());
  for (std::size_t i = 0; i < frags.size(); ++i) CHECK(frags[i] == out.shuffled_view[i]);

  io::write_truth(tmp.file("truth.txt"), out);
  auto truth = io::read_truth(tmp.file("truth.txt"));
  REQUIRE(truth.size() == out.fragments.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    CHECK(truth[i].offset == out.fragments[i].offset);
    CHECK(truth[i].length == out.fragments[i].bits.size());
  }
}

TEST_CASE("json serialization carries the derived fields") {
  CodeParams p = derive_params(1 << 14, 3, 0.3, 8, 0.5, 0.02);
  std::string j = io::params_to_json(p);
  CHECK(j.find("\"n_er\"") != std::string::npos);
  CHECK(j.find("\"R_er\"") != std::string::npos);
  CHECK(j.find("\"frag_threshold\"") != std::string::npos);
  CHECK(j.find("\"message_bits\"") != std::string::npos);

  auto reports = rate_table({0.1, 0.5});
  std::string csv = io::rate_reports_to_csv(reports);
  CHECK(csv.find("alpha,m_opt_baseline") == 0);
  CHECK(csv.find("\n0.1,4,0.607,6,0.732,0.905\n") != std::string::npos);
}
