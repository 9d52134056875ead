#include <cmath>

#include "doctest.h"
#include "tpc/channel.hpp"
#include "tpc/errors.hpp"

using namespace tpc;

namespace {

BitString random_word(std::size_t n, Rng& rng) {
  BitString x(n);
  for (auto& w : x.words()) w = rng.next_u64();
  if (n & 63) x.words().back() &= (u64(1) << (n & 63)) - 1;
  return x;
}

}  // namespace

TEST_CASE("tear degenerate probabilities") {
  Rng rng(1);
  BitString x = random_word(500, rng);

  Rng r0(2);
  TearOutcome one = tear(x, ChannelParams::from_p(500, 0.0), r0);
  CHECK(one.K() == 1);
  CHECK(one.fragments[0].bits == x);

  Rng r1(2);
  TearOutcome all = tear(x, ChannelParams::from_p(500, 1.0), r1);
  CHECK(all.K() == 500);
  for (const auto& f : all.fragments) CHECK(f.bits.size() == 1);
}

TEST_CASE("fragments partition the input and reassemble exactly") {
  Rng rng(3);
  BitString x = random_word(4096, rng);
  TearOutcome out = tear(x, ChannelParams::from_alpha(4096, 0.5), rng);

  std::size_t at = 0;
  BitString glued;
  for (const auto& f : out.fragments) {
    CHECK(f.offset == at);
    at += f.bits.size();
    glued.append(f.bits);
  }
  CHECK(at == 4096);
  CHECK(glued == x);
  CHECK(out.shuffled_view.size() == out.fragments.size());

  // deterministic given the seed
  Rng ra(9), rb(9);
  TearOutcome a = tear(x, ChannelParams::from_alpha(4096, 0.5), ra);
  TearOutcome b = tear(x, ChannelParams::from_alpha(4096, 0.5), rb);
  REQUIRE(a.K() == b.K());
  for (std::size_t i = 0; i < a.K(); ++i) CHECK(a.shuffled_view[i] == b.shuffled_view[i]);
}

TEST_CASE("mean fragment length approaches 1/p") {
  const std::size_t n = 1000000;
  ChannelParams ch = ChannelParams::from_alpha(n, 0.5);
  Rng rng(17);
  BitString x = random_word(n, rng);
  double mean_len = 0;
  const int seeds = 50;
  for (int s = 0; s < seeds; ++s) {
    Rng r(100 + s);
    TearOutcome out = tear(x, ch, r);
    mean_len += (double)n / (double)out.K();
  }
  mean_len /= seeds;
  CHECK(std::abs(mean_len - 1.0 / ch.p_n) / (1.0 / ch.p_n) < 0.02);
}

TEST_CASE("coverage formula and concentration") {
  const std::size_t n = 1000000;
  ChannelParams ch = ChannelParams::from_alpha(n, 0.5);
  Rng xr(5);
  BitString x = random_word(n, xr);

  Rng r(1234);
  TearOutcome out = tear(x, ch, r);
  CHECK(coverage(out, 0.0) == doctest::Approx(1.0));

  double mean_v = 0;
  const int seeds = 40;
  for (int s = 0; s < seeds; ++s) {
    Rng rr(500 + s);
    mean_v += coverage(tear(x, ch, rr), 3.0);
  }
  mean_v /= seeds;
  const double expect = (0.5 * 3 + 1) * std::exp(-1.5);  // 0.5578
  CHECK(std::abs(mean_v - expect) < 0.01);
}

TEST_CASE("fragment count concentrates near n*p") {
  const std::size_t n = 1000000;
  ChannelParams ch = ChannelParams::from_alpha(n, 0.5);
  Rng xr(6);
  BitString x = random_word(n, xr);
  for (int s = 0; s < 10; ++s) {
    Rng r(900 + s);
    TearOutcome out = tear(x, ch, r);
    double ratio = (double)out.K() / ((double)n * ch.p_n);
    CHECK(ratio > 0.95);
    CHECK(ratio < 1.05);
  }
}

TEST_CASE("deletion profile validation and lookup") {
  auto prof = DeletionProfile::threshold(
      10, {{10, 20, 0.2}, {20, std::numeric_limits<double>::infinity(), 0.0}});
  CHECK(prof.d_at(5) == 1.0);
  CHECK(prof.d_at(10) == 0.2);
  CHECK(prof.d_at(19.99) == 0.2);
  CHECK(prof.d_at(20) == 0.0);
  CHECK(prof.d_at(1e9) == 0.0);

  CHECK_THROWS_AS(DeletionProfile::threshold(10, {{11, 20, 0.2}}), ParamInvalid);  // gap
  CHECK_THROWS_AS(DeletionProfile::threshold(10, {{10, 20, 0.2}}), ParamInvalid);  // no tail
  CHECK_THROWS_AS(
      DeletionProfile::threshold(10, {{10, std::numeric_limits<double>::infinity(), 1.0}}),
      ParamInvalid);  // d = 1 above threshold
}

TEST_CASE("tpclp_filter threshold and degenerate profiles") {
  const std::size_t n = 1 << 16;
  Rng xr(7);
  BitString x = random_word(n, xr);
  Rng tr(42);
  TearOutcome out = tear(x, ChannelParams::from_alpha(n, 0.3), tr);

  const double log2n = std::log2((double)n);
  auto keep_all = DeletionProfile::threshold(
      2, {{2, std::numeric_limits<double>::infinity(), 0.0}});
  Rng fr(1);
  TearOutcome kept = tpclp_filter(out, keep_all, fr);
  const std::size_t min_len = (std::size_t)std::ceil(2 * log2n);
  std::size_t expect = 0;
  for (const auto& f : out.fragments)
    if (f.bits.size() >= min_len) ++expect;
  CHECK(kept.K() == expect);
  for (const auto& f : kept.fragments) CHECK(f.bits.size() >= min_len);

  // d = 1 everywhere below an enormous threshold: nothing survives
  auto drop_all = DeletionProfile::threshold(
      10000, {{10000, std::numeric_limits<double>::infinity(), 0.0}});
  Rng fr2(1);
  CHECK(tpclp_filter(out, drop_all, fr2).K() == 0);
}

TEST_CASE("surviving coverage matches F_d on the worked profile") {
  // alpha = 0.1, d = 0.2 on [10,20), 0 above: F_d = 0.6698
  const std::size_t n = 1 << 20;
  Rng xr(8);
  BitString x = random_word(n, xr);
  ChannelParams ch = ChannelParams::from_alpha(n, 0.1);
  auto prof = DeletionProfile::threshold(
      10, {{10, 20, 0.2}, {20, std::numeric_limits<double>::infinity(), 0.0}});
  double mean = 0;
  const int seeds = 50;
  for (int s = 0; s < seeds; ++s) {
    Rng r(7000 + s);
    TearOutcome out = tear(x, ch, r);
    TearOutcome kept = tpclp_filter(out, prof, r);
    std::size_t covered = 0;
    for (const auto& f : kept.fragments) covered += f.bits.size();
    mean += (double)covered / (double)n;
  }
  mean /= seeds;
  CHECK(std::abs(mean - 0.6698) < 0.01);
}

TEST_CASE("fragment_stats") {
  Rng xr(9);
  BitString x = random_word(1 << 14, xr);
  Rng r(10);
  TearOutcome out = tear(x, ChannelParams::from_alpha(1 << 14, 0.3), r);
  CodeParams p = derive_params(1 << 14, 3, 0.3, 8, 0.5, 0.02);
  std::vector<std::size_t> eras = {100, (std::size_t)((1 - p.R_er) * p.n_er)};
  CoverageStats st = fragment_stats(out, p.gamma, &eras, &p);
  CHECK(st.K == out.K());
  CHECK(st.erasures_per_stream == eras);
  REQUIRE(st.good_set_member.size() == 2);
  CHECK(st.good_set_member[0]);        // tiny erasure count is good
  CHECK_FALSE(st.good_set_member[1]);  // at the 1-R_er boundary, above 1-R_er-eta
}
