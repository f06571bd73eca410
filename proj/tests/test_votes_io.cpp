#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "circdfm/votes_io.hpp"

using namespace circdfm;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("parse basic file with NA service extension") {
  const auto p = write_temp("votes_basic.csv",
                            "unit_id,period,item_id,vote\n"
                            "alice,1990,c1,1\n"
                            "bob,1990,c1,0\n"
                            "carol,1990,c1,NA\n");
  const VoteDataset ds = parse_votes(p);
  CHECK(ds.n_units() == 3);
  CHECK(ds.n_periods() == 1);
  CHECK(ds.n_items(0) == 1);
  CHECK(ds.n_observed_votes() == 2);
  // all three units are in service, including the NA-only one
  for (int i = 0; i < 3; ++i) {
    CHECK(ds.service(i).lo == 0);
    CHECK(ds.service(i).hi == 0);
  }
  CHECK(ds.item_votes(0, 0).size() == 2);
}

TEST_CASE("empty file and missing rows error") {
  const auto p = write_temp("votes_empty.csv", "");
  CHECK_THROWS_WITH_AS(parse_votes(p), "no vote records", ValidationError);
  const auto p2 = write_temp("votes_header_only.csv",
                             "unit_id,period,item_id,vote\n");
  CHECK_THROWS_WITH_AS(parse_votes(p2), "no vote records", ValidationError);
}

TEST_CASE("duplicate key error carries the line number") {
  const auto p = write_temp("votes_dup.csv",
                            "unit_id,period,item_id,vote\n"
                            "a,1,c1,1\n"
                            "a,1,c1,0\n");
  try {
    parse_votes(p);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }
}

TEST_CASE("bad vote value and malformed row") {
  const auto p = write_temp("votes_bad.csv",
                            "unit_id,period,item_id,vote\n"
                            "a,1,c1,2\n");
  CHECK_THROWS_AS(parse_votes(p), ValidationError);
  const auto p2 = write_temp("votes_malformed.csv",
                             "unit_id,period,item_id,vote\n"
                             "a,1,c1\n");
  try {
    parse_votes(p2);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("periods sort numerically, service is contiguous") {
  const auto p = write_temp("votes_sort.csv",
                            "unit_id,period,item_id,vote\n"
                            "u,10,c,1\n"
                            "u,9,c,0\n"
                            "v,9,c,1\n"
                            "v,10,c,0\n"
                            "u,2,c,1\n"
                            "v,2,c,0\n");
  const VoteDataset ds = parse_votes(p);
  CHECK(ds.periods() == std::vector<std::string>{"2", "9", "10"});
  CHECK(ds.service(0).lo == 0);
  CHECK(ds.service(0).hi == 2);
}

TEST_CASE("uninformative period warning") {
  const auto p = write_temp("votes_flag.csv",
                            "unit_id,period,item_id,vote\n"
                            "a,1,c1,1\n"
                            "b,1,c1,1\n"
                            "a,2,c2,1\n"
                            "b,2,c2,0\n");
  const VoteDataset ds = parse_votes(p);
  REQUIRE(ds.warnings().size() == 1);
  CHECK(ds.warnings()[0].find("period 1") != std::string::npos);
}

TEST_CASE("round trip through write_votes preserves the dataset") {
  const auto p = write_temp("votes_rt.csv",
                            "unit_id,period,item_id,vote\n"
                            "a,1,c1,1\n"
                            "b,1,c1,0\n"
                            "b,1,c2,1\n"
                            "a,3,c9,0\n"
                            "b,2,c5,1\n"
                            "c,2,c5,NA\n"  // c's service is only period 2
                            "a,2,c5,0\n");
  const VoteDataset ds = parse_votes(p);
  const fs::path p2 = fs::temp_directory_path() / "votes_rt2.csv";
  write_votes(ds, p2);
  const VoteDataset ds2 = parse_votes(p2);
  CHECK(ds2.units() == ds.units());
  CHECK(ds2.periods() == ds.periods());
  CHECK(ds2.n_observed_votes() == ds.n_observed_votes());
  for (int i = 0; i < ds.n_units(); ++i) {
    CHECK(ds2.service(i).lo == ds.service(i).lo);
    CHECK(ds2.service(i).hi == ds.service(i).hi);
    const auto a = ds.unit_votes(i);
    const auto b = ds2.unit_votes(i);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].period == b[k].period);
      CHECK(a[k].item == b[k].item);
      CHECK(a[k].y == b[k].y);
    }
  }
}

TEST_CASE("dropping NA rows leaves observed votes unchanged") {
  const auto with_na = write_temp("votes_na.csv",
                                  "unit_id,period,item_id,vote\n"
                                  "a,1,c1,1\n"
                                  "b,1,c1,0\n"
                                  "c,1,c1,NA\n"
                                  "a,2,c2,1\n"
                                  "c,2,c2,0\n");
  const auto without_na = write_temp("votes_nona.csv",
                                     "unit_id,period,item_id,vote\n"
                                     "a,1,c1,1\n"
                                     "b,1,c1,0\n"
                                     "a,2,c2,1\n"
                                     "c,2,c2,0\n");
  const VoteDataset d1 = parse_votes(with_na);
  const VoteDataset d2 = parse_votes(without_na);
  CHECK(d1.n_observed_votes() == d2.n_observed_votes());
  for (int t = 0; t < d1.n_periods(); ++t) {
    for (int j = 0; j < d1.n_items(t); ++j) {
      const auto a = d1.item_votes(t, j);
      const auto b = d2.item_votes(t, j);
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(d1.units()[a[k].first] == d2.units()[b[k].first]);
        CHECK(a[k].second == b[k].second);
      }
    }
  }
}
