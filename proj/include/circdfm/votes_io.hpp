#ifndef CIRCDFM_VOTES_IO_HPP_
#define CIRCDFM_VOTES_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "circdfm/errors.hpp"

namespace circdfm {

// One raw input row. vote is "0", "1" or "NA".
struct VoteRow {
  std::string unit;
  std::string period;
  std::string item;
  std::string vote;
  std::size_t line = 0;
};

struct ServiceRange {
  int lo = 0;
  int hi = 0;  // inclusive period indices

  int length() const { return hi - lo + 1; }
};

// A vote observed for (unit, period, item), all as dense indices.
struct UnitVote {
  int period = 0;
  int item = 0;
  std::uint8_t y = 0;
};

// Sparse binary panel of votes. Units, periods and per-period items are
// label collections sorted deterministically (numerically when every label
// parses as an integer, lexicographically otherwise); all internal indices
// are dense and 0-based. Immutable after construction.
class VoteDataset {
 public:
  static VoteDataset from_rows(const std::vector<VoteRow>& rows);

  int n_units() const { return static_cast<int>(units_.size()); }
  int n_periods() const { return static_cast<int>(periods_.size()); }
  int n_items(int period) const {
    return static_cast<int>(items_[period].size());
  }
  int n_total_items() const { return n_total_items_; }
  int n_observed_votes() const { return n_observed_; }

  const std::vector<std::string>& units() const { return units_; }
  const std::vector<std::string>& periods() const { return periods_; }
  const std::vector<std::string>& item_labels(int period) const {
    return items_[period];
  }

  std::optional<int> unit_index(const std::string& label) const;
  std::optional<int> period_index(const std::string& label) const;
  std::optional<int> item_index(int period, const std::string& label) const;

  ServiceRange service(int unit) const { return service_[unit]; }

  // Observed votes of one unit across its service.
  std::span<const UnitVote> unit_votes(int unit) const {
    return unit_votes_[unit];
  }
  // Observed (unit, vote) pairs on one item.
  std::span<const std::pair<int, std::uint8_t>> item_votes(int period,
                                                           int item) const {
    return item_votes_[period][item];
  }

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  VoteDataset() = default;

  std::vector<std::string> units_;
  std::vector<std::string> periods_;
  std::vector<std::vector<std::string>> items_;
  std::vector<ServiceRange> service_;
  std::vector<std::vector<UnitVote>> unit_votes_;
  std::vector<std::vector<std::vector<std::pair<int, std::uint8_t>>>>
      item_votes_;
  std::vector<std::string> warnings_;
  int n_total_items_ = 0;
  int n_observed_ = 0;
};

// Reads the long-format votes file (header unit_id,period,item_id,vote).
// "NA" rows are dropped from the likelihood but still extend the unit's
// service range.
VoteDataset parse_votes(const std::filesystem::path& path);

// Inverse of parse_votes up to row order. Service periods with no observed
// vote at a unit's endpoints are preserved through explicit NA rows.
void write_votes(const VoteDataset& data, const std::filesystem::path& path);

}  // namespace circdfm

#endif  // CIRCDFM_VOTES_IO_HPP_
