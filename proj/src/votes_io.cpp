#include "circdfm/votes_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace circdfm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool parse_int(const std::string& s, long long& v) {
  if (s.empty()) return false;
  const char* b = s.data();
  const char* e = b + s.size();
  auto res = std::from_chars(b, e, v);
  return res.ec == std::errc{} && res.ptr == e;
}

// Numeric order when every label is an integer, lexicographic otherwise.
std::vector<std::string> sorted_labels(const std::set<std::string>& labels) {
  std::vector<std::string> out(labels.begin(), labels.end());
  bool all_numeric = !out.empty();
  std::vector<long long> nums(out.size());
  for (std::size_t i = 0; i < out.size() && all_numeric; ++i) {
    all_numeric = parse_int(out[i], nums[i]);
  }
  if (all_numeric) {
    std::vector<std::size_t> order(out.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return nums[a] != nums[b] ? nums[a] < nums[b] : out[a] < out[b];
    });
    std::vector<std::string> sorted;
    sorted.reserve(out.size());
    for (std::size_t i : order) sorted.push_back(out[i]);
    return sorted;
  }
  return out;  // std::set is already lexicographically sorted
}

}  // namespace

std::optional<int> VoteDataset::unit_index(const std::string& label) const {
  const auto it = std::find(units_.begin(), units_.end(), label);
  if (it == units_.end()) return std::nullopt;
  return static_cast<int>(it - units_.begin());
}

std::optional<int> VoteDataset::period_index(const std::string& label) const {
  const auto it = std::find(periods_.begin(), periods_.end(), label);
  if (it == periods_.end()) return std::nullopt;
  return static_cast<int>(it - periods_.begin());
}

std::optional<int> VoteDataset::item_index(int period,
                                           const std::string& label) const {
  const auto& v = items_[period];
  const auto it = std::find(v.begin(), v.end(), label);
  if (it == v.end()) return std::nullopt;
  return static_cast<int>(it - v.begin());
}

VoteDataset VoteDataset::from_rows(const std::vector<VoteRow>& rows) {
  if (rows.empty()) throw ValidationError("no vote records");

  std::set<std::string> unit_set;
  std::set<std::string> period_set;
  std::map<std::string, std::set<std::string>> item_sets;  // by period label
  for (const VoteRow& r : rows) {
    if (r.unit.empty() || r.period.empty() || r.item.empty()) {
      throw ValidationError("line " + std::to_string(r.line) +
                            ": empty unit, period or item id");
    }
    if (r.vote != "0" && r.vote != "1" && r.vote != "NA") {
      throw ValidationError("line " + std::to_string(r.line) +
                            ": vote must be 0, 1 or NA, got '" + r.vote + "'");
    }
    unit_set.insert(r.unit);
    period_set.insert(r.period);
    item_sets[r.period].insert(r.item);
  }

  VoteDataset ds;
  ds.units_ = sorted_labels(unit_set);
  ds.periods_ = sorted_labels(period_set);
  ds.items_.resize(ds.periods_.size());
  for (std::size_t t = 0; t < ds.periods_.size(); ++t) {
    ds.items_[t] = sorted_labels(item_sets[ds.periods_[t]]);
    ds.n_total_items_ += static_cast<int>(ds.items_[t].size());
  }

  // Lexicographic lookup vectors (units_/periods_ may be numeric-ordered).
  auto find_unit = [&](const std::string& s) {
    return static_cast<int>(std::find(ds.units_.begin(), ds.units_.end(), s) -
                            ds.units_.begin());
  };
  auto find_period = [&](const std::string& s) {
    return static_cast<int>(
        std::find(ds.periods_.begin(), ds.periods_.end(), s) -
        ds.periods_.begin());
  };

  ds.unit_votes_.resize(ds.units_.size());
  ds.item_votes_.resize(ds.periods_.size());
  for (std::size_t t = 0; t < ds.periods_.size(); ++t) {
    ds.item_votes_[t].resize(ds.items_[t].size());
  }
  ds.service_.assign(ds.units_.size(), ServiceRange{-1, -1});

  std::set<std::tuple<int, int, int>> seen;  // (unit, period, item)
  for (const VoteRow& r : rows) {
    const int i = find_unit(r.unit);
    const int t = find_period(r.period);
    const int jj = static_cast<int>(std::find(ds.items_[t].begin(),
                                              ds.items_[t].end(), r.item) -
                                    ds.items_[t].begin());
    if (!seen.insert({i, t, jj}).second) {
      throw ValidationError("line " + std::to_string(r.line) +
                            ": duplicate vote key (" + r.unit + ", " + r.item +
                            ", " + r.period + ")");
    }
    ServiceRange& sr = ds.service_[i];
    if (sr.lo < 0) {
      sr.lo = sr.hi = t;
    } else {
      sr.lo = std::min(sr.lo, t);
      sr.hi = std::max(sr.hi, t);
    }
    if (r.vote == "NA") continue;
    const std::uint8_t y = (r.vote == "1") ? 1 : 0;
    ds.unit_votes_[i].push_back(UnitVote{t, jj, y});
    ds.item_votes_[t][jj].emplace_back(i, y);
    ++ds.n_observed_;
  }

  for (auto& votes : ds.unit_votes_) {
    std::sort(votes.begin(), votes.end(),
              [](const UnitVote& a, const UnitVote& b) {
                return std::tie(a.period, a.item) < std::tie(b.period, b.item);
              });
  }
  for (auto& per_period : ds.item_votes_) {
    for (auto& votes : per_period) std::sort(votes.begin(), votes.end());
  }

  for (std::size_t t = 0; t < ds.periods_.size(); ++t) {
    bool informative = false;
    for (const auto& votes : ds.item_votes_[t]) {
      bool has0 = false;
      bool has1 = false;
      for (const auto& [unit, y] : votes) (y ? has1 : has0) = true;
      if (has0 && has1) {
        informative = true;
        break;
      }
    }
    if (!informative) {
      ds.warnings_.push_back("period " + ds.periods_[t] +
                             " has no item with two differing observed votes; "
                             "it carries no scaling information");
    }
  }
  return ds;
}

VoteDataset parse_votes(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open votes file: " + path.string());
  std::string line;
  std::size_t line_no = 0;
  std::vector<VoteRow> rows;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (!saw_header) {
      if (fields != std::vector<std::string>{"unit_id", "period", "item_id",
                                             "vote"}) {
        throw ValidationError(
            "line " + std::to_string(line_no) +
            ": expected header unit_id,period,item_id,vote");
      }
      saw_header = true;
      continue;
    }
    if (fields.size() != 4) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected 4 comma-separated fields, got " +
                            std::to_string(fields.size()));
    }
    rows.push_back(VoteRow{fields[0], fields[1], fields[2], fields[3], line_no});
  }
  if (!saw_header || rows.empty()) throw ValidationError("no vote records");
  return VoteDataset::from_rows(rows);
}

void write_votes(const VoteDataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write votes file: " + path.string());
  out << "unit_id,period,item_id,vote\n";
  for (int i = 0; i < data.n_units(); ++i) {
    bool endpoint_observed[2] = {false, false};
    const ServiceRange sr = data.service(i);
    for (const UnitVote& v : data.unit_votes(i)) {
      if (v.period == sr.lo) endpoint_observed[0] = true;
      if (v.period == sr.hi) endpoint_observed[1] = true;
      out << data.units()[i] << ',' << data.periods()[v.period] << ','
          << data.item_labels(v.period)[v.item] << ','
          << static_cast<int>(v.y) << '\n';
    }
    // keep service endpoints alive through NA rows when nothing is observed
    // there (intermediate periods are implied by contiguity)
    const int endpoints[2] = {sr.lo, sr.hi};
    for (int k = 0; k < (sr.lo == sr.hi ? 1 : 2); ++k) {
      if (!endpoint_observed[k]) {
        const int t = endpoints[k];
        out << data.units()[i] << ',' << data.periods()[t] << ','
            << data.item_labels(t)[0] << ",NA\n";
      }
    }
  }
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

}  // namespace circdfm
