#include "p1bundles/splitting.hpp"

#include <algorithm>

#include "p1bundles/field.hpp"

namespace p1b {

SplittingType::SplittingType(std::vector<int> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
}

SplittingType SplittingType::uniform(int value, int count) {
  return SplittingType(std::vector<int>(count, value));
}

long SplittingType::degree() const {
  long d = 0;
  for (int a : entries_) d += a;
  return d;
}

long SplittingType::h0(int d) const {
  long h = 0;
  for (int a : entries_)
    if (a + d + 1 > 0) h += a + d + 1;
  return h;
}

SplittingType SplittingType::dual() const {
  std::vector<int> e;
  e.reserve(entries_.size());
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    e.push_back(-*it);
  return SplittingType(std::move(e));
}

SplittingType SplittingType::twist(int d) const {
  std::vector<int> e = entries_;
  for (int& a : e) a += d;
  return SplittingType(std::move(e));
}

SplittingType SplittingType::concat(const SplittingType& o) const {
  std::vector<int> e = entries_;
  e.insert(e.end(), o.entries_.begin(), o.entries_.end());
  return SplittingType(std::move(e));
}

bool SplittingType::ample() const {
  for (int a : entries_)
    if (a < 1) return false;
  return true;
}

bool SplittingType::globally_generated() const {
  for (int a : entries_)
    if (a < 0) return false;
  return true;
}

bool SplittingType::balanced() const {
  if (entries_.empty()) return true;
  return entries_.back() - entries_.front() <= 1;
}

bool SplittingType::h0_dominated_by(const SplittingType& other) const {
  if (entries_.empty()) return true;
  int lo = std::min(entries_.front(),
                    other.entries_.empty() ? entries_.front()
                                           : other.entries_.front());
  int hi = std::max(entries_.back(),
                    other.entries_.empty() ? entries_.back()
                                           : other.entries_.back());
  for (int d = -hi - 1; d <= -lo + 1; ++d)
    if (h0(d) > other.h0(d)) return false;
  return true;
}

std::string SplittingType::str() const {
  std::string s = "[";
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(entries_[i]);
  }
  return s + "]";
}

std::string SplittingType::oh_sum() const {
  if (entries_.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < entries_.size();) {
    size_t j = i;
    while (j < entries_.size() && entries_[j] == entries_[i]) ++j;
    if (!s.empty()) s += " + ";
    s += entries_[i] == 0 ? "O" : "O(" + std::to_string(entries_[i]) + ")";
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

SplittingType infer_splitting(const std::function<long(int)>& h0_oracle,
                              int rank) {
  if (rank < 0) throw Error("oracle-inconsistent", "negative rank");
  if (rank == 0) return SplittingType();
  constexpr int kMaxScan = 20000;
  int d = 0;
  int guard = 0;
  while (h0_oracle(d) > 0) {
    --d;
    if (++guard > kMaxScan)
      throw Error("oracle-inconsistent", "h^0 never vanishes while scanning down");
  }
  // At this d: h0 = 0. Scan up; delta(d) = #{a_i >= -d}.
  std::vector<int> entries;
  long prev = 0;
  long delta_prev = 0;
  guard = 0;
  while (true) {
    ++d;
    long cur = h0_oracle(d);
    long delta = cur - prev;
    if (delta < delta_prev || delta > rank)
      throw Error("oracle-inconsistent",
                  "first differences do not match any splitting type");
    for (long i = 0; i < delta - delta_prev; ++i) entries.push_back(-d);
    if (delta == rank) break;
    prev = cur;
    delta_prev = delta;
    if (++guard > kMaxScan)
      throw Error("oracle-inconsistent", "rank never reached while scanning up");
  }
  return SplittingType(std::move(entries));
}

}  // namespace p1b
