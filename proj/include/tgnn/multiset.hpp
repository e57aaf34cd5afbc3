// Copyright 2026 The tgnn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tgnn/errors.hpp"

namespace tgnn {

/// A counting bound c >= 1, or std::nullopt for "unbounded".
using CountBound = std::optional<std::size_t>;

inline std::string to_string(const CountBound& c) {
  return c ? std::to_string(*c) : std::string("inf");
}

/// Strict weak order on real vectors that compares bit patterns, so that
/// 0.0 and -0.0 are distinct and NaN payloads are ordered.
struct BitwiseLess {
  bool operator()(const std::vector<double>& a,
                  const std::vector<double>& b) const {
    return std::lexicographical_compare(
        a.begin(), a.end(), b.begin(), b.end(), [](double x, double y) {
          return std::bit_cast<std::uint64_t>(x) <
                 std::bit_cast<std::uint64_t>(y);
        });
  }
};

inline bool bitwise_equal(const std::vector<double>& a,
                          const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](double x, double y) {
           return std::bit_cast<std::uint64_t>(x) ==
                  std::bit_cast<std::uint64_t>(y);
         });
}

/// A finite multiset. Elements are kept sorted under `Compare`, so equality
/// and iteration order do not depend on insertion order.
template <typename T, typename Compare = std::less<T>>
class Multiset {
 public:
  using container_type = std::map<T, std::size_t, Compare>;
  using const_iterator = typename container_type::const_iterator;

  Multiset() = default;

  void insert(const T& value, std::size_t multiplicity = 1) {
    if (multiplicity == 0) return;
    counts_[value] += multiplicity;
    total_ += multiplicity;
  }

  std::size_t count(const T& value) const {
    auto it = counts_.find(value);
    return it == counts_.end() ? 0 : it->second;
  }

  /// Total number of elements, counted with multiplicity.
  std::size_t size() const noexcept { return total_; }
  std::size_t distinct() const noexcept { return counts_.size(); }
  bool empty() const noexcept { return total_ == 0; }

  const_iterator begin() const { return counts_.begin(); }
  const_iterator end() const { return counts_.end(); }

  /// A↾c: every multiplicity m becomes min(m, c).
  Multiset restricted(std::size_t bound) const {
    if (bound == 0) throw InvalidArgument("multiset bound must be >= 1");
    Multiset out;
    for (const auto& [value, m] : counts_) out.insert(value, std::min(m, bound));
    return out;
  }

  friend bool operator==(const Multiset& a, const Multiset& b) {
    if (a.total_ != b.total_ || a.counts_.size() != b.counts_.size())
      return false;
    Compare less;
    auto it = b.counts_.begin();
    for (const auto& [value, m] : a.counts_) {
      if (less(value, it->first) || less(it->first, value) || m != it->second)
        return false;
      ++it;
    }
    return true;
  }

 private:
  container_type counts_;
  std::size_t total_ = 0;
};

template <typename T, typename Compare>
Multiset<T, Compare> restrict_multiset(const Multiset<T, Compare>& a,
                                       std::size_t bound) {
  return a.restricted(bound);
}

/// A =_c B
template <typename T, typename Compare>
bool equal_up_to(const Multiset<T, Compare>& a, const Multiset<T, Compare>& b,
                 std::size_t bound) {
  return a.restricted(bound) == b.restricted(bound);
}

}  // namespace tgnn
