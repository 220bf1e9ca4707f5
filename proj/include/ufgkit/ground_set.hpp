#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ufgkit/bits.hpp"
#include "ufgkit/error.hpp"

namespace ufgkit {

/// The fixed finite item set. Indices 0..N-1 map bijectively onto labels
/// and define the canonical pair order used everywhere else.
class GroundSet {
 public:
  explicit GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw Error(ErrorKind::EmptyGroundSet, "ground set needs at least one item");
    if (labels_.size() > bits::kMaxItems)
      throw Error(ErrorKind::GroundSetTooLarge,
                  "ground set of size " + std::to_string(labels_.size()) + " exceeds the storage limit of " +
                      std::to_string(bits::kMaxItems) + " items");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) throw Error(ErrorKind::InvalidArgument, "empty item label");
      for (std::size_t j = 0; j < i; ++j)
        if (labels_[i] == labels_[j]) throw Error(ErrorKind::DuplicateLabel, "duplicate label '" + labels_[i] + "'");
    }
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  const std::string& label(std::size_t index) const {
    if (index >= labels_.size())
      throw Error(ErrorKind::IndexOutOfRange, "item index " + std::to_string(index) + " out of range");
    return labels_[index];
  }

  std::optional<std::size_t> find(const std::string& label) const noexcept {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  std::size_t index_of(const std::string& label) const {
    if (auto idx = find(label)) return *idx;
    throw Error(ErrorKind::UnknownLabel, "unknown label '" + label + "'");
  }

  /// Number of ordered pairs (i, j), i != j.
  std::size_t pair_count() const noexcept { return size() * (size() - 1); }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  std::vector<std::string> labels_;
};

using Ground = std::shared_ptr<const GroundSet>;

inline Ground make_ground(std::vector<std::string> labels) {
  return std::make_shared<const GroundSet>(std::move(labels));
}

/// Ground set {x1, ..., xN}.
inline Ground make_indexed_ground(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("x" + std::to_string(i));
  return make_ground(std::move(labels));
}

inline bool same_ground(const Ground& a, const Ground& b) noexcept {
  return a == b || (a && b && *a == *b);
}

inline void require_same_ground(const Ground& a, const Ground& b) {
  if (!same_ground(a, b)) throw Error(ErrorKind::MixedGroundSets, "operands live on different ground sets");
}

}  // namespace ufgkit
