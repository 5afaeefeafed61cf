#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace l1s {

/// A frequency k in Z^d, or a polynomial degree stored as a one-entry index.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<std::int64_t> entries);
  MultiIndex(std::initializer_list<std::int64_t> entries);

  static MultiIndex degree(std::int64_t n);

  std::size_t dim() const { return k_.size(); }
  std::int64_t operator[](std::size_t i) const { return k_[i]; }
  const std::vector<std::int64_t>& entries() const { return k_; }

  /// max_j |k_j|
  std::int64_t max_abs() const;
  std::string to_string() const;

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<std::int64_t> k_;
};

enum class IndexSetKind { Box, SearchBox, Degrees, Explicit };

/// Finite index set, enumerated in lexicographic order for the box kinds
/// and in insertion order for explicit lists.
class IndexSet {
 public:
  static IndexSet box(int d, std::int64_t M);
  /// {k : |k|_inf <= (2d+1)M}
  static IndexSet search_box(int d, std::int64_t M);
  static IndexSet degrees(std::int64_t M);
  static IndexSet from_list(std::vector<MultiIndex> list);
  static IndexSet empty(int d);

  IndexSetKind kind() const { return kind_; }
  int dim() const { return d_; }
  /// The M the set was built from (box kinds and Degrees).
  std::int64_t parameter() const { return M_; }
  /// Half-width of the enumerated box (Box: M, SearchBox: (2d+1)M, Degrees: M).
  std::int64_t radius() const { return radius_; }

  std::size_t size() const { return list_.size(); }
  bool empty() const { return list_.empty(); }
  const std::vector<MultiIndex>& indices() const { return list_; }
  const MultiIndex& operator[](std::size_t i) const { return list_[i]; }

  bool contains(const MultiIndex& k) const { return position(k).has_value(); }
  std::optional<std::size_t> position(const MultiIndex& k) const;

 private:
  IndexSetKind kind_ = IndexSetKind::Explicit;
  int d_ = 1;
  std::int64_t M_ = 0;
  std::int64_t radius_ = 0;
  std::vector<MultiIndex> list_;
  std::map<MultiIndex, std::size_t> lookup_;  // Explicit only
};

IndexSet make_index_set(IndexSetKind kind, int d, std::int64_t M);

}  // namespace l1s
