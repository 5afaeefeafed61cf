#include "l1s/index_set.hpp"

#include <cstdlib>
#include <sstream>

#include "l1s/errors.hpp"

namespace l1s {

MultiIndex::MultiIndex(std::vector<std::int64_t> entries) : k_(std::move(entries)) {
  if (k_.empty()) throw InvalidArgument("multi-index needs at least one entry");
}

MultiIndex::MultiIndex(std::initializer_list<std::int64_t> entries)
    : MultiIndex(std::vector<std::int64_t>(entries)) {}

MultiIndex MultiIndex::degree(std::int64_t n) {
  if (n < 0) throw InvalidArgument("polynomial degree must be nonnegative");
  return MultiIndex({n});
}

std::int64_t MultiIndex::max_abs() const {
  std::int64_t m = 0;
  for (auto v : k_) m = std::max<std::int64_t>(m, std::llabs(v));
  return m;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < k_.size(); ++i) os << (i ? "," : "") << k_[i];
  os << ')';
  return os.str();
}

namespace {

std::vector<MultiIndex> enumerate_cube(int d, std::int64_t R) {
  const std::int64_t side = 2 * R + 1;
  std::size_t total = 1;
  for (int j = 0; j < d; ++j) total *= static_cast<std::size_t>(side);
  std::vector<MultiIndex> out;
  out.reserve(total);
  std::vector<std::int64_t> k(d, -R);
  for (std::size_t c = 0; c < total; ++c) {
    out.emplace_back(k);
    for (int j = d - 1; j >= 0; --j) {
      if (++k[j] <= R) break;
      k[j] = -R;
    }
  }
  return out;
}

}  // namespace

IndexSet IndexSet::box(int d, std::int64_t M) {
  if (d < 1) throw InvalidArgument("dimension must be at least 1");
  if (M < 0) throw InvalidArgument("box parameter must be nonnegative");
  IndexSet s;
  s.kind_ = IndexSetKind::Box;
  s.d_ = d;
  s.M_ = M;
  s.radius_ = M;
  s.list_ = enumerate_cube(d, M);
  return s;
}

IndexSet IndexSet::search_box(int d, std::int64_t M) {
  if (d < 1) throw InvalidArgument("dimension must be at least 1");
  if (M < 0) throw InvalidArgument("box parameter must be nonnegative");
  IndexSet s;
  s.kind_ = IndexSetKind::SearchBox;
  s.d_ = d;
  s.M_ = M;
  s.radius_ = (2 * d + 1) * M;
  s.list_ = enumerate_cube(d, s.radius_);
  return s;
}

IndexSet IndexSet::degrees(std::int64_t M) {
  if (M < 0) throw InvalidArgument("degree bound must be nonnegative");
  IndexSet s;
  s.kind_ = IndexSetKind::Degrees;
  s.d_ = 1;
  s.M_ = M;
  s.radius_ = M;
  s.list_.reserve(static_cast<std::size_t>(M + 1));
  for (std::int64_t n = 0; n <= M; ++n) s.list_.push_back(MultiIndex({n}));
  return s;
}

IndexSet IndexSet::from_list(std::vector<MultiIndex> list) {
  IndexSet s;
  s.kind_ = IndexSetKind::Explicit;
  s.d_ = list.empty() ? 1 : static_cast<int>(list.front().dim());
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (static_cast<int>(list[i].dim()) != s.d_)
      throw DimensionMismatch("index set entries must share one dimension");
    if (!s.lookup_.emplace(list[i], i).second)
      throw InvalidArgument("duplicate index " + list[i].to_string());
  }
  s.list_ = std::move(list);
  return s;
}

IndexSet IndexSet::empty(int d) {
  IndexSet s;
  s.d_ = d;
  return s;
}

std::optional<std::size_t> IndexSet::position(const MultiIndex& k) const {
  if (static_cast<int>(k.dim()) != d_) return std::nullopt;
  switch (kind_) {
    case IndexSetKind::Degrees:
      if (k[0] < 0 || k[0] > radius_) return std::nullopt;
      return static_cast<std::size_t>(k[0]);
    case IndexSetKind::Box:
    case IndexSetKind::SearchBox: {
      std::size_t pos = 0;
      const std::int64_t side = 2 * radius_ + 1;
      for (int j = 0; j < d_; ++j) {
        if (std::llabs(k[j]) > radius_) return std::nullopt;
        pos = pos * static_cast<std::size_t>(side) + static_cast<std::size_t>(k[j] + radius_);
      }
      return pos;
    }
    case IndexSetKind::Explicit: {
      auto it = lookup_.find(k);
      if (it == lookup_.end()) return std::nullopt;
      return it->second;
    }
  }
  return std::nullopt;
}

IndexSet make_index_set(IndexSetKind kind, int d, std::int64_t M) {
  if (d < 1 || M < 1) throw InvalidArgument("make_index_set needs d >= 1 and M >= 1");
  switch (kind) {
    case IndexSetKind::Box:
      return IndexSet::box(d, M);
    case IndexSetKind::SearchBox:
      return IndexSet::search_box(d, M);
    case IndexSetKind::Degrees:
      return IndexSet::degrees(M);
    case IndexSetKind::Explicit:
      break;
  }
  throw InvalidArgument("explicit index sets are built from a list");
}

}  // namespace l1s
