#include "stone/sparse.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "stone/error.hpp"

namespace stone {

std::string CoordinateId::to_string() const {
  return std::to_string(scale) + ":" + std::to_string(member);
}

std::optional<CoordinateId> CoordinateId::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return std::nullopt;
  CoordinateId id;
  const char* begin = text.data();
  const char* mid = begin + colon;
  const char* end = begin + text.size();
  auto r1 = std::from_chars(begin, mid, id.scale);
  auto r2 = std::from_chars(mid + 1, end, id.member);
  if (r1.ec != std::errc() || r1.ptr != mid || r2.ec != std::errc() || r2.ptr != end) {
    return std::nullopt;
  }
  return id;
}

namespace {

template <typename Map>
double lookup(const Map& m, CoordinateId id) {
  const auto it = m.find(id);
  return it == m.end() ? 0.0 : it->second;
}

template <typename Map>
double max_abs(const Map& m) {
  double best = 0.0;
  for (const auto& [id, v] : m) best = std::max(best, std::abs(v));
  return best;
}

template <typename Map>
double sup_diff(const Map& a, const Map& b) {
  double best = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      best = std::max(best, std::abs(ia->second));
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      best = std::max(best, std::abs(ib->second));
      ++ib;
    } else {
      best = std::max(best, std::abs(ia->second - ib->second));
      ++ia;
      ++ib;
    }
  }
  return best;
}

}  // namespace

void SignedSparseSequence::set(CoordinateId id, double value) {
  if (!std::isfinite(value)) throw Error(ErrorKind::BadParams, "non-finite coordinate");
  if (value == 0.0) {
    entries_.erase(id);
  } else {
    entries_[id] = value;
  }
}

double SignedSparseSequence::get(CoordinateId id) const { return lookup(entries_, id); }
double SignedSparseSequence::sup_norm() const { return max_abs(entries_); }

void SparseNonnegativeSequence::set(CoordinateId id, double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw Error(ErrorKind::BadParams, "coordinates of the positive cone must be finite and >= 0");
  }
  if (value == 0.0) {
    entries_.erase(id);
  } else {
    entries_[id] = value;
  }
}

double SparseNonnegativeSequence::get(CoordinateId id) const { return lookup(entries_, id); }
double SparseNonnegativeSequence::sup_norm() const { return max_abs(entries_); }

double sup_distance(const SignedSparseSequence& a, const SignedSparseSequence& b) {
  return sup_diff(a.entries(), b.entries());
}

double sup_distance(const SparseNonnegativeSequence& a, const SparseNonnegativeSequence& b) {
  return sup_diff(a.entries(), b.entries());
}

SparseNonnegativeSequence fold_to_positive(const SignedSparseSequence& f) {
  SparseNonnegativeSequence g;
  for (const auto& [id, v] : f.entries()) {
    if (v > 0.0) {
      g.set({id.scale, 2 * id.member}, v);
    } else {
      g.set({id.scale, 2 * id.member + 1}, -v);
    }
  }
  return g;
}

}  // namespace stone
