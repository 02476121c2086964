#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace stone {

/// Basis vector index: (scale n, member tau), serialized as "n:tau".
struct CoordinateId {
  std::int64_t scale = 0;
  std::int64_t member = 0;

  friend auto operator<=>(const CoordinateId&, const CoordinateId&) = default;

  std::string to_string() const;
  static std::optional<CoordinateId> parse(const std::string& text);
};

/// Finitely supported real sequence under the sup norm; zeros are not stored.
class SignedSparseSequence {
 public:
  SignedSparseSequence() = default;

  void set(CoordinateId id, double value);
  double get(CoordinateId id) const;
  const std::map<CoordinateId, double>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  double sup_norm() const;

  friend bool operator==(const SignedSparseSequence&, const SignedSparseSequence&) = default;

 private:
  std::map<CoordinateId, double> entries_;
};

/// Finitely supported sequence with positive stored entries: an element of
/// the positive cone of c0. Setting a value <= 0 erases the coordinate;
/// negative values are rejected with BadParams.
class SparseNonnegativeSequence {
 public:
  SparseNonnegativeSequence() = default;

  void set(CoordinateId id, double value);
  double get(CoordinateId id) const;
  const std::map<CoordinateId, double>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  double sup_norm() const;

  friend bool operator==(const SparseNonnegativeSequence&,
                         const SparseNonnegativeSequence&) = default;

 private:
  std::map<CoordinateId, double> entries_;
};

double sup_distance(const SignedSparseSequence& a, const SignedSparseSequence& b);
double sup_distance(const SparseNonnegativeSequence& a, const SparseNonnegativeSequence& b);

/// Splits each coordinate (n, m) into (n, 2m) carrying the positive part
/// and (n, 2m+1) carrying the negative part. Distances shrink by at most a
/// factor 2 and never grow.
SparseNonnegativeSequence fold_to_positive(const SignedSparseSequence& f);

}  // namespace stone
