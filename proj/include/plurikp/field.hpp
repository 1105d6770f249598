#ifndef PLURIKP_FIELD_HPP
#define PLURIKP_FIELD_HPP

#include <map>
#include <optional>

#include "plurikp/cell_complex.hpp"

namespace plurikp {

/// Nonzero real values attached to lattice points. On Q(A_N) all points must
/// share one layer (coordinate sum).
class Field {
 public:
  Field(Lattice lattice, std::size_t coordinates) : lattice_(lattice), coordinates_(coordinates) {}

  Lattice lattice() const { return lattice_; }
  /// Number of coordinates per point (N+1 on Q(A_N), N on Z^N).
  std::size_t coordinates() const { return coordinates_; }
  /// The lattice dimension N.
  int dimension() const {
    return static_cast<int>(lattice_ == Lattice::RootA ? coordinates_ - 1 : coordinates_);
  }
  std::optional<int> layer() const { return layer_; }

  /// Throws InvalidArgument on a wrong coordinate count or layer and
  /// SingularError on a zero or non-finite value.
  void set(const Point& point, double value);
  /// Throws InvalidArgument if the point carries no value.
  double at(const Point& point) const;
  std::optional<double> find(const Point& point) const;
  bool contains(const Point& point) const { return values_.count(point) != 0; }

  std::size_t size() const { return values_.size(); }
  const std::map<Point, double>& values() const { return values_; }

  /// Pointwise x ↦ 1/x.
  Field inverted() const;
  Field scaled(double factor) const;
  /// Same values on points with `extra` zero coordinates appended.
  Field padded(std::size_t extra) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Lattice lattice_;
  std::size_t coordinates_;
  std::optional<int> layer_;
  std::map<Point, double> values_;
};

/// Lifts a Z^N field to Q(A_N) along the inserted direction 0, on layer 0
/// (the inverse of the projection P_0).
Field lift_field(const Field& cubic);

}  // namespace plurikp

#endif  // PLURIKP_FIELD_HPP
