#include "plurikp/field.hpp"

#include <cmath>

#include "plurikp/errors.hpp"

namespace plurikp {

void Field::set(const Point& point, double value) {
  if (point.size() != coordinates_)
    throw InvalidArgument("point " + point.str() + " has the wrong number of coordinates");
  if (lattice_ == Lattice::RootA) {
    if (layer_ && *layer_ != point.layer())
      throw InvalidArgument("point " + point.str() + " is off the field's layer " + std::to_string(*layer_));
    layer_ = point.layer();
  }
  if (!std::isfinite(value) || value == 0.0)
    throw SingularError("field value at " + point.str() + " must be finite and nonzero");
  values_[point] = value;
}

double Field::at(const Point& point) const {
  auto it = values_.find(point);
  if (it == values_.end()) throw InvalidArgument("field has no value at " + point.str());
  return it->second;
}

std::optional<double> Field::find(const Point& point) const {
  auto it = values_.find(point);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

Field Field::inverted() const {
  Field out(lattice_, coordinates_);
  for (const auto& [p, v] : values_) out.set(p, 1.0 / v);
  return out;
}

Field Field::scaled(double factor) const {
  Field out(lattice_, coordinates_);
  for (const auto& [p, v] : values_) out.set(p, factor * v);
  return out;
}

Field Field::padded(std::size_t extra) const {
  Field out(lattice_, coordinates_ + extra);
  for (const auto& [p, v] : values_) out.set(p.padded(extra), v);
  return out;
}

Field lift_field(const Field& cubic) {
  if (cubic.lattice() != Lattice::Cubic) throw InvalidArgument("lift_field expects a Z^N field");
  Field out(Lattice::RootA, cubic.coordinates() + 1);
  for (const auto& [p, v] : cubic.values()) out.set(lift_point(0, p, 0), v);
  return out;
}

}  // namespace plurikp
