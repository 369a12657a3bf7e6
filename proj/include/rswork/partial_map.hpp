#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace rswork {

using Point = std::uint32_t;

// Partial map on {0, ..., carrier-1}. The codomain is the image, so this is
// also an element of the monoid of partial surjections.
class PartialMap {
 public:
  static constexpr Point undefined = std::numeric_limits<Point>::max();

  explicit PartialMap(std::size_t carrier = 0) : _img(carrier, undefined) {}
  explicit PartialMap(std::vector<Point> img) : _img(std::move(img)) {}

  static PartialMap identity_on(std::size_t carrier, const std::vector<Point>& domain);

  std::size_t carrier() const { return _img.size(); }
  bool defined(Point x) const { return x < _img.size() && _img[x] != undefined; }
  std::optional<Point> operator()(Point x) const {
    if (!defined(x)) return std::nullopt;
    return _img[x];
  }
  Point at(Point x) const { return _img[x]; }
  void set(Point x, Point y) { _img[x] = y; }
  const std::vector<Point>& raw() const { return _img; }

  std::vector<Point> domain() const;
  std::vector<Point> image() const;
  bool injective() const;
  bool is_identity_on_domain() const;
  // Requires injective().
  PartialMap inverse() const;

  friend bool operator==(const PartialMap&, const PartialMap&) = default;

 private:
  std::vector<Point> _img;
};

// f after g: defined on {x : g(x) in dom f}.
PartialMap compose(const PartialMap& f, const PartialMap& g);

std::string to_string(const PartialMap& f, const std::vector<std::string>& point_names);

}  // namespace rswork
