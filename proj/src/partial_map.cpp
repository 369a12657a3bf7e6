#include "rswork/partial_map.hpp"

#include <algorithm>

#include "rswork/error.hpp"

namespace rswork {

PartialMap PartialMap::identity_on(std::size_t carrier, const std::vector<Point>& domain) {
  PartialMap f(carrier);
  for (Point x : domain) f.set(x, x);
  return f;
}

std::vector<Point> PartialMap::domain() const {
  std::vector<Point> out;
  for (Point x = 0; x < _img.size(); ++x)
    if (_img[x] != undefined) out.push_back(x);
  return out;
}

std::vector<Point> PartialMap::image() const {
  std::vector<Point> out;
  for (Point y : _img)
    if (y != undefined) out.push_back(y);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool PartialMap::injective() const {
  std::vector<bool> hit(_img.size(), false);
  for (Point y : _img) {
    if (y == undefined) continue;
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

bool PartialMap::is_identity_on_domain() const {
  for (Point x = 0; x < _img.size(); ++x)
    if (_img[x] != undefined && _img[x] != x) return false;
  return true;
}

PartialMap PartialMap::inverse() const {
  if (!injective()) throw ValidationError("inverse of a non-injective partial map");
  PartialMap g(_img.size());
  for (Point x = 0; x < _img.size(); ++x)
    if (_img[x] != undefined) g.set(_img[x], x);
  return g;
}

PartialMap compose(const PartialMap& f, const PartialMap& g) {
  if (f.carrier() != g.carrier()) throw ValidationError("composing partial maps on different carriers");
  PartialMap h(g.carrier());
  for (Point x = 0; x < g.carrier(); ++x) {
    Point y = g.at(x);
    if (y != PartialMap::undefined && f.defined(y)) h.set(x, f.at(y));
  }
  return h;
}

std::string to_string(const PartialMap& f, const std::vector<std::string>& point_names) {
  std::string out = "[";
  bool first = true;
  for (Point x = 0; x < f.carrier(); ++x) {
    if (!f.defined(x)) continue;
    if (!first) out += ",";
    first = false;
    out += point_names.at(x) + "->" + point_names.at(f.at(x));
  }
  return out + "]";
}

}  // namespace rswork
