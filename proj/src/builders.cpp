#include "rswork/builders.hpp"

#include <algorithm>
#include <map>

#include "rswork/error.hpp"

namespace rswork {

namespace {

std::vector<PartialMap> all_partial_maps(std::size_t m, bool total) {
  std::vector<PartialMap> out;
  std::vector<Point> digits(m, 0);
  const Point base = Point(total ? m : m + 1);
  while (true) {
    PartialMap f(m);
    for (Point x = 0; x < m; ++x)
      if (digits[x] < m) f.set(x, digits[x]);
    out.push_back(f);
    std::size_t i = 0;
    while (i < m && ++digits[i] == base) digits[i++] = 0;
    if (i == m) break;
  }
  return out;
}

std::string map_name(const PartialMap& f, const std::vector<std::string>& points) {
  auto dom = f.domain();
  if (dom.empty()) return "0";
  if (f.is_identity_on_domain()) {
    if (dom.size() == points.size()) return "1";
    std::string n = "e";
    for (Point x : dom) n += points[x];
    return n;
  }
  auto img = f.image();
  if (dom.size() == points.size() && img.size() == 1) return "const_" + points[img[0]];
  return to_string(f, points);
}

// Identities first, then the rest; ties broken by the raw image vector.
FinRS monoid_of_maps(std::vector<PartialMap> maps, const std::vector<std::string>& points,
                     bool add_zero) {
  std::stable_sort(maps.begin(), maps.end(), [](const PartialMap& a, const PartialMap& b) {
    bool ia = a.is_identity_on_domain(), ib = b.is_identity_on_domain();
    if (ia != ib) return ia;
    if (ia) {
      auto da = a.domain(), db = b.domain();
      if (da.size() != db.size()) return da.size() < db.size();
      return da < db;
    }
    return a.raw() < b.raw();
  });
  std::map<std::vector<Point>, Elem> index;
  for (Elem i = 0; i < maps.size(); ++i) index[maps[i].raw()] = i;
  const std::size_t n = maps.size() + (add_zero ? 1 : 0);
  const Elem zero = Elem(maps.size());
  std::vector<Elem> table(n * n);
  std::vector<Elem> projections;
  std::vector<std::string> names;
  for (Elem s = 0; s < maps.size(); ++s) {
    names.push_back(map_name(maps[s], points));
    if (maps[s].is_identity_on_domain() && (!add_zero || maps[s].domain().size() == points.size()))
      projections.push_back(s);
    for (Elem t = 0; t < maps.size(); ++t) {
      auto it = index.find(compose(maps[s], maps[t]).raw());
      if (it == index.end()) throw InternalError("map family not closed under composition");
      table[s * n + t] = it->second;
    }
  }
  if (add_zero) {
    names.push_back("0");
    projections.push_back(zero);
    for (Elem s = 0; s < n; ++s) {
      table[s * n + zero] = zero;
      table[zero * n + s] = zero;
    }
  }
  return FinRS(n, std::move(table), std::move(projections), std::nullopt, std::nullopt,
               std::move(names));
}

}  // namespace

FinRS symmetric_inverse_monoid(const std::vector<std::string>& points) {
  auto maps = all_partial_maps(points.size(), false);
  std::erase_if(maps, [](const PartialMap& f) { return !f.injective(); });
  return monoid_of_maps(std::move(maps), points, false);
}

FinRS partial_surjection_monoid(const std::vector<std::string>& points) {
  return monoid_of_maps(all_partial_maps(points.size(), false), points, false);
}

FinRS full_transformation_with_zero(const std::vector<std::string>& points) {
  return monoid_of_maps(all_partial_maps(points.size(), true), points, true);
}

FinRS semilattice(const std::vector<std::string>& names, const std::vector<Elem>& meet) {
  std::vector<Elem> all(names.size());
  for (Elem i = 0; i < all.size(); ++i) all[i] = i;
  return FinRS(names.size(), meet, all, std::nullopt, std::nullopt, names);
}

FinRS subset_semilattice(std::size_t m) {
  enforce_guard("subset semilattice rank", m, 12);
  const std::size_t n = std::size_t(1) << m;
  std::vector<std::string> names;
  std::vector<Elem> meet(n * n);
  for (Elem a = 0; a < n; ++a) {
    std::string nm = "{";
    for (std::size_t i = 0; i < m; ++i)
      if (a >> i & 1u) nm += (nm.size() > 1 ? "," : "") + std::to_string(i + 1);
    names.push_back(nm + "}");
    for (Elem b = 0; b < n; ++b) meet[a * n + b] = a & b;
  }
  return semilattice(names, meet);
}

}  // namespace rswork
