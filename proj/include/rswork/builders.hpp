#pragma once

#include <string>
#include <vector>

#include "rswork/rsem.hpp"

namespace rswork {

// Monoid of partial bijections of the given points.
FinRS symmetric_inverse_monoid(const std::vector<std::string>& points);

// Monoid of partial surjections f : A -> f(A); fails the right-hand
// congruence axiom as soon as there are two points.
FinRS partial_surjection_monoid(const std::vector<std::string>& points);

// All self-maps of the points plus an adjoined zero; projections {0, 1}.
FinRS full_transformation_with_zero(const std::vector<std::string>& points);

// A semilattice as a restriction semigroup (everything is a projection).
FinRS semilattice(const std::vector<std::string>& names, const std::vector<Elem>& meet);

// Semilattice of subsets of an m-element set under intersection.
FinRS subset_semilattice(std::size_t m);

}  // namespace rswork
