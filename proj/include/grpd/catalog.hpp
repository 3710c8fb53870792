#pragma once

#include <map>
#include <string>
#include <vector>

#include "grpd/groupoid.hpp"

namespace grpd::catalog {

/// R_n: morphisms "(i,j)" for 1 <= i,j <= n with (i,j)(j,k) = (i,k).
Groupoid pair_groupoid(int n);

/// R_n graded by c(i,j) = i - j in Z.
Groupoid graded_pair_groupoid(int n);

/// n units "u1".."un" and nothing else.
Groupoid trivial_groupoid(int n);

enum class CyclicGrading { Trivial, Identity };

/// Z/n as a one-object groupoid: "u", "t", "t^2", ... Identity grading maps
/// t^k to k in Z/n.
Groupoid cyclic_group(int n, CyclicGrading grading);

/// Morphisms prefixed "a." and "b.". Gradings must live in the same group;
/// an ungraded side is treated as trivially graded in that group.
Groupoid disjoint_union(const Groupoid& g, const Groupoid& h);

/// Morphisms "x|y"; the grading group is the product of the two groups.
Groupoid product(const Groupoid& g, const Groupoid& h);

/// Same groupoid with ids renamed; `names` must be injective on g.
Groupoid relabel(const Groupoid& g, const std::map<std::string, std::string>& names);

}  // namespace grpd::catalog
