#pragma once

// Named example objects shipped with the CLI (`isphere fixture NAME`) and
// used by the demos.

#include "isphere/io.hpp"
#include "isphere/model.hpp"
#include "isphere/pcdga.hpp"

#include <optional>
#include <string>
#include <vector>

namespace isphere::cli {

EventGrid grid01();

/// q : D^2_0 -> D^2_0 / D^2_1.
PersComplexMap quotient_q(std::size_t max_degree = 3);
/// The D^2_1 -> D^2_0 square against q with top 0 and bottom 1; it has no lift.
model::LiftingProblem q_square();
/// I_[0,1] (x) S^1: the closed endpoint makes it non-tame.
PersComplex closed_interval_tensor(std::size_t max_degree = 2);
/// H*(S^2) with zero differential; Q alone from `death` on.
pcdga::PersCDGA cohomology_s2(const EventGrid& grid, std::size_t max_degree, std::optional<Rational> death = std::nullopt);
/// Truncates nodewise tables to a smaller top degree.
pcdga::PersCDGA truncate_nodewise(const pcdga::PersCDGA& a, std::size_t max_degree);

std::vector<std::string> fixture_names();
/// Throws UsageError for unknown names.
io::Json fixture(const std::string& name);

} // namespace isphere::cli
