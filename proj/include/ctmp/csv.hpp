#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ctmp/discrete.hpp"
#include "ctmp/simulate.hpp"

namespace ctmp {

/// Shortest-faithful decimal rendering used by every CSV writer (%.17g);
/// output bytes are stable for identical inputs.
std::string format_double(double value);

/// Posterior table with header t,p1,...,pn; rows at (k+1)*dt.
void write_posterior_csv(std::ostream& out, const DiscretePosterior& posterior);

/// Posterior table with explicit row times.
void write_posterior_csv(std::ostream& out, const std::vector<double>& times,
                         const Matrix& probs);

/// Sampled observation table with header t,y; includes the t = 0 row.
void write_samples_csv(std::ostream& out, const SampledObservations& samples);

}  // namespace ctmp
