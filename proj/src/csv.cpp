#include "ctmp/csv.hpp"

#include <cstdio>

namespace ctmp {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

void write_header(std::ostream& out, int n) {
  out << "t";
  for (int i = 1; i <= n; ++i) out << ",p" << i;
  out << "\n";
}

void write_rows(std::ostream& out, const std::vector<double>& times,
                const Matrix& probs) {
  for (int r = 0; r < probs.rows(); ++r) {
    out << format_double(times[r]);
    for (int c = 0; c < probs.cols(); ++c) out << "," << format_double(probs(r, c));
    out << "\n";
  }
}

}  // namespace

void write_posterior_csv(std::ostream& out, const DiscretePosterior& posterior) {
  std::vector<double> times(posterior.steps());
  for (int r = 0; r < posterior.steps(); ++r) times[r] = posterior.time(r);
  write_header(out, static_cast<int>(posterior.probs.cols()));
  write_rows(out, times, posterior.probs);
}

void write_posterior_csv(std::ostream& out, const std::vector<double>& times,
                         const Matrix& probs) {
  write_header(out, static_cast<int>(probs.cols()));
  write_rows(out, times, probs);
}

void write_samples_csv(std::ostream& out, const SampledObservations& samples) {
  out << "t,y\n";
  out << "0," << samples.initial_value << "\n";
  for (std::size_t k = 0; k < samples.values.size(); ++k) {
    out << format_double(static_cast<double>(k + 1) * samples.dt) << ","
        << samples.values[k] << "\n";
  }
}

}  // namespace ctmp
