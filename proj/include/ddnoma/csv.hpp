#pragma once

#include <cstdio>
#include <iosfwd>
#include <string>
#include <vector>

#include "ddnoma/link.hpp"
#include "ddnoma/sinr.hpp"
#include "ddnoma/system.hpp"

namespace ddnoma {

// Fixed-precision double formatting so seeded runs emit byte-identical files.
inline std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_se_samples_csv(std::ostream& os, const std::vector<SeSample>& samples);

void write_se_summary_csv(std::ostream& os, const ScenarioConfig& config,
                          const std::vector<SeSample>& samples);

void write_link_outcome_csv(std::ostream& os, const std::string& scenario_id,
                            const LinkOutcome& outcome);

// drop_id,user,symbol,pre,post
void write_sinr_csv(std::ostream& os, int drop_id,
                    const std::vector<SinrReport>& reports);

// gnuplot-friendly empirical CDF: column 1 rate, column 2 P(X <= rate)
void write_cdf_dat(std::ostream& os, std::vector<double> rates);

}  // namespace ddnoma
