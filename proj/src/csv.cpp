#include "ddnoma/csv.hpp"

#include <algorithm>
#include <ostream>

namespace ddnoma {

void write_se_samples_csv(std::ostream& os, const std::vector<SeSample>& samples) {
  os << "# ddnoma se-samples v1\n";
  os << "drop,waveform,scheme,rate1,rate2,sum_rate\n";
  for (const SeSample& s : samples)
    os << s.drop << ',' << to_string(s.waveform) << ',' << to_string(s.scheme) << ','
       << csv_num(s.rate1) << ',' << csv_num(s.rate2) << ',' << csv_num(s.sum_rate)
       << '\n';
}

void write_se_summary_csv(std::ostream& os, const ScenarioConfig& config,
                          const std::vector<SeSample>& samples) {
  os << "# ddnoma se-summary v1\n";
  os << "waveform,scheme,mean_se,outage5_se,samples\n";
  for (const Waveform wf : config.waveforms) {
    for (const PaScheme scheme : config.schemes) {
      const auto rates = sum_rates_of(samples, wf, scheme);
      if (rates.empty()) continue;
      const SeSummary sum = summarize(rates);
      os << to_string(wf) << ',' << to_string(scheme) << ',' << csv_num(sum.mean)
         << ',' << csv_num(sum.outage5) << ',' << sum.count << '\n';
    }
  }
}

void write_link_outcome_csv(std::ostream& os, const std::string& scenario_id,
                            const LinkOutcome& outcome) {
  os << "# ddnoma link-outcome v1\n";
  os << "scenario,user,bler,throughput,goodput,frames\n";
  os << scenario_id << ",1," << csv_num(outcome.bler1) << ','
     << csv_num(outcome.throughput_bps_hz) << ',' << csv_num(outcome.goodput_bps_hz)
     << ',' << outcome.frames << '\n';
  os << scenario_id << ",2," << csv_num(outcome.bler2) << ','
     << csv_num(outcome.throughput_bps_hz) << ',' << csv_num(outcome.goodput_bps_hz)
     << ',' << outcome.frames << '\n';
}

void write_sinr_csv(std::ostream& os, int drop_id,
                    const std::vector<SinrReport>& reports) {
  os << "drop_id,user,symbol,pre,post\n";
  for (const SinrReport& rep : reports)
    for (Eigen::Index j = 0; j < rep.pre_sic.size(); ++j)
      os << drop_id << ',' << rep.user + 1 << ',' << j << ','
         << csv_num(rep.pre_sic(j)) << ',' << csv_num(rep.post_sic(j)) << '\n';
}

void write_cdf_dat(std::ostream& os, std::vector<double> rates) {
  std::sort(rates.begin(), rates.end());
  const double n = static_cast<double>(rates.size());
  os << "# rate  empirical_cdf\n";
  for (size_t i = 0; i < rates.size(); ++i)
    os << csv_num(rates[i]) << ' ' << csv_num((i + 1.0) / n) << '\n';
}

}  // namespace ddnoma
