// pybind11 surface over the simulator core: grid/channel construction, the
// LMMSE products and SINR math, power allocation, FEC primitives and the
// link/system harnesses.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ddnoma/channel.hpp"
#include "ddnoma/equalizer.hpp"
#include "ddnoma/ldpc.hpp"
#include "ddnoma/link.hpp"
#include "ddnoma/power_alloc.hpp"
#include "ddnoma/qam.hpp"
#include "ddnoma/sinr.hpp"
#include "ddnoma/system.hpp"
#include "ddnoma/transforms.hpp"
#include "ddnoma/validate.hpp"

namespace py = pybind11;
using namespace ddnoma;

PYBIND11_MODULE(_core, m) {
  m.doc() = "delay-Doppler NOMA link/system simulator core";

  py::enum_<Waveform>(m, "Waveform")
      .value("OTFS", Waveform::kOtfs)
      .value("OFDM", Waveform::kOfdm);

  py::enum_<Direction>(m, "Direction")
      .value("DOWNLINK", Direction::kDownlink)
      .value("UPLINK", Direction::kUplink);

  py::enum_<QamOrder>(m, "QamOrder")
      .value("QPSK", QamOrder::kQpsk)
      .value("QAM16", QamOrder::k16Qam)
      .value("QAM64", QamOrder::k64Qam)
      .value("NONE", QamOrder::kNone);

  py::enum_<PaScheme>(m, "PaScheme")
      .value("OMA", PaScheme::kOma)
      .value("FIXED", PaScheme::kFixed)
      .value("FTPA_AVG_SNR", PaScheme::kFtpaAvgSnr)
      .value("FTPA_CHANNEL_NORM", PaScheme::kFtpaChannelNorm)
      .value("WSRM_AVG_SNR", PaScheme::kWsrmAvgSnr)
      .value("WSRM_INST", PaScheme::kWsrmInst);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<>())
      .def_readwrite("doppler_bins", &GridSpec::doppler_bins)
      .def_readwrite("delay_bins", &GridSpec::delay_bins)
      .def_readwrite("subcarrier_spacing_hz", &GridSpec::subcarrier_spacing_hz)
      .def_readwrite("waveform", &GridSpec::waveform)
      .def_readwrite("cp_len", &GridSpec::cp_len)
      .def("frame_size", &GridSpec::frame_size)
      .def("bandwidth_hz", &GridSpec::bandwidth_hz)
      .def("frame_duration_s", &GridSpec::frame_duration_s,
           py::arg("include_cp") = false);

  m.def("build_modulation_matrix",
        [](const GridSpec& g, int max_dim) { return build_modulation_matrix(g, max_dim).a; },
        py::arg("grid"), py::arg("max_dim") = 4096);
  m.def("add_cyclic_prefix", &add_cyclic_prefix);
  m.def("remove_cyclic_prefix", &remove_cyclic_prefix);
  m.def("max_doppler", &max_doppler);
  m.def("default_cp_len", &default_cp_len, py::arg("grid"),
        py::arg("max_delay_s") = EvaProfile::max_delay_s());

  py::class_<Path>(m, "Path")
      .def_readwrite("gain", &Path::gain)
      .def_readwrite("delay_bin", &Path::delay_bin)
      .def_readwrite("doppler_bin", &Path::doppler_bin);

  py::class_<PathSet>(m, "PathSet")
      .def(py::init<>())
      .def_readwrite("paths", &PathSet::paths)
      .def_readwrite("max_doppler_hz", &PathSet::max_doppler_hz)
      .def_readwrite("max_delay_s", &PathSet::max_delay_s);

  m.def("sample_eva_channel", &sample_eva_channel, py::arg("grid"),
        py::arg("speed_mps"), py::arg("carrier_freq_hz"), py::arg("seed"));

  py::class_<ChannelRealization>(m, "ChannelRealization")
      .def_readonly("path_set", &ChannelRealization::path_set)
      .def("dense", &ChannelRealization::dense)
      .def("frobenius_norm", &ChannelRealization::frobenius_norm);

  m.def("build_channel_matrix", &build_channel_matrix);
  m.def("apply_channel",
        [](const ChannelRealization& ch, const Eigen::VectorXcd& s, double nv,
           uint64_t seed) { return apply_channel(ch.h, s, nv, seed); });

  py::class_<PowerSplit>(m, "PowerSplit")
      .def(py::init([](std::vector<double> f, double p) {
             return PowerSplit{std::move(f), p};
           }),
           py::arg("fractions"), py::arg("total_power_w") = 1.0)
      .def_readwrite("fractions", &PowerSplit::fractions)
      .def_readwrite("total_power_w", &PowerSplit::total_power_w)
      .def("validate", &PowerSplit::validate);

  py::class_<WsrmWeights>(m, "WsrmWeights")
      .def(py::init([](double w1, double w2) { return WsrmWeights{w1, w2}; }),
           py::arg("w1") = 0.6, py::arg("w2") = 0.4)
      .def_readwrite("w1", &WsrmWeights::w1)
      .def_readwrite("w2", &WsrmWeights::w2);

  py::class_<InstSinrScalars>(m, "InstSinrScalars")
      .def(py::init<>())
      .def_readwrite("g1_desired", &InstSinrScalars::g1_desired)
      .def_readwrite("g1_isi", &InstSinrScalars::g1_isi)
      .def_readwrite("g1_noma", &InstSinrScalars::g1_noma)
      .def_readwrite("p1_noise", &InstSinrScalars::p1_noise)
      .def_readwrite("g2_desired", &InstSinrScalars::g2_desired)
      .def_readwrite("g2_isi", &InstSinrScalars::g2_isi)
      .def_readwrite("p2_noise", &InstSinrScalars::p2_noise);

  m.def("fpa", &fpa);
  m.def("ftpa_avg_snr", &ftpa_avg_snr);
  m.def("ftpa_channel_norm",
        py::overload_cast<const std::vector<double>&>(&ftpa_channel_norm));
  m.def("wsrm_avg_snr", &wsrm_avg_snr);
  m.def("wsrm_instantaneous", &wsrm_instantaneous);
  m.def("wsrm_inst_rate", &wsrm_inst_rate);

  py::class_<EqualizerProducts>(m, "EqualizerProducts")
      .def_readonly("c", &EqualizerProducts::c)
      .def_readonly("b", &EqualizerProducts::b)
      .def_readonly("cross", &EqualizerProducts::cross);

  m.def("mmse_products_dl", &mmse_products_dl, py::arg("h"), py::arg("a"),
        py::arg("beta"), py::arg("avg_snr"));
  m.def("mmse_products_ul", &mmse_products_ul, py::arg("channels"), py::arg("a"),
        py::arg("avg_snrs"), py::arg("user"));

  py::class_<LmmseSymbolStats>(m, "LmmseSymbolStats")
      .def_readonly("desired_gain", &LmmseSymbolStats::desired_gain)
      .def_readonly("row_energy", &LmmseSymbolStats::row_energy)
      .def_readonly("noise_energy", &LmmseSymbolStats::noise_energy)
      .def_readonly("cross_energy", &LmmseSymbolStats::cross_energy);

  m.def("stats_from_products", &stats_from_products);
  m.def("dl_symbol_stats",
        [](const ChannelRealization& ch, const GridSpec& grid, double avg_snr) {
          const LmmseSolver solver(gram_single(ch.h, 1.0, 1.0 / avg_snr), ch.h);
          return solver.symbol_stats(WaveformTransform(grid));
        },
        py::arg("channel"), py::arg("grid"), py::arg("avg_snr"));

  py::class_<SinrReport>(m, "SinrReport")
      .def_readonly("user", &SinrReport::user)
      .def_readonly("pre_sic", &SinrReport::pre_sic)
      .def_readonly("post_sic", &SinrReport::post_sic)
      .def("mean_pre", &SinrReport::mean_pre)
      .def("mean_post", &SinrReport::mean_post);

  m.def("sinr_dl", &sinr_dl, py::arg("stats"), py::arg("split"),
        py::arg("total_power_w"), py::arg("noise_var"), py::arg("user"));
  m.def("sinr_ul", &sinr_ul, py::arg("stats"), py::arg("powers_w"),
        py::arg("noise_var"), py::arg("user"));
  m.def("dl_sum_rate", &dl_sum_rate);
  m.def("ul_sum_rate", &ul_sum_rate);

  py::class_<LdpcCode>(m, "LdpcCode")
      .def_static("wlan_648_r23", &LdpcCode::wlan_648_r23)
      .def("codeword_len", &LdpcCode::codeword_len)
      .def("message_len", &LdpcCode::message_len)
      .def("rate", &LdpcCode::rate)
      .def("encode",
           [](const LdpcCode& code, const std::vector<uint8_t>& msg) {
             return code.encode(msg);
           })
      .def("syndrome_ok", [](const LdpcCode& code, const std::vector<uint8_t>& cw) {
        return code.syndrome_ok(cw);
      });

  py::class_<LdpcDecodeResult>(m, "LdpcDecodeResult")
      .def_readonly("codeword", &LdpcDecodeResult::codeword)
      .def_readonly("converged", &LdpcDecodeResult::converged)
      .def_readonly("iterations", &LdpcDecodeResult::iterations);

  m.def("ldpc_decode_minsum",
        [](const LdpcCode& code, const std::vector<double>& llr, int max_iter) {
          return ldpc_decode_minsum(code, llr, max_iter);
        },
        py::arg("code"), py::arg("llr"), py::arg("max_iter") = 50);

  py::class_<QamConstellation>(m, "QamConstellation")
      .def(py::init<QamOrder>())
      .def("bits_per_symbol", &QamConstellation::bits_per_symbol)
      .def("points", &QamConstellation::points);

  m.def("qam_map", [](const std::vector<uint8_t>& bits, const QamConstellation& c) {
    return qam_map(bits, c);
  });
  m.def("qam_llr", &qam_llr);

  py::class_<LinkConfig>(m, "LinkConfig")
      .def(py::init<>())
      .def_readwrite("grid", &LinkConfig::grid)
      .def_readwrite("speed_mps", &LinkConfig::speed_mps)
      .def_readwrite("carrier_freq_hz", &LinkConfig::carrier_freq_hz)
      .def_readwrite("direction", &LinkConfig::direction)
      .def_readwrite("snr1_db", &LinkConfig::snr1_db)
      .def_readwrite("snr2_db", &LinkConfig::snr2_db)
      .def_readwrite("split", &LinkConfig::split)
      .def_readwrite("mod1", &LinkConfig::mod1)
      .def_readwrite("mod2", &LinkConfig::mod2)
      .def_readwrite("frames", &LinkConfig::frames)
      .def_readwrite("ldpc_max_iter", &LinkConfig::ldpc_max_iter)
      .def_readwrite("genie_sic", &LinkConfig::genie_sic)
      .def_readwrite("threads", &LinkConfig::threads);

  py::class_<LinkOutcome>(m, "LinkOutcome")
      .def_readonly("bler1", &LinkOutcome::bler1)
      .def_readonly("bler2", &LinkOutcome::bler2)
      .def_readonly("throughput_bps_hz", &LinkOutcome::throughput_bps_hz)
      .def_readonly("goodput_bps_hz", &LinkOutcome::goodput_bps_hz)
      .def_readonly("frames", &LinkOutcome::frames)
      .def_readonly("codewords_per_frame1", &LinkOutcome::codewords_per_frame1)
      .def_readonly("codewords_per_frame2", &LinkOutcome::codewords_per_frame2);

  m.def("avg_sinr_dl", &avg_sinr_dl);
  m.def("avg_sinr_ul", &avg_sinr_ul);
  m.def("select_modulation", &select_modulation);
  m.def("throughput", &throughput);
  m.def("goodput", &goodput);
  m.def("run_dl_link", &run_dl_link, py::arg("config"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_ul_link", &run_ul_link, py::arg("config"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("grid", &ScenarioConfig::grid)
      .def_readwrite("waveforms", &ScenarioConfig::waveforms)
      .def_readwrite("direction", &ScenarioConfig::direction)
      .def_readwrite("speed_mps", &ScenarioConfig::speed_mps)
      .def_readwrite("carrier_freq_hz", &ScenarioConfig::carrier_freq_hz)
      .def_readwrite("snr1_db", &ScenarioConfig::snr1_db)
      .def_readwrite("snr2_db", &ScenarioConfig::snr2_db)
      .def_readwrite("schemes", &ScenarioConfig::schemes)
      .def_readwrite("fixed_fractions", &ScenarioConfig::fixed_fractions)
      .def_readwrite("wsrm_weights", &ScenarioConfig::wsrm_weights)
      .def_readwrite("drops", &ScenarioConfig::drops)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_readwrite("threads", &ScenarioConfig::threads);

  py::class_<SeSample>(m, "SeSample")
      .def_readonly("drop", &SeSample::drop)
      .def_readonly("waveform", &SeSample::waveform)
      .def_readonly("scheme", &SeSample::scheme)
      .def_readonly("rate1", &SeSample::rate1)
      .def_readonly("rate2", &SeSample::rate2)
      .def_readonly("sum_rate", &SeSample::sum_rate);

  py::class_<SeSummary>(m, "SeSummary")
      .def_readonly("mean", &SeSummary::mean)
      .def_readonly("outage5", &SeSummary::outage5)
      .def_readonly("count", &SeSummary::count);

  m.def("run_system_mc", &run_system_mc, py::call_guard<py::gil_scoped_release>());
  m.def("summarize", &summarize);
  m.def("sum_rates_of", &sum_rates_of);
  m.def("run_validation", &run_validation);
}
