#include "ddnoma/scenario_file.hpp"

#include <fstream>
#include <sstream>

namespace ddnoma {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

ScenarioFile ScenarioFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

ScenarioFile ScenarioFile::parse_string(const std::string& text) {
  ScenarioFile f;
  std::istringstream in(text);
  std::string line;
  std::string section = "global";
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("scenario file line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("scenario file line " + std::to_string(lineno) +
                        ": expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw ConfigError("scenario file line " + std::to_string(lineno) +
                        ": empty key");
    f.sections_[section][key] = trim(line.substr(eq + 1));
  }
  return f;
}

bool ScenarioFile::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string ScenarioFile::get(const std::string& section, const std::string& key,
                              const std::string& fallback) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return fallback;
  const auto k = s->second.find(key);
  return k == s->second.end() ? fallback : k->second;
}

double ScenarioFile::get_num(const std::string& section, const std::string& key,
                             double fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get(section, key, "");
  try {
    size_t used = 0;
    const double d = std::stod(v, &used);
    if (trim(v.substr(used)).empty()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("scenario key [" + section + "] " + key +
                    " is not a number: '" + v + "'");
}

std::vector<std::string> ScenarioFile::get_list(const std::string& section,
                                                const std::string& key) const {
  std::vector<std::string> out;
  std::istringstream ss(get(section, key, ""));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> ScenarioFile::get_num_list(const std::string& section,
                                               const std::string& key) const {
  std::vector<double> out;
  for (const std::string& item : get_list(section, key)) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("scenario key [" + section + "] " + key +
                        " has a non-numeric entry: '" + item + "'");
    }
  }
  return out;
}

GridSpec ScenarioFile::grid() const {
  GridSpec g;
  g.delay_bins = static_cast<int>(get_num("grid", "delay_bins", 256));
  g.doppler_bins = static_cast<int>(get_num("grid", "doppler_bins", 16));
  g.subcarrier_spacing_hz = get_num("grid", "subcarrier_spacing_hz", 15e3);
  g.waveform = waveform_from_string(get("grid", "waveform", "otfs"));
  g.cp_len = static_cast<int>(get_num("grid", "cp_len", default_cp_len(g)));
  g.validate();
  return g;
}

ScenarioConfig ScenarioFile::system_config() const {
  ScenarioConfig cfg;
  cfg.grid = grid();
  cfg.speed_mps = get_num("channel", "speed_kmph", 500.0) / 3.6;
  cfg.carrier_freq_hz = get_num("channel", "carrier_freq_ghz", 5.9) * 1e9;

  const std::string dir = get("system-se", "direction", "downlink");
  cfg.direction = dir == "uplink" ? Direction::kUplink : Direction::kDownlink;
  const auto snr = get_num_list("system-se", "snr_db");
  if (snr.size() == 2) {
    cfg.snr1_db = snr[0];
    cfg.snr2_db = snr[1];
  } else if (!snr.empty()) {
    throw ConfigError("scenario key [system-se] snr_db needs two entries");
  }
  cfg.drops = static_cast<int>(get_num("system-se", "drops", 100));
  cfg.seed = static_cast<uint64_t>(get_num("system-se", "seed", 1));
  cfg.threads = static_cast<int>(get_num("system-se", "threads", 0));
  if (has("system-se", "waveforms")) {
    cfg.waveforms.clear();
    for (const auto& w : get_list("system-se", "waveforms"))
      cfg.waveforms.push_back(waveform_from_string(w));
  }
  if (has("system-se", "schemes")) {
    cfg.schemes.clear();
    for (const auto& s : get_list("system-se", "schemes"))
      cfg.schemes.push_back(scheme_from_string(s));
  }
  if (has("system-se", "fixed_fractions"))
    cfg.fixed_fractions = get_num_list("system-se", "fixed_fractions");
  if (has("system-se", "wsrm_weights")) {
    const auto w = get_num_list("system-se", "wsrm_weights");
    if (w.size() != 2)
      throw ConfigError("scenario key [system-se] wsrm_weights needs two entries");
    cfg.wsrm_weights = {w[0], w[1]};
  }
  cfg.validate();
  return cfg;
}

LinkConfig ScenarioFile::link_config() const {
  LinkConfig cfg;
  cfg.grid = grid();
  cfg.speed_mps = get_num("channel", "speed_kmph", 500.0) / 3.6;
  cfg.carrier_freq_hz = get_num("channel", "carrier_freq_ghz", 5.9) * 1e9;

  const std::string dir = get("link-bler", "direction", "downlink");
  cfg.direction = dir == "uplink" ? Direction::kUplink : Direction::kDownlink;
  const auto snr = get_num_list("link-bler", "snr_db");
  if (snr.size() == 2) {
    cfg.snr1_db = snr[0];
    cfg.snr2_db = snr[1];
  } else if (!snr.empty()) {
    throw ConfigError("scenario key [link-bler] snr_db needs two entries");
  }
  if (has("link-bler", "waveform"))
    cfg.grid.waveform = waveform_from_string(get("link-bler", "waveform", "otfs"));
  if (has("link-bler", "beta")) {
    const auto b = get_num_list("link-bler", "beta");
    if (b.size() != 2)
      throw ConfigError("scenario key [link-bler] beta needs two entries");
    cfg.split.fractions = b;
  }
  cfg.frames = static_cast<int>(get_num("link-bler", "frames", 100));
  cfg.threads = static_cast<int>(get_num("link-bler", "threads", 1));
  if (has("link-bler", "mod1")) cfg.mod1 = qam_from_string(get("link-bler", "mod1", ""));
  if (has("link-bler", "mod2")) cfg.mod2 = qam_from_string(get("link-bler", "mod2", ""));
  cfg.ldpc_max_iter = static_cast<int>(get_num("link-bler", "ldpc_max_iter", 50));
  return cfg;
}

}  // namespace ddnoma
