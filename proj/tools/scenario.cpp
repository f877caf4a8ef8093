// SPDX-License-Identifier: Apache-2.0

#include "scenario.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace etamu_cli {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(origin, line, "invalid number for " + key + ": '" + value + "'");
  }
}

long long parse_int(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(origin, line, "invalid integer for " + key + ": '" + value + "'");
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const char* format_name(etamu::Format f) {
  return f == etamu::Format::I ? "I" : "II";
}

const char* scheme_name(etamu::Scheme s) {
  switch (s) {
    case etamu::Scheme::BFSK: return "bfsk";
    case etamu::Scheme::BPSK: return "bpsk";
    case etamu::Scheme::QPSK: return "qpsk";
    case etamu::Scheme::MPAM: return "mpam";
    case etamu::Scheme::MPSK: return "mpsk";
    case etamu::Scheme::MQAM_rect: return "mqam_rect";
    case etamu::Scheme::MQAM_nonrect: return "mqam_nonrect";
  }
  return "?";
}

etamu::Format parse_format(const std::string& text) {
  if (text == "I") return etamu::Format::I;
  if (text == "II") return etamu::Format::II;
  throw std::runtime_error("unknown format '" + text + "' (expected I or II)");
}

etamu::Scheme parse_scheme(const std::string& text) {
  if (text == "bfsk") return etamu::Scheme::BFSK;
  if (text == "bpsk") return etamu::Scheme::BPSK;
  if (text == "qpsk") return etamu::Scheme::QPSK;
  if (text == "mpam") return etamu::Scheme::MPAM;
  if (text == "mpsk") return etamu::Scheme::MPSK;
  if (text == "mqam_rect") return etamu::Scheme::MQAM_rect;
  if (text == "mqam_nonrect") return etamu::Scheme::MQAM_nonrect;
  throw std::runtime_error("unknown modulation scheme '" + text + "'");
}

void parse_grid_spec(const std::string& text, double* start_db, double* stop_db,
                     double* step_db) {
  const size_t c1 = text.find(':');
  const size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw std::runtime_error("grid spec must be start:stop:step, got '" + text + "'");
  }
  const std::string a = text.substr(0, c1);
  const std::string b = text.substr(c1 + 1, c2 - c1 - 1);
  const std::string c = text.substr(c2 + 1);
  try {
    size_t p1 = 0, p2 = 0, p3 = 0;
    const double va = std::stod(a, &p1);
    const double vb = std::stod(b, &p2);
    const double vc = std::stod(c, &p3);
    if (p1 != a.size() || p2 != b.size() || p3 != c.size()) {
      throw std::invalid_argument("trailing characters");
    }
    if (!(vc > 0.0) || vb < va) {
      throw std::invalid_argument("need stop >= start and step > 0");
    }
    *start_db = va;
    *stop_db = vb;
    *step_db = vc;
  } catch (const std::exception& e) {
    throw std::runtime_error("invalid grid spec '" + text + "': " + e.what());
  }
}

std::vector<double> make_grid(const Scenario& s) {
  const long n =
      static_cast<long>(std::floor((s.stop_db - s.start_db) / s.step_db + 1e-9)) + 1;
  if (n < 1 || n > 100000) {
    throw std::runtime_error("grid has " + std::to_string(n) + " points");
  }
  std::vector<double> grid(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) grid[size_t(i)] = s.start_db + double(i) * s.step_db;
  return grid;
}

Scenario parse_scenario_text(std::istream& in, const std::string& origin) {
  Scenario s;
  std::string line;
  int lineno = 0;
  bool grid_start = false, grid_stop = false, grid_step = false;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) fail(origin, lineno, "expected key=value: '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) fail(origin, lineno, "empty value for " + key);
    try {
      if (key == "fading.format") {
        s.format = parse_format(value);
      } else if (key == "fading.eta") {
        s.eta = parse_double(origin, lineno, key, value);
      } else if (key == "fading.mu") {
        s.mu = static_cast<int>(parse_int(origin, lineno, key, value));
      } else if (key == "fading.branches") {
        s.branches = static_cast<int>(parse_int(origin, lineno, key, value));
      } else if (key == "modulation.scheme") {
        s.scheme = parse_scheme(value);
      } else if (key == "modulation.M") {
        s.M = static_cast<int>(parse_int(origin, lineno, key, value));
      } else if (key == "noise.a") {
        s.noise_a = parse_double(origin, lineno, key, value);
      } else if (key == "approx.preset") {
        s.approx_preset = value;
      } else if (key == "approx.fit") {
        s.approx_fit_path = value;
      } else if (key == "grid.start_db") {
        s.start_db = parse_double(origin, lineno, key, value);
        grid_start = true;
      } else if (key == "grid.stop_db") {
        s.stop_db = parse_double(origin, lineno, key, value);
        grid_stop = true;
      } else if (key == "grid.step_db") {
        s.step_db = parse_double(origin, lineno, key, value);
        grid_step = true;
      } else if (key == "seed") {
        s.seed = static_cast<std::uint64_t>(parse_int(origin, lineno, key, value));
      } else if (key == "budget") {
        s.budget = parse_double(origin, lineno, key, value);
      } else if (key == "out") {
        s.out_path = value;
      } else {
        fail(origin, lineno, "unknown key '" + key + "'");
      }
    } catch (const std::runtime_error&) {
      throw;
    } catch (const std::exception& e) {
      fail(origin, lineno, e.what());
    }
  }
  s.grid_set = grid_start && grid_stop && grid_step;
  if (!(s.step_db > 0.0) || s.stop_db < s.start_db) {
    throw std::runtime_error(origin + ": grid requires stop >= start and step > 0");
  }
  if (!s.approx_preset.empty() && !s.approx_fit_path.empty()) {
    throw std::runtime_error(origin +
                             ": approx.preset and approx.fit are mutually exclusive");
  }
  return s;
}

Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scenario file '" + path + "'");
  return parse_scenario_text(in, path);
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "fading.format = " << format_name(s.format) << "\n";
  out << "fading.eta = " << fmt17(s.eta) << "\n";
  out << "fading.mu = " << s.mu << "\n";
  out << "fading.branches = " << s.branches << "\n";
  out << "modulation.scheme = " << scheme_name(s.scheme) << "\n";
  out << "modulation.M = " << s.M << "\n";
  out << "noise.a = " << fmt17(s.noise_a) << "\n";
  if (!s.approx_preset.empty()) out << "approx.preset = " << s.approx_preset << "\n";
  if (!s.approx_fit_path.empty()) out << "approx.fit = " << s.approx_fit_path << "\n";
  out << "grid.start_db = " << fmt17(s.start_db) << "\n";
  out << "grid.stop_db = " << fmt17(s.stop_db) << "\n";
  out << "grid.step_db = " << fmt17(s.step_db) << "\n";
  out << "seed = " << s.seed << "\n";
  out << "budget = " << fmt17(s.budget) << "\n";
  if (!s.out_path.empty()) out << "out = " << s.out_path << "\n";
  return out.str();
}

}  // namespace etamu_cli
