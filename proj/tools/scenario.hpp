// SPDX-License-Identifier: Apache-2.0
//
// Scenario files: flat key=value structured text with '#' comments and
// dotted keys for nesting.  A scenario fully determines a sweep — fading
// shape, modulation, noise family, approximation choice, SNR grid, seed,
// error budget, and output path — so every command is reproducible from
// the file alone.

#ifndef ETAMU_TOOLS_SCENARIO_HPP_
#define ETAMU_TOOLS_SCENARIO_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "etamu/fading.hpp"
#include "etamu/metrics.hpp"

namespace etamu_cli {

struct Scenario {
  etamu::Format format = etamu::Format::I;
  double eta = 0.5;
  int mu = 1;
  int branches = 1;

  etamu::Scheme scheme = etamu::Scheme::BPSK;
  int M = 2;

  double noise_a = 2.0;

  // Exactly one of: empty (derive a preset from noise_a), a preset name
  // ("qa0.5", "qa1", "qa1.5", "qa2", "qa2.5"), or a fit-record path.
  std::string approx_preset;
  std::string approx_fit_path;

  double start_db = 0.0;
  double stop_db = 30.0;
  double step_db = 1.0;
  bool grid_set = false;

  std::uint64_t seed = 1;
  double budget = 0.25;
  std::string out_path;
};

// Throws std::runtime_error with a line-numbered message on any malformed
// or unknown key; the caller maps this to the configuration exit code.
Scenario parse_scenario_text(std::istream& in, const std::string& origin);
Scenario parse_scenario_file(const std::string& path);

// Lossless round trip: parse(serialize(s)) reproduces every field bit for
// bit (doubles are written with 17 significant digits).
std::string serialize_scenario(const Scenario& s);

// String <-> enum helpers shared by parser and serializer.
const char* format_name(etamu::Format f);
const char* scheme_name(etamu::Scheme s);
etamu::Format parse_format(const std::string& text);
etamu::Scheme parse_scheme(const std::string& text);

// "a:b:step" -> inclusive grid bounds; throws std::runtime_error on
// malformed input or a grid that would be empty.
void parse_grid_spec(const std::string& text, double* start_db, double* stop_db,
                     double* step_db);

// Materializes the inclusive dB grid (start, start+step, ..., <= stop).
std::vector<double> make_grid(const Scenario& s);

}  // namespace etamu_cli

#endif  // ETAMU_TOOLS_SCENARIO_HPP_
