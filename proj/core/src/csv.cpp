// Copyright 2026 The vhl Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vhl/csv.hpp"

#include <cmath>
#include <cstdio>

namespace vhl {
namespace {

std::string num(double x) { return format_number(x); }

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string comment_block(const ConfigEcho& echo) {
  std::string out;
  for (const auto& [key, value] : echo) out += "# " + key + ": " + value + "\n";
  return out;
}

std::string phase_grid_csv(const PhaseGrid& grid, const ConfigEcho& echo) {
  std::string out = comment_block(echo);
  out += "# reference: " + grid.reference + "\n";
  out += "s,r,n,trials,success_rate\n";
  for (const PhaseCell& c : grid.cells)
    out += std::to_string(c.s) + "," + std::to_string(c.r) + "," +
           std::to_string(c.n) + "," + std::to_string(c.trials) + "," +
           num(c.success_rate()) + "\n";
  return out;
}

std::string trials_csv(const std::vector<TrialOutcome>& trials,
                       const ConfigEcho& echo, bool include_timing) {
  std::string out = comment_block(echo);
  out += "n,s,r,separated,seed,success,rel_error,iterations,wall_time_ms\n";
  for (const TrialOutcome& t : trials)
    out += std::to_string(t.params.n) + "," + std::to_string(t.params.s) +
           "," + std::to_string(t.params.r) + "," +
           (t.params.separated ? "1" : "0") + "," +
           std::to_string(t.params.seed) + "," + (t.success ? "1" : "0") +
           "," + num(t.rel_error) + "," + std::to_string(t.iterations) + "," +
           (include_timing ? num(t.wall_time_ms) : std::string("0")) + "\n";
  return out;
}

std::string convergence_csv(const std::vector<ConvergenceTrace>& traces,
                            const ConfigEcho& echo) {
  std::string out = comment_block(echo);
  out += "n,iteration,rel_error_log10\n";
  for (const ConvergenceTrace& tr : traces)
    for (std::size_t t = 0; t < tr.log10_rel_error.size(); ++t)
      out += std::to_string(tr.n) + "," + std::to_string(t) + "," +
             num(tr.log10_rel_error[t]) + "\n";
  return out;
}

std::string spectrum_csv(const MusicSpectrum& spectrum,
                         const ConfigEcho& echo) {
  std::string out = comment_block(echo);
  out += "tau,pseudospectrum\n";
  for (std::size_t k = 0; k < spectrum.grid.size(); ++k)
    out += num(spectrum.grid[k]) + "," + num(spectrum.values[k]) + "\n";
  return out;
}

std::string peaks_csv(const MusicSpectrum& spectrum,
                      const WeightEstimate* weights, const ConfigEcho& echo) {
  std::string out = comment_block(echo);
  if (spectrum.degraded)
    out += "# degraded: found " + std::to_string(spectrum.peaks.size()) +
           " separated peaks\n";
  out += "k,tau_hat,|d_hat|,phase_d_hat\n";
  for (std::size_t k = 0; k < spectrum.peaks.size(); ++k) {
    out += std::to_string(k) + "," + num(spectrum.peaks[k].location) + ",";
    if (weights != nullptr && k < weights->amplitudes.size())
      out += num(std::abs(weights->amplitudes[k])) + "," +
             num(std::arg(weights->amplitudes[k]));
    else
      out += ",";
    out += "\n";
  }
  return out;
}

std::string phase_plot_script(const PhaseGrid& grid,
                              const std::string& csv_name,
                              const ConfigEcho& echo) {
  std::string out = comment_block(echo);
  out += "set datafile separator ','\n";
  out += "set datafile commentschars '#'\n";
  out += "set palette gray\n";
  out += "set cbrange [0:1]\n";
  if (grid.kind == "sr") {
    out += "set xlabel 'r'\nset ylabel 's'\n";
    out += "set title 'success rate, n = " +
           (grid.cells.empty() ? std::string("?")
                               : std::to_string(grid.cells.front().n)) +
           "'\n";
    out += "plot '" + csv_name +
           "' every ::1 using 2:1:5 with image notitle, "
           "20.0/x with lines lc rgb 'red' lw 2 title 'r*s = 20'\n";
  } else {
    const bool vary_s = grid.kind == "ns";
    const std::string axis = vary_s ? "s" : "r";
    out += "set xlabel '" + axis + "'\nset ylabel 'n'\n";
    out += "plot '" + csv_name + "' every ::1 using " +
           (vary_s ? "1" : "2") +
           ":3:5 with image notitle, "
           "2.5*x with lines lc rgb 'red' lw 2 title 'n = 2.5" +
           axis + "'\n";
  }
  return out;
}

std::string convergence_plot_script(const std::vector<ConvergenceTrace>& traces,
                                    const std::string& csv_name,
                                    const ConfigEcho& echo) {
  std::string out = comment_block(echo);
  out += "set datafile separator ','\n";
  out += "set datafile commentschars '#'\n";
  out += "set xlabel 'iteration'\n";
  out += "set ylabel 'log10 relative error'\n";
  out += "plot ";
  for (std::size_t k = 0; k < traces.size(); ++k) {
    const std::string n = std::to_string(traces[k].n);
    if (k > 0) out += ", \\\n     ";
    out += "'" + csv_name + "' every ::1 using ($1 == " + n +
           " ? $2 : 1/0):3 with lines title 'n = " + n + "'";
  }
  out += "\n";
  return out;
}

}  // namespace vhl
