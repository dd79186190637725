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

// CSV tables and gnuplot scripts for experiment output. Every file starts
// with a `#` comment block echoing the resolved configuration.

#ifndef VHL_CSV_HPP_
#define VHL_CSV_HPP_

#include <string>
#include <vector>

#include "vhl/harness.hpp"
#include "vhl/io.hpp"
#include "vhl/postprocess.hpp"

namespace vhl {

// Round-trip decimal form used for every floating-point field.
std::string format_number(double x);

std::string comment_block(const ConfigEcho& echo);

// Header: s,r,n,trials,success_rate
std::string phase_grid_csv(const PhaseGrid& grid, const ConfigEcho& echo);

// Header: n,s,r,separated,seed,success,rel_error,iterations,wall_time_ms.
// Without `include_timing` the wall time column is written as 0 so reruns
// are byte-identical.
std::string trials_csv(const std::vector<TrialOutcome>& trials,
                       const ConfigEcho& echo, bool include_timing);

// Header: n,iteration,rel_error_log10
std::string convergence_csv(const std::vector<ConvergenceTrace>& traces,
                            const ConfigEcho& echo);

// Header: tau,pseudospectrum
std::string spectrum_csv(const MusicSpectrum& spectrum, const ConfigEcho& echo);

// Header: k,tau_hat,|d_hat|,phase_d_hat. `weights` may be null when the
// weight solve was skipped; the amplitude columns are then empty.
std::string peaks_csv(const MusicSpectrum& spectrum,
                      const WeightEstimate* weights, const ConfigEcho& echo);

std::string phase_plot_script(const PhaseGrid& grid,
                              const std::string& csv_name,
                              const ConfigEcho& echo);

std::string convergence_plot_script(const std::vector<ConvergenceTrace>& traces,
                                    const std::string& csv_name,
                                    const ConfigEcho& echo);

}  // namespace vhl

#endif  // VHL_CSV_HPP_
