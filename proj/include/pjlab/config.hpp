#pragma once

#include <map>
#include <string>
#include <vector>

#include "pjlab/solver.hpp"

namespace pjlab {

// One simulation's configuration. Parses from a flat key = value file
// (# comments, blank lines ignored); CLI flag overrides win. Every field
// has a default so a config file only needs the keys it changes.
//
//   n          dimension parameter (int >= 2)          [2]
//   damping    profile literal (see parse_damping)     [zero]
//   family     initial family: sin2 | poly_bump        [sin2]
//   amplitude  initial amplitude A                     [1]
//   N          grid intervals, power of two >= 128     [512]
//   cfl        convective step fraction in (0,1]       [0.5]
//   dt_min     step collapse threshold                 [1e-12]
//   v_max      breakdown threshold on max|v|           [1e6]
//   t_end      integration horizon                     [2]
//   rk_tol     embedded-pair error tolerance           [1e-8]
//   safety     reaction limit factor                   [0.1]
//   outdir     output directory                        [out]
struct RunConfig {
    int n = 2;
    std::string damping = "zero";
    std::string family = "sin2";
    double amplitude = 1.0;
    SolverConfig solver;
    std::string outdir = "out";

    void apply(const std::string& key, const std::string& value);
    std::string to_json() const;  // fully resolved, defaults included
};

RunConfig parse_run_config_file(const std::string& path);
RunConfig parse_run_config_text(const std::string& text);

// Cartesian sweep over n, damping literal and amplitude; all other
// RunConfig keys act as the per-run template. File keys:
//   n_list         comma-separated ints            (e.g. 2,3)
//   damping_list   semicolon-separated literals    (e.g. zero;const:1)
//   amplitude_list comma-separated reals           (e.g. 1,2)
//   workers        worker thread count             [1]
// plus any RunConfig key for the template.
struct SweepSpec {
    std::vector<int> n_values;
    std::vector<std::string> damping_values;
    std::vector<double> amplitude_values;
    RunConfig base;
    int workers = 1;
    bool exploratory = false;  // simulate uncertified grid points too
};

SweepSpec parse_sweep_spec_file(const std::string& path);
SweepSpec parse_sweep_spec_text(const std::string& text);

}  // namespace pjlab
