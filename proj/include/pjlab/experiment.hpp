#pragma once

#include <string>
#include <vector>

#include "pjlab/certificates.hpp"
#include "pjlab/config.hpp"
#include "pjlab/diagnostics.hpp"
#include "pjlab/solver.hpp"
#include "pjlab/timeseries.hpp"

namespace pjlab {

// Certificates relevant to this damping profile: the matching theorem
// (undamped n=2 -> yuen_2_1, bounded sup -> bounded_3_1, exponential ->
// unbounded_4_1) followed by the riccati_numeric comparison bound.
std::vector<BlowupCertificate> certificates_for(double h0, int n, const DampingProfile& profile,
                                                const RiccatiOptions& ropts = {});

// Everything one simulation produces, kept in memory so callers can
// write it to disk, test it, or aggregate it into a sweep row.
struct SimulationArtifacts {
    RunConfig config;
    InitialData initial;
    CompatibilityReport compatibility;
    RunResult run;
    MonitorReport monitors;
    std::vector<BlowupCertificate> certificates;
    double omega_residual_final = 0.0;
    bool omega_final_resolved = false;

    // Theorem-certificate blowup bound, when one applies.
    std::optional<double> t_star() const;
};

SimulationArtifacts run_experiment(const RunConfig& cfg);

// Canonical run CSV: columns t,H,l2vsq,max_v,min_u,dt,eq8_residual with
// the diagnostic columns intv3,energy_residual,decay_bound,inv_H,lambda,
// resolved appended after them.
ColumnTable make_run_table(const SimulationArtifacts& art);

std::string make_summary_json(const SimulationArtifacts& art);

// Writes outdir/series.csv and outdir/summary.json (outdir created if
// missing). Byte-identical output for identical configs.
void write_artifacts(const SimulationArtifacts& art, const std::string& outdir);

// Runs the sweep grid on `workers` threads and writes one CSV row per
// grid point, sorted by (n, damping, amplitude). Output is independent
// of the worker count. Returns the number of failed grid points.
int run_sweep(const SweepSpec& spec, const std::string& csv_path);

}  // namespace pjlab
