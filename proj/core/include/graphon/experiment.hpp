#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphon/fluctuation.hpp"
#include "graphon/graphon.hpp"
#include "graphon/motif.hpp"

namespace graphon {

// A complete Monte Carlo experiment description. Parsed from a flat
// `key = value` file ('#' starts a comment); individual keys can then be
// overridden, which is how CLI flags win over file values. Specs stay
// strings so a config round-trips through the report header untouched.
struct ExperimentConfig {
    std::string kind = "clt";  // lln | clt | er-scaling | degree-cdf | binom-sweep
    std::string graphon_spec = "affine 0 1";   // affine a b | product e |
                                               // constant p | expr <source>
    std::string motif_spec = "K2";             // K2..K4 | P3 | C4 | path k |
                                               // cycle k | complete k |
                                               // edges i-j,k-l,...
    std::vector<int> labels = {1};             // labeled vertices, 1-based
    std::string g_spec = "id";                 // id | const c | poly c0 c1 ...
    std::vector<int> n_list = {100, 200, 400};
    long long reps = 2000;
    std::uint64_t seed = 0;
    int threads = 1;
    std::vector<double> y_grid = {0.25, 0.5, 0.75};  // degree-cdf
    std::vector<double> p_grid = {0.3, 0.5, 0.7};    // binom-sweep
    std::vector<double> s_grid = {-2.0, -1.0, 0.5, 1.0, 2.0};  // binom-sweep
    std::string sweep_mode = "edgeworth";  // edgeworth | approx | tail
    std::string out_dir = ".";

    // Throws ConfigError naming the offending field: reps >= 2, n-list
    // strictly increasing and >= 2, threads >= 1, kind known, grids valid.
    void validate() const;

    Graphon build_graphon() const;
    MotifFamily build_family() const;
    TestFunction build_test_function() const;
};

// key = value assignment; unknown keys or unparsable values throw
// ConfigError naming the field.
void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value);

// Reads a flat config file. Errors carry the 1-based line number.
ExperimentConfig parse_config_file(const std::string& path);

struct ReportRow {
    int n = 0;
    std::string statistic;
    double empirical = 0.0;
    double target = 0.0;
    double se = 0.0;
    double z = 0.0;
    double runtime_ms = 0.0;
    bool gate = false;  // row participates in the pass/fail verdict
    bool pass = true;
};

struct ExperimentReport {
    std::string kind;
    std::vector<ReportRow> rows;

    bool all_pass() const;  // every gated row passed
};

// Replicated sampling experiments. Replicate r of size n runs on the seed
// derived from (master seed, replicate index) so results are independent
// of scheduling; per-replicate values are stored by index and reduced in
// index order, which makes aggregates thread-count invariant.
//
// Gating: variance rows pass when |empirical - target| <= 3 SE + 0.02
// target with SE = target sqrt(2/(R-1)); a degenerate target (<= 1e-9)
// passes when the empirical value is <= 0.02. Mean and centering rows pass
// within 3 SE. Normality diagnostics (skewness, excess kurtosis,
// Anderson-Darling) are reported ungated: at Monte Carlo sizes their
// asymptotic null SEs flag ordinary finite-n skew.
ExperimentReport run_lln(const ExperimentConfig& cfg);
ExperimentReport run_clt(const ExperimentConfig& cfg);
ExperimentReport run_er_scaling(const ExperimentConfig& cfg);
ExperimentReport run_degree_cdf(const ExperimentConfig& cfg);

// Deterministic sweeps against the exact binomial CDF over p_grid x s_grid
// at each n. Modes (cfg.sweep_mode): "edgeworth" compares the one-term
// lattice expansion with its printed envelope inside the validity region
// and gates on it; "approx" reports the worst parameter-CDF residual
// against the fitted log^2(n)/n envelope ungated (the constant is fitted,
// not a theorem); "tail" counts super-polynomial tail bound violations at
// admissible offsets and gates on zero.
ExperimentReport run_binom_sweep(const ExperimentConfig& cfg);

// Dispatch on cfg.kind.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Fixed header n,statistic,empirical,target,se,z,runtime_ms; %.12g fields.
// Byte-identical across reruns with the same config and seed except for
// the runtime_ms column. Empty report -> PreconditionError; unwritable
// path -> IoError.
void emit_csv(const ExperimentReport& report, const std::string& path);

// Log-log residual plot |empirical - target| vs n, one polyline series per
// statistic. Same error contract as emit_csv.
void emit_svg(const ExperimentReport& report, const std::string& path);

}  // namespace graphon
