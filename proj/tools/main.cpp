// graphon-lab: sample W-random graphs, compute motif densities, and run the
// seeded fluctuation experiments from the library. Exit code 0 when every
// gated statistic passes, 1 when a gated row breaches its tolerance, 2 on a
// configuration or precondition error.

#include <CLI11.hpp>

#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "graphon/density.hpp"
#include "graphon/errors.hpp"
#include "graphon/experiment.hpp"
#include "graphon/graph.hpp"
#include "graphon/hom_count.hpp"
#include "graphon/rng.hpp"
#include "graphon/sampler.hpp"

namespace {

using namespace graphon;

// Binds string-valued CLI options to experiment config keys. Flags the user
// actually passed are replayed through apply_config_entry after the config
// file loads, so flag values win and share the file parser's validation.
class ConfigFlags {
  public:
    void bind(CLI::App* cmd, const std::string& flag, const std::string& key,
              const std::string& help) {
        entries_.push_back({key, "", nullptr});
        Entry& e = entries_.back();
        e.opt = cmd->add_option(flag, e.value, help);
    }

    void apply(ExperimentConfig& cfg) const {
        for (const Entry& e : entries_) {
            if (e.opt->count() > 0) apply_config_entry(cfg, e.key, e.value);
        }
    }

  private:
    struct Entry {
        std::string key;
        std::string value;
        CLI::Option* opt;
    };
    std::deque<Entry> entries_;  // stable addresses for CLI11 bindings
};

ExperimentConfig load_config(const std::string& config_path,
                             const ConfigFlags& flags) {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = parse_config_file(config_path);
    flags.apply(cfg);
    return cfg;
}

// --out names a directory to drop <kind>.csv / <kind>.svg into, or, when it
// ends in .csv, the exact table path (the plot lands next to it).
std::pair<std::string, std::string> output_paths(const std::string& out,
                                                 const std::string& kind) {
    namespace fs = std::filesystem;
    fs::path base(out.empty() ? "." : out);
    if (base.extension() == ".csv") {
        if (base.has_parent_path()) fs::create_directories(base.parent_path());
        fs::path svg = base;
        svg.replace_extension(".svg");
        return {base.string(), svg.string()};
    }
    fs::create_directories(base);
    return {(base / (kind + ".csv")).string(), (base / (kind + ".svg")).string()};
}

int run_and_report(ExperimentConfig cfg, const std::string& kind) {
    if (!kind.empty()) cfg.kind = kind;
    const ExperimentReport report = run_experiment(cfg);
    const auto [csv, svg] = output_paths(cfg.out_dir, report.kind);
    emit_csv(report, csv);
    emit_svg(report, svg);

    std::printf("%6s  %-22s %14s %14s %9s  %s\n", "n", "statistic", "empirical",
                "target", "z", "status");
    for (const ReportRow& row : report.rows) {
        std::printf("%6d  %-22s %14.6g %14.6g %9.3g  %s\n", row.n,
                    row.statistic.c_str(), row.empirical, row.target, row.z,
                    row.gate ? (row.pass ? "pass" : "FAIL") : "info");
    }
    std::printf("wrote %s\nwrote %s\n", csv.c_str(), svg.c_str());
    return report.all_pass() ? 0 : 1;
}

int run_sample(const ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    const Graphon w = cfg.build_graphon();
    fs::path dir(cfg.out_dir.empty() ? "." : cfg.out_dir);
    fs::create_directories(dir);
    for (int n : cfg.n_list) {
        const SampledGraph draw =
            sample(w, n, rng::derive(cfg.seed, rng::kTagMonteCarlo, n));
        const fs::path path = dir / ("sample_n" + std::to_string(n) + ".edges");
        std::ofstream out(path);
        if (!out) throw IoError("sample: cannot open '" + path.string() + "'");
        draw.graph.write_edge_list(out);
        if (!out.flush()) {
            throw IoError("sample: write failed on '" + path.string() + "'");
        }
        std::printf("wrote %s (%d vertices, %d edges)\n", path.string().c_str(),
                    draw.graph.num_vertices(), draw.graph.num_edges());
    }
    return 0;
}

int run_density(const ExperimentConfig& cfg, const std::string& graph_path) {
    const SimpleGraph f = cfg.build_family().motifs().front().graph();
    if (!graph_path.empty()) {
        const SimpleGraph g = SimpleGraph::read_edge_list_file(graph_path);
        std::printf("t_hom = %.12g\n", t_hom(f, g));
        std::printf("t_inj = %.12g\n", t_inj(f, g));
        std::printf("t_ind = %.12g\n", t_ind(f, g));
    } else {
        const Graphon w = cfg.build_graphon();
        std::printf("t_hom = %.12g\n", t_graphon(f, w));
        std::printf("t_ind = %.12g\n", t_ind_graphon(f, w));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"W-random graph sampling and fluctuation experiments"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path,
                   "key = value experiment file; flags override its values");

    ConfigFlags flags;
    flags.bind(&app, "--seed", "seed", "master seed (u64)");
    flags.bind(&app, "--threads", "threads", "replicate worker threads");
    flags.bind(&app, "--out", "out",
               "output directory, or explicit .csv path for experiment tables");

    CLI::App* sample_cmd = app.add_subcommand(
        "sample", "draw W-random graphs and write edge lists");
    flags.bind(sample_cmd, "--graphon", "graphon",
               "affine a b | product e | constant p | expr <formula>");
    flags.bind(sample_cmd, "--n", "n", "graph sizes, comma separated");

    CLI::App* density_cmd = app.add_subcommand(
        "density", "motif densities in a graphon or an edge-list graph");
    flags.bind(density_cmd, "--graphon", "graphon", "kernel spec");
    flags.bind(density_cmd, "--motif", "motif",
               "K2..K4 | P3 | C4 | path k | cycle k | complete k | edges i-j,...");
    std::string graph_path;
    density_cmd->add_option("--graph", graph_path,
                            "edge-list file ('p m' header then 'i j' lines); "
                            "replaces --graphon");

    CLI::App* clt_cmd = app.add_subcommand(
        "clt", "sqrt(n) motif-density fluctuations against the analytic variance");
    flags.bind(clt_cmd, "--graphon", "graphon", "kernel spec");
    flags.bind(clt_cmd, "--motif", "motif", "motif spec");
    flags.bind(clt_cmd, "--labels", "labels", "labeled vertices, or 'none'");
    flags.bind(clt_cmd, "--g", "g", "test function: id | const c | poly c0 c1 ...");
    flags.bind(clt_cmd, "--n", "n", "graph sizes");
    flags.bind(clt_cmd, "--reps", "reps", "Monte Carlo replicates per size");

    CLI::App* er_cmd = app.add_subcommand(
        "er-scaling", "n-rescaled Erdos-Renyi fluctuations (constant kernel)");
    flags.bind(er_cmd, "--graphon", "graphon", "must be 'constant p'");
    flags.bind(er_cmd, "--motif", "motif", "motif spec");
    flags.bind(er_cmd, "--n", "n", "graph sizes");
    flags.bind(er_cmd, "--reps", "reps", "Monte Carlo replicates per size");

    CLI::App* cdf_cmd = app.add_subcommand(
        "degree-cdf", "empirical degree-CDF fluctuations against the sigma kernel");
    flags.bind(cdf_cmd, "--graphon", "graphon", "kernel spec (needs D' > 0)");
    flags.bind(cdf_cmd, "--y", "y", "evaluation grid in (0,1)");
    flags.bind(cdf_cmd, "--n", "n", "graph sizes");
    flags.bind(cdf_cmd, "--reps", "reps", "Monte Carlo replicates per size");

    CLI::App* binom_cmd = app.add_subcommand(
        "binom-check", "binomial CDF expansions against exact summation");
    flags.bind(binom_cmd, "--n-list", "n", "sizes, e.g. 64,256,1024");
    flags.bind(binom_cmd, "--p", "p", "success probabilities");
    flags.bind(binom_cmd, "--s", "s", "standardized offsets");
    flags.bind(binom_cmd, "--sweep", "sweep", "edgeworth | approx | tail");

    CLI::App* run_cmd = app.add_subcommand(
        "run", "run an experiment with the kind taken from the config file");
    flags.bind(run_cmd, "--kind", "kind",
               "lln | clt | er-scaling | degree-cdf | binom-sweep");

    for (CLI::App* sub : {sample_cmd, density_cmd, clt_cmd, er_cmd, cdf_cmd,
                          binom_cmd, run_cmd}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ExperimentConfig cfg = load_config(config_path, flags);
        if (*sample_cmd) return run_sample(cfg);
        if (*density_cmd) return run_density(cfg, graph_path);
        if (*clt_cmd) return run_and_report(cfg, "clt");
        if (*er_cmd) return run_and_report(cfg, "er-scaling");
        if (*cdf_cmd) return run_and_report(cfg, "degree-cdf");
        if (*binom_cmd) return run_and_report(cfg, "binom-sweep");
        return run_and_report(cfg, "");  // run: kind from config
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
