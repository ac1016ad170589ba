// mglasso command-line tool: simulate / fit / path / stars / evaluate / clr.
// Exit codes: 0 success, 1 usage or config error, 2 data error, 3 numerical failure.

#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mglasso/mglasso.hpp"

namespace fs = std::filesystem;
using namespace mglasso;
using io::json;

namespace {

struct Timings {
    std::map<std::string, double> seconds;

    template <typename F>
    auto time(const std::string& stage, F&& f) {
        const auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            seconds[stage] += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        } else {
            auto result = f();
            seconds[stage] += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return result;
        }
    }
};

struct Manifest {
    std::string command;
    json config = json::object();
    std::uint64_t seed = 0;
    std::map<std::string, std::string> input_digests;
    Timings timings;

    json to_json() const {
        json t = json::object();
        for (const auto& [stage, secs] : timings.seconds) t[stage] = secs;
        return {{"command", command},   {"config", config},   {"seed", seed},
                {"tool_version", kVersion}, {"input_digests", input_digests}, {"timings_seconds", t}};
    }
};

constexpr const char* kManifestName = "manifest.json";

void write_manifest(const fs::path& dir, const Manifest& manifest) {
    io::write_text_atomic(dir / kManifestName, manifest.to_json().dump(2) + "\n");
}

void write_json_output(const fs::path& dir, const std::string& name, json payload) {
    payload["manifest"] = kManifestName;
    io::write_text_atomic(dir / name, payload.dump(2) + "\n");
}

std::vector<std::string> manifest_comment() { return {std::string("manifest: ") + kManifestName}; }

std::vector<std::string> default_names(int p) {
    std::vector<std::string> names(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) names[static_cast<std::size_t>(j)] = "x" + std::to_string(j + 1);
    return names;
}

DataMatrix load_data(const fs::path& path, Manifest& manifest) {
    manifest.input_digests[path.string()] = io::digest_file(path);
    return manifest.timings.time("read", [&] { return io::read_data_csv(path); });
}

Graph load_graph(const fs::path& path, Manifest& manifest) {
    manifest.input_digests[path.string()] = io::digest_file(path);
    const json parsed = json::parse(io::read_text(path));
    if (parsed.contains("adjacency")) return io::graph_from_json(parsed.at("adjacency"));
    return io::graph_from_json(parsed);
}

Partition load_partition(const fs::path& path, Manifest& manifest) {
    manifest.input_digests[path.string()] = io::digest_file(path);
    const json parsed = json::parse(io::read_text(path));
    return io::partition_from_json(parsed);
}

// ---------------------------------------------------------------------------

struct GlobalOptions {
    std::uint64_t seed = 0;
    int threads = 1;
    std::string output_dir = ".";
    std::string format = "csv";
};

struct SolverOptions {
    SolverConfig cfg;

    void attach(CLI::App* cmd) {
        cmd->add_option("--eps-target", cfg.eps_target, "Duality-gap tolerance");
        cmd->add_flag("!--absolute-gap", cfg.relative_gap, "Interpret --eps-target as an absolute gap");
        cmd->add_option("--max-outer", cfg.max_outer, "Continuation step limit");
        cmd->add_option("--max-inner", cfg.max_inner, "FISTA iteration limit per step");
        cmd->add_option("--mu-floor", cfg.mu_floor, "Smallest smoothing parameter");
        cmd->add_option("--continuation-factor", cfg.continuation_factor, "Gap shrink factor per step");
    }
};

int run_simulate(const GlobalOptions& global, const SimConfig& sim_in) {
    SimConfig sim = sim_in;
    sim.seed = global.seed;
    sim.validate();

    Manifest manifest;
    manifest.command = "simulate";
    manifest.seed = global.seed;
    manifest.config = {{"p", sim.p},       {"n", sim.n},           {"model", static_cast<int>(sim.model)},
                       {"k", sim.k},       {"pi", sim.pi},         {"alpha_in", sim.alpha_in},
                       {"alpha_out", sim.alpha_out}, {"alpha", sim.alpha}, {"num_edges", sim.num_edges},
                       {"rho", sim.rho}};

    rng::Engine eng = rng::make_engine(sim.seed);
    const GroundTruth truth = manifest.timings.time("simulate", [&] { return make_ground_truth(sim, eng); });
    const DataMatrix data = manifest.timings.time("sample", [&] { return sample_gaussian(truth, sim.n, eng); });

    const fs::path dir(global.output_dir);
    fs::create_directories(dir);
    manifest.timings.time("write", [&] {
        io::write_csv(dir / "data.csv", data.values, default_names(sim.p), manifest_comment());
        std::vector<std::string> omega_names = default_names(sim.p);
        io::write_csv(dir / "omega.csv", truth.precision, omega_names, manifest_comment());
        write_json_output(dir, "truth.json", io::truth_to_json(truth));
    });
    write_manifest(dir, manifest);
    return 0;
}

Matrix beta_with_row_index(const RegressionMatrix& beta) {
    Matrix out(beta.p, beta.p);
    for (int i = 0; i < beta.p; ++i) {
        out(i, 0) = i;
        out.row(i).tail(beta.p - 1) = beta.coeffs.row(i);
    }
    return out;
}

std::vector<std::string> beta_header(int p) {
    std::vector<std::string> names = {"row"};
    for (int s = 0; s < p - 1; ++s) names.push_back("slot_" + std::to_string(s));
    return names;
}

int run_fit(const GlobalOptions& global, const std::string& data_path, double lambda1, double lambda2,
            bool mb_mode, double mb_lambda, const std::string& weights_path, const std::string& rule_name,
            double tol, bool no_center, const std::string& scale_name, const SolverOptions& solver) {
    Manifest manifest;
    manifest.command = "fit";
    manifest.seed = global.seed;

    const DataMatrix raw = load_data(data_path, manifest);
    const DataMatrix data = standardize(raw, !no_center, scale_mode_from_string(scale_name)).data;

    Hyperparameters hp;
    hp.lambda1 = mb_mode ? mb_equivalent_lambda1(data.n(), mb_lambda) : lambda1;
    hp.lambda2 = mb_mode ? 0.0 : lambda2;
    if (!weights_path.empty()) {
        manifest.input_digests[weights_path] = io::digest_file(weights_path);
        hp.weights = io::read_csv(weights_path).values;
    }
    hp.validate(static_cast<int>(data.p()));
    manifest.config = {{"data", data_path},     {"lambda1", hp.lambda1}, {"lambda2", hp.lambda2},
                       {"mb_mode", mb_mode},    {"rule", rule_name},     {"tol", tol},
                       {"center", !no_center},  {"scale", scale_name},   {"eps_target", solver.cfg.eps_target}};

    RegressionMatrix beta;
    SolveDiagnostics diag;
    manifest.timings.time("solve", [&] {
        if (mb_mode) {
            beta = neighborhood_selection(data, hp.lambda1);
            diag.converged = true;
            diag.objective_trace.push_back(objective_value(beta, data, hp));
        } else {
            auto [solution, solve_diag] = conesta_solve(data, hp, solver.cfg);
            beta = std::move(solution);
            diag = std::move(solve_diag);
        }
    });

    const Graph graph = graph_from_beta(beta, edge_rule_from_string(rule_name), tol);
    const fs::path dir(global.output_dir);
    fs::create_directories(dir);
    manifest.timings.time("write", [&] {
        std::vector<std::string> comments = manifest_comment();
        comments.push_back("slot_k of row i refers to variable k when k < i, k+1 otherwise");
        io::write_csv(dir / "beta.csv", beta_with_row_index(beta), beta_header(beta.p), comments);
        write_json_output(dir, "graph.json", io::graph_to_json(graph));
        write_json_output(dir, "diagnostics.json",
                          {{"duality_gap", diag.final_duality_gap},
                           {"iterations", diag.iterations},
                           {"converged", diag.converged},
                           {"objective_trace", diag.objective_trace},
                           {"mu_trace", diag.mu_trace}});
    });
    write_manifest(dir, manifest);
    return 0;
}

int run_stars_common(const GlobalOptions& global, const DataMatrix& data, StarsConfig& cfg, int grid_size,
                     const std::vector<double>& explicit_grid, StarsResult& result, Manifest& manifest) {
    cfg.seed = global.seed;
    cfg.threads = global.threads;
    cfg.lambda1_grid = explicit_grid.empty() ? default_lambda1_grid(data, grid_size) : explicit_grid;
    result = manifest.timings.time("stars", [&] { return select_lambda1(data, cfg); });
    return 0;
}

int run_stars(const GlobalOptions& global, const std::string& data_path, StarsConfig cfg, int grid_size,
              const std::vector<double>& explicit_grid, bool no_center, const std::string& scale_name) {
    Manifest manifest;
    manifest.command = "stars";
    manifest.seed = global.seed;
    const DataMatrix data = standardize(load_data(data_path, manifest), !no_center,
                                        scale_mode_from_string(scale_name)).data;
    StarsResult result;
    run_stars_common(global, data, cfg, grid_size, explicit_grid, result, manifest);
    manifest.config = {{"data", data_path},
                       {"num_subsamples", cfg.num_subsamples},
                       {"subsample_size", cfg.effective_subsample_size(data.n())},
                       {"instability_threshold", cfg.instability_threshold},
                       {"with_replacement", cfg.with_replacement},
                       {"grid_size", cfg.lambda1_grid.size()}};
    const fs::path dir(global.output_dir);
    fs::create_directories(dir);
    write_json_output(dir, "stars.json", io::stars_to_json(result));
    write_manifest(dir, manifest);
    return 0;
}

int run_path(const GlobalOptions& global, const std::string& data_path, double lambda1, bool use_stars,
             StarsConfig stars_cfg, int stars_grid_size, PathConfig path_cfg, const std::string& rule_name,
             double tol, bool no_center, const std::string& scale_name, const SolverOptions& solver) {
    Manifest manifest;
    manifest.command = "path";
    manifest.seed = global.seed;
    const DataMatrix data = standardize(load_data(data_path, manifest), !no_center,
                                        scale_mode_from_string(scale_name)).data;

    if (use_stars) {
        stars_cfg.solver = solver.cfg;
        StarsResult stars;
        run_stars_common(global, data, stars_cfg, stars_grid_size, {}, stars, manifest);
        lambda1 = stars.selected_lambda1;
        manifest.config["stars_selected_lambda1"] = lambda1;
        manifest.config["stars_selected"] = stars.selected;
    }
    if (lambda1 < 0) throw ConfigError("either --lambda1 or --stars is required");

    path_cfg.validate();
    manifest.config["data"] = data_path;
    manifest.config["lambda1"] = lambda1;
    manifest.config["lambda2_start"] = path_cfg.lambda2_start;
    manifest.config["kappa"] = path_cfg.kappa;
    manifest.config["eps_fuse"] = path_cfg.eps_fuse;
    manifest.config["max_levels"] = path_cfg.max_levels;

    const Hierarchy hierarchy =
        manifest.timings.time("path", [&] { return mglasso_path(data, lambda1, path_cfg, solver.cfg); });

    const fs::path dir(global.output_dir);
    fs::create_directories(dir);
    manifest.timings.time("write", [&] {
        write_json_output(dir, "hierarchy.json",
                          io::hierarchy_to_json(hierarchy, edge_rule_from_string(rule_name), tol));
    });
    write_manifest(dir, manifest);
    return 0;
}

int run_evaluate(const GlobalOptions& global, const std::string& est_path, const std::string& truth_path,
                 const std::string& est_b_path, const std::string& part_a_path, const std::string& part_b_path) {
    Manifest manifest;
    manifest.command = "evaluate";
    manifest.seed = global.seed;
    const fs::path dir(global.output_dir);
    fs::create_directories(dir);

    json metrics = json::object();
    std::vector<std::string> csv_names;
    std::vector<double> csv_values;
    auto add_metric = [&](const std::string& name, double value) {
        metrics[name] = value;
        csv_names.push_back(name);
        csv_values.push_back(value);
    };

    if (!part_a_path.empty() || !part_b_path.empty()) {
        if (part_a_path.empty() || part_b_path.empty())
            throw ConfigError("both --partition-a and --partition-b are required for ARI");
        const Partition a = load_partition(part_a_path, manifest);
        const Partition b = load_partition(part_b_path, manifest);
        add_metric("ari", adjusted_rand_index(a, b));
    } else if (!est_b_path.empty()) {
        // cross-estimate confusion table: rows = first estimate, columns = second
        const Graph a = load_graph(est_path, manifest);
        const Graph b = load_graph(est_b_path, manifest);
        const ConfusionCounts c = confusion(a, b);
        Matrix table(2, 2);
        table << static_cast<double>(c.tn), static_cast<double>(c.fn),
                 static_cast<double>(c.fp), static_cast<double>(c.tp);
        io::write_csv(dir / "confusion_table.csv", table, {"b_non_edges", "b_edges"},
                      {"manifest: manifest.json", "rows: a_non_edges, a_edges"});
        add_metric("both_edges", static_cast<double>(c.tp));
        add_metric("a_only_edges", static_cast<double>(c.fp));
        add_metric("b_only_edges", static_cast<double>(c.fn));
        add_metric("neither_edges", static_cast<double>(c.tn));
    } else {
        if (est_path.empty() || truth_path.empty())
            throw ConfigError("--est and --truth are required for confusion metrics");
        const Graph est = load_graph(est_path, manifest);
        const Graph truth = load_graph(truth_path, manifest);
        const ConfusionCounts c = confusion(est, truth);
        add_metric("tp", static_cast<double>(c.tp));
        add_metric("fp", static_cast<double>(c.fp));
        add_metric("tn", static_cast<double>(c.tn));
        add_metric("fn", static_cast<double>(c.fn));
        add_metric("sensitivity", sensitivity(c));
        add_metric("specificity", specificity(c));
    }

    if (global.format == "json") {
        write_json_output(dir, "metrics.json", metrics);
    } else {
        Matrix row(1, static_cast<Eigen::Index>(csv_values.size()));
        for (std::size_t j = 0; j < csv_values.size(); ++j) row(0, static_cast<Eigen::Index>(j)) = csv_values[j];
        io::write_csv(dir / "metrics.csv", row, csv_names, manifest_comment());
    }
    write_manifest(dir, manifest);
    return 0;
}

int run_clr(const GlobalOptions& global, const std::string& counts_path, double pseudo, double min_prevalence,
            double min_depth) {
    Manifest manifest;
    manifest.command = "clr";
    manifest.seed = global.seed;
    manifest.input_digests[counts_path] = io::digest_file(counts_path);
    io::CsvData counts = io::read_csv(counts_path);
    manifest.config = {{"counts", counts_path}, {"pseudo", pseudo},
                       {"min_prevalence", min_prevalence}, {"min_depth", min_depth}};

    Matrix values = counts.values;
    std::vector<std::string> names = counts.column_names;
    if (min_depth > 0) {
        const std::vector<int> rows = depth_filter(values, min_depth);
        Matrix kept(static_cast<Eigen::Index>(rows.size()), values.cols());
        for (std::size_t r = 0; r < rows.size(); ++r) kept.row(static_cast<Eigen::Index>(r)) = values.row(rows[r]);
        values = std::move(kept);
    }
    if (min_prevalence > 0) {
        const std::vector<int> cols = prevalence_filter(values, min_prevalence);
        Matrix kept(values.rows(), static_cast<Eigen::Index>(cols.size()));
        std::vector<std::string> kept_names;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            kept.col(static_cast<Eigen::Index>(c)) = values.col(cols[c]);
            kept_names.push_back(names[static_cast<std::size_t>(cols[c])]);
        }
        values = std::move(kept);
        names = std::move(kept_names);
    }
    if (values.rows() == 0 || values.cols() == 0) throw DataError("all rows or columns removed by filters");

    const DataMatrix transformed =
        manifest.timings.time("clr", [&] { return clr_transform(values, pseudo, names); });
    const fs::path dir(global.output_dir);
    fs::create_directories(dir);
    io::write_csv(dir / "clr.csv", transformed.values, names, manifest_comment());
    write_manifest(dir, manifest);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiscale graphical lasso: joint hierarchical clustering and sparse conditional-independence graphs"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file (TOML/INI); command-line flags take precedence");

    GlobalOptions global;
    app.add_option("--seed", global.seed, "RNG seed")->capture_default_str();
    app.add_option("--threads", global.threads, "Worker threads for replicated fits")->capture_default_str();
    app.add_option("--output-dir", global.output_dir, "Output directory")->capture_default_str();
    app.add_option("--format", global.format, "Metrics output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Generate a ground-truth graph and Gaussian data");
    simulate->fallthrough();
    SimConfig sim;
    std::string model_name = "sbm";
    simulate->add_option("--model", model_name, "Graph model")->check(CLI::IsMember({"sbm", "er", "sf"}));
    simulate->add_option("--p", sim.p, "Number of variables");
    simulate->add_option("--n", sim.n, "Number of observations");
    simulate->add_option("--k", sim.k, "Number of SBM blocks");
    simulate->add_option("--pi", sim.pi, "SBM block proportions (sum to 1)");
    simulate->add_option("--alpha-in", sim.alpha_in, "SBM within-block edge probability");
    simulate->add_option("--alpha-out", sim.alpha_out, "SBM between-block edge probability");
    simulate->add_option("--alpha", sim.alpha, "Erdos-Renyi edge density");
    simulate->add_option("--num-edges", sim.num_edges, "Scale-free edge budget");
    simulate->add_option("--rho", sim.rho, "SBM within-block correlation");

    // fit
    auto* fit = app.add_subcommand("fit", "Solve MGLasso at fixed (lambda1, lambda2)");
    fit->fallthrough();
    std::string fit_data;
    double fit_lambda1 = 0.0, fit_lambda2 = 0.0, mb_lambda = 0.0, fit_tol = 1e-8;
    bool mb_mode = false, fit_no_center = false;
    std::string fit_weights, fit_rule = "or", fit_scale = "norm";
    SolverOptions fit_solver;
    fit->add_option("--data", fit_data, "Observation CSV")->required();
    fit->add_option("--lambda1", fit_lambda1, "Sparsity weight");
    fit->add_option("--lambda2", fit_lambda2, "Fusion weight");
    fit->add_flag("--mb", mb_mode, "Neighborhood-selection baseline (lambda2 = 0, 1/n quadratic scaling)");
    fit->add_option("--lambda", mb_lambda, "Penalty for --mb mode");
    fit->add_option("--weights", fit_weights, "Optional p x p fusion weight CSV");
    fit->add_option("--rule", fit_rule, "Edge rule")->check(CLI::IsMember({"or", "and"}));
    fit->add_option("--tol", fit_tol, "Support threshold");
    fit->add_flag("--no-center", fit_no_center, "Skip column centering");
    fit->add_option("--scale", fit_scale, "Column scaling")->check(CLI::IsMember({"none", "norm", "sd"}));
    fit_solver.attach(fit);

    // path
    auto* path = app.add_subcommand("path", "Sweep lambda2 and record the fusion hierarchy");
    path->fallthrough();
    std::string path_data, path_rule = "or", path_scale = "norm";
    double path_lambda1 = -1.0, path_tol = 1e-8;
    bool path_stars = false, path_no_center = false;
    PathConfig path_cfg;
    StarsConfig path_stars_cfg;
    int path_stars_grid = 30;
    path->add_option("--data", path_data, "Observation CSV")->required();
    path->add_option("--lambda1", path_lambda1, "Sparsity weight");
    path->add_flag("--stars", path_stars, "Select lambda1 by stability selection first");
    path->add_option("--lambda2-start", path_cfg.lambda2_start, "First lambda2 (0 = heuristic)");
    path->add_option("--kappa", path_cfg.kappa, "Geometric step");
    path->add_option("--eps-fuse", path_cfg.eps_fuse, "Fusion threshold");
    path->add_option("--max-levels", path_cfg.max_levels, "Level limit");
    path->add_option("--min-clusters", path_cfg.min_clusters, "Stop when this many clusters remain");
    path->add_option("--rule", path_rule, "Edge rule")->check(CLI::IsMember({"or", "and"}));
    path->add_option("--tol", path_tol, "Support threshold");
    path->add_flag("--no-center", path_no_center, "Skip column centering");
    path->add_option("--scale", path_scale, "Column scaling")->check(CLI::IsMember({"none", "norm", "sd"}));
    path->add_option("--stars-subsamples", path_stars_cfg.num_subsamples, "StARS replicates");
    path->add_option("--stars-threshold", path_stars_cfg.instability_threshold, "StARS instability threshold");
    path->add_option("--stars-grid-size", path_stars_grid, "StARS grid size");
    SolverOptions path_solver;
    path_solver.attach(path);

    // stars
    auto* stars = app.add_subcommand("stars", "Stability selection of lambda1");
    stars->fallthrough();
    std::string stars_data, stars_scale = "norm";
    bool stars_no_center = false;
    StarsConfig stars_cfg;
    int stars_grid_size = 30;
    std::vector<double> stars_grid;
    stars->add_option("--data", stars_data, "Observation CSV")->required();
    stars->add_option("--num-subsamples", stars_cfg.num_subsamples, "Subsample count N");
    stars->add_option("--subsample-size", stars_cfg.subsample_size, "Rows per subsample (0 = 10*sqrt(n))");
    stars->add_option("--threshold", stars_cfg.instability_threshold, "Instability threshold");
    stars->add_flag("--with-replacement", stars_cfg.with_replacement, "Bootstrap instead of subsampling");
    stars->add_option("--grid-size", stars_grid_size, "Size of the default lambda1 grid");
    stars->add_option("--grid", stars_grid, "Explicit decreasing lambda1 grid");
    stars->add_flag("--no-center", stars_no_center, "Skip column centering");
    stars->add_option("--scale", stars_scale, "Column scaling")->check(CLI::IsMember({"none", "norm", "sd"}));

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Score estimated graphs or partitions");
    evaluate->fallthrough();
    std::string eval_est, eval_truth, eval_est_b, eval_part_a, eval_part_b;
    evaluate->add_option("--est", eval_est, "Estimated graph JSON");
    evaluate->add_option("--truth", eval_truth, "Ground-truth JSON (truth.json or graph.json)");
    evaluate->add_option("--est-b", eval_est_b, "Second estimated graph (cross confusion table)");
    evaluate->add_option("--partition-a", eval_part_a, "First partition JSON");
    evaluate->add_option("--partition-b", eval_part_b, "Second partition JSON");

    // clr
    auto* clr = app.add_subcommand("clr", "Centered log-ratio transform for count data");
    clr->fallthrough();
    std::string clr_counts;
    double clr_pseudo = 1.0, clr_min_prevalence = 0.0, clr_min_depth = 0.0;
    clr->add_option("--counts", clr_counts, "Nonnegative count CSV")->required();
    clr->add_option("--pseudo", clr_pseudo, "Pseudocount added before the log");
    clr->add_option("--min-prevalence", clr_min_prevalence, "Drop columns present in fewer than this fraction of rows");
    clr->add_option("--min-depth", clr_min_depth, "Drop rows with total count below this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) {
            sim.model = graph_model_from_string(model_name);
            return run_simulate(global, sim);
        }
        if (fit->parsed())
            return run_fit(global, fit_data, fit_lambda1, fit_lambda2, mb_mode, mb_lambda, fit_weights, fit_rule,
                           fit_tol, fit_no_center, fit_scale, fit_solver);
        if (path->parsed())
            return run_path(global, path_data, path_lambda1, path_stars, path_stars_cfg, path_stars_grid, path_cfg,
                            path_rule, path_tol, path_no_center, path_scale, path_solver);
        if (stars->parsed())
            return run_stars(global, stars_data, stars_cfg, stars_grid_size, stars_grid, stars_no_center, stars_scale);
        if (evaluate->parsed())
            return run_evaluate(global, eval_est, eval_truth, eval_est_b, eval_part_a, eval_part_b);
        if (clr->parsed()) return run_clr(global, clr_counts, clr_pseudo, clr_min_prevalence, clr_min_depth);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
