#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "seqforge/corr.hpp"
#include "seqforge/errors.hpp"
#include "seqforge/seqio.hpp"
#include "seqforge/seqlib.hpp"
#include "seqforge/solvers.hpp"

namespace fs = std::filesystem;
using namespace seqforge;

namespace {

constexpr const char* kVersion = "1.0.0";

// runs/x.txt -> runs/x_convergence.csv
fs::path derived_path(const fs::path& base, const std::string& suffix,
                      const std::string& ext) {
    fs::path p = base;
    p.replace_filename(base.stem().string() + suffix + ext);
    return p;
}

std::string format_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

unsigned bench_thread_cap() {
    unsigned cap = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SEQFORGE_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) {
            cap = static_cast<unsigned>(v);
        }
    }
    return cap;
}

struct EvalArgs {
    std::string input;
    std::string weights_path;
    std::optional<double> p;
    std::string out;
};

struct DesignArgs {
    std::string method = "mwisl";
    std::size_t n = 0;
    std::string weights_path;
    std::string init = "random";
    std::string init_file;
    double p = 2.0;
    std::vector<double> p_schedule;
    std::size_t max_iter = 5000;
    double rel_tol = 1e-10;
    std::optional<double> abs_floor;
    bool accelerate = false;
    std::uint64_t seed = 0;
    std::string out;
};

struct BenchArgs {
    std::string experiment;
    std::string out_dir;
    std::vector<std::size_t> lengths;
    std::size_t max_iter = 0; // 0: per-experiment default
    std::uint64_t seed = 1;
};

MetricsReport evaluate_to_files(const UnitModulusSequence& seq,
                                const WeightVector* weights,
                                std::optional<double> p,
                                const fs::path& json_path) {
    const CorrelationProfile profile = autocorrelation(seq);

    MetricsReport report;
    report.n = seq.length();
    report.isl = isl(profile);
    report.psl = psl(profile);
    if (weights != nullptr) {
        report.wisl = wisl(profile, *weights);
    }
    if (p) {
        report.lp = lp_metric(profile, *p);
        report.p = *p;
    }

    const fs::path levels_path = derived_path(json_path, "_levels", ".csv");
    write_correlation_levels_csv(levels_path, correlation_level_db(profile));
    report.correlation_level_path = levels_path.string();
    write_metrics_json(json_path, report);
    return report;
}

int cmd_eval(const EvalArgs& args) {
    const UnitModulusSequence seq = read_sequence(args.input);
    std::optional<WeightVector> weights;
    if (!args.weights_path.empty()) {
        WeightsFile wf = read_weights(args.weights_path);
        if (wf.n != seq.length()) {
            throw ConfigError("weights file is for N=" + std::to_string(wf.n) +
                              " but sequence has N=" +
                              std::to_string(seq.length()));
        }
        weights = std::move(wf.weights);
    }
    const MetricsReport report = evaluate_to_files(
        seq, weights ? &*weights : nullptr, args.p, args.out);
    std::cout << "n=" << report.n << " isl=" << format_g(report.isl)
              << " psl=" << format_g(report.psl);
    if (report.wisl) {
        std::cout << " wisl=" << format_g(*report.wisl);
    }
    if (report.lp) {
        std::cout << " lp=" << format_g(*report.lp);
    }
    std::cout << "\nwrote " << args.out << '\n';
    return 0;
}

nlohmann::json config_echo(const DesignArgs& args,
                           const SolverConfig& cfg) {
    nlohmann::json j;
    j["method"] = method_name(cfg.method);
    j["n"] = cfg.n;
    j["p"] = cfg.p;
    j["p_schedule"] = cfg.p_schedule;
    j["max_iter"] = cfg.max_iter;
    j["rel_tol"] = cfg.rel_tol;
    if (cfg.abs_floor) {
        j["abs_floor"] = *cfg.abs_floor;
    } else {
        j["abs_floor"] = nullptr;
    }
    j["accelerate"] = cfg.accelerate;
    j["seed"] = cfg.seed;
    j["init"] = init_name(cfg.init);
    j["weights_path"] = nlohmann::json();
    if (!args.weights_path.empty()) {
        j["weights_path"] = args.weights_path;
    }
    j["init_file"] = nlohmann::json();
    if (!args.init_file.empty()) {
        j["init_file"] = args.init_file;
    }
    return j;
}

SolverConfig solver_config_from(const DesignArgs& args) {
    SolverConfig cfg;
    cfg.method = method_from_name(args.method);
    cfg.n = args.n;
    cfg.p = args.p;
    if (!args.p_schedule.empty()) {
        cfg.p_schedule = args.p_schedule;
    }
    cfg.max_iter = args.max_iter;
    cfg.rel_tol = args.rel_tol;
    cfg.abs_floor = args.abs_floor;
    cfg.accelerate = args.accelerate;
    cfg.seed = args.seed;
    cfg.init = init_from_name(args.init);

    if (!args.weights_path.empty()) {
        WeightsFile wf = read_weights(args.weights_path);
        if (wf.n != cfg.n) {
            throw ConfigError("weights file is for N=" + std::to_string(wf.n) +
                              " but --n is " + std::to_string(cfg.n));
        }
        cfg.weights = std::move(wf.weights);
    } else if (cfg.method == Method::mwisl || cfg.method == Method::mwisl_diag) {
        throw ConfigError(args.method + " requires --weights");
    }

    if (cfg.init == InitKind::file) {
        if (args.init_file.empty()) {
            throw ConfigError("--init file requires --init-file");
        }
        UnitModulusSequence start = read_sequence(args.init_file);
        if (start.length() != cfg.n) {
            throw ConfigError("--init-file has N=" +
                              std::to_string(start.length()) + " but --n is " +
                              std::to_string(cfg.n));
        }
        cfg.init_phases = std::move(start.phases);
    } else if (!args.init_file.empty()) {
        throw ConfigError("--init-file is only valid with --init file");
    }
    return cfg;
}

int cmd_design(const DesignArgs& args) {
    const SolverConfig cfg = solver_config_from(args);
    const SolverOutput result = run_solver(cfg);

    const fs::path out_path = args.out;
    const fs::path conv_path = derived_path(out_path, "_convergence", ".csv");
    const fs::path manifest_path = derived_path(out_path, "_manifest", ".json");

    write_sequence(out_path, result.sequence);
    write_convergence_csv(conv_path, result.record);

    const CorrelationProfile profile = autocorrelation(result.sequence);
    const double metric_p =
        cfg.method == Method::mm_psl_adaptive ? cfg.p_schedule.back() : cfg.p;

    nlohmann::json manifest;
    manifest["command"] = "design";
    manifest["version"] = kVersion;
    manifest["config"] = config_echo(args, cfg);
    manifest["outputs"] = {{"sequence", out_path.string()},
                           {"convergence_csv", conv_path.string()},
                           {"manifest", manifest_path.string()}};
    manifest["timings"] = {{"wall_seconds", result.record.wall_seconds},
                           {"iterations", result.record.iterations},
                           {"stop_reason", result.record.stop_reason}};
    manifest["counters"] = {
        {"transforms_total", result.record.transforms_total},
        {"transforms_in_steps", result.record.transforms_in_steps},
        {"map_calls", result.record.map_calls},
        {"total_backtracks", result.record.total_backtracks},
        {"fallbacks", result.record.fallbacks},
        {"final_step_inf_norm", result.record.final_step_inf_norm}};
    nlohmann::json metrics;
    metrics["isl"] = isl(profile);
    metrics["psl"] = psl(profile);
    if (cfg.weights.lags() + 1 == cfg.n && any_positive(cfg.weights)) {
        metrics["wisl"] = wisl(profile, cfg.weights);
    }
    metrics["lp"] = lp_metric(profile, metric_p);
    metrics["p"] = metric_p;
    manifest["final_metrics"] = metrics;
    if (!result.record.p_segments.empty()) {
        nlohmann::json segs = nlohmann::json::array();
        for (const auto& [p_val, start] : result.record.p_segments) {
            segs.push_back({{"p", p_val}, {"trace_start", start}});
        }
        manifest["p_segments"] = segs;
    }
    std::ofstream mout(manifest_path);
    if (!mout) {
        throw ConfigError("cannot open " + manifest_path.string() +
                          " for writing");
    }
    mout << manifest.dump(2) << '\n';
    mout.flush();
    if (!mout) {
        throw ConfigError("failed while writing " + manifest_path.string());
    }

    std::cout << "method=" << method_name(cfg.method)
              << " iterations=" << result.record.iterations
              << " stop=" << result.record.stop_reason
              << " final_objective="
              << format_g(result.record.objective.back())
              << " psl=" << format_g(metrics["psl"].get<double>()) << '\n'
              << "wrote " << out_path.string() << '\n';
    return 0;
}

// --- bench experiments -----------------------------------------------------

WeightVector zcz_weights(std::size_t n) {
    std::vector<double> w(n - 1, 0.0);
    for (std::size_t k = 1; k <= 20 && k < n; ++k) {
        w[k - 1] = 1.0;
    }
    for (std::size_t k = 51; k <= 70 && k < n; ++k) {
        w[k - 1] = 1.0;
    }
    return make_weights(std::move(w));
}

void write_text(const fs::path& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    out << body;
    out.flush();
    if (!out) {
        throw ConfigError("failed while writing " + path.string());
    }
}

int bench_wisl_zone(const BenchArgs& args) {
    const std::size_t n = 100;
    const WeightVector weights = zcz_weights(n);
    const fs::path dir = args.out_dir;
    write_weights(dir / "zcz_weights.txt", n, weights);

    struct Variant {
        const char* tag;
        Method method;
        bool accelerate;
    };
    const Variant variants[] = {
        {"mwisl_plain", Method::mwisl, false},
        {"mwisl_accel", Method::mwisl, true},
        {"mwisl_diag_plain", Method::mwisl_diag, false},
        {"mwisl_diag_accel", Method::mwisl_diag, true},
    };

    std::string summary = "tag,method,accelerate,iterations,wall_seconds,"
                          "final_wisl,stop_reason\n";
    for (const Variant& v : variants) {
        SolverConfig cfg;
        cfg.method = v.method;
        cfg.n = n;
        cfg.weights = weights;
        cfg.max_iter = args.max_iter > 0 ? args.max_iter
                       : v.accelerate    ? 20000
                                         : 1000000;
        cfg.rel_tol = 1e-15;
        cfg.abs_floor = 1e-10;
        cfg.accelerate = v.accelerate;
        cfg.seed = args.seed;
        const SolverOutput out = run_solver(cfg);

        write_sequence(dir / (std::string(v.tag) + "_sequence.txt"),
                       out.sequence);
        write_convergence_csv(dir / (std::string(v.tag) + "_convergence.csv"),
                              out.record);
        const CorrelationProfile profile = autocorrelation(out.sequence);
        write_correlation_levels_csv(dir / (std::string(v.tag) + "_levels.csv"),
                                     correlation_level_db(profile));
        summary += std::string(v.tag) + ',' + method_name(v.method) + ',' +
                   (v.accelerate ? "1" : "0") + ',' +
                   std::to_string(out.record.iterations) + ',' +
                   format_g(out.record.wall_seconds) + ',' +
                   format_g(wisl(profile, weights)) + ',' +
                   out.record.stop_reason + '\n';
        std::cout << v.tag << ": iterations=" << out.record.iterations
                  << " stop=" << out.record.stop_reason << '\n';
    }
    write_text(dir / "wisl_zone_summary.csv", summary);
    return 0;
}

int bench_psl_sweep(const BenchArgs& args) {
    std::vector<std::size_t> lengths = args.lengths;
    if (lengths.empty()) {
        lengths = {25, 49, 100, 400, 900, 2500, 4900, 10000};
    }
    const std::size_t max_iter = args.max_iter > 0 ? args.max_iter : 5000;
    const fs::path dir = args.out_dir;

    struct Row {
        std::size_t n = 0;
        double golomb_psl = 0.0;
        std::optional<double> frank_psl;
        double fixed_psl = 0.0;
        double adaptive_psl = 0.0;
    };
    std::vector<Row> rows(lengths.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= lengths.size() || failed.load()) {
                return;
            }
            try {
                const std::size_t n = lengths[idx];
                Row row;
                row.n = n;
                row.golomb_psl = psl(autocorrelation(golomb(n)));
                const auto root = perfect_square_root(n);
                if (root) {
                    row.frank_psl = psl(autocorrelation(frank(*root)));
                }

                SolverConfig cfg;
                cfg.method = Method::mm_psl;
                cfg.n = n;
                cfg.p = 100.0;
                cfg.max_iter = max_iter;
                cfg.rel_tol = 1e-12;
                cfg.accelerate = true;
                cfg.seed = args.seed;
                cfg.init = root ? InitKind::frank : InitKind::golomb;
                row.fixed_psl = psl(autocorrelation(run_solver(cfg).sequence));

                cfg.method = Method::mm_psl_adaptive;
                row.adaptive_psl =
                    psl(autocorrelation(run_solver(cfg).sequence));
                rows[idx] = row;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) {
                    first_error = e.what();
                }
                return;
            }
        }
    };

    const unsigned thread_count = std::min<unsigned>(
        bench_thread_cap(), static_cast<unsigned>(lengths.size()));
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < thread_count; ++i) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    if (failed.load()) {
        throw NumericalConsistencyError("psl-sweep worker failed: " +
                                        first_error);
    }

    std::string csv = "n,golomb_psl,frank_psl,mm_psl_p100,mm_psl_adaptive\n";
    for (const Row& row : rows) {
        csv += std::to_string(row.n) + ',' + format_g(row.golomb_psl) + ',' +
               (row.frank_psl ? format_g(*row.frank_psl) : std::string()) +
               ',' + format_g(row.fixed_psl) + ',' +
               format_g(row.adaptive_psl) + '\n';
        std::cout << "n=" << row.n << " mm_psl_p100=" << row.fixed_psl
                  << " adaptive=" << row.adaptive_psl << '\n';
    }
    write_text(dir / "psl_sweep.csv", csv);
    return 0;
}

int bench_p_compare(const BenchArgs& args) {
    const std::size_t n = args.lengths.empty() ? 400 : args.lengths.front();
    if (!perfect_square_root(n)) {
        throw ConfigError("p-compare needs a perfect-square length");
    }
    const std::size_t max_iter = args.max_iter > 0 ? args.max_iter : 5000;
    const fs::path dir = args.out_dir;

    std::string summary = "p,final_psl,final_lp,iterations,wall_seconds\n";
    for (const double p : {10.0, 100.0, 1000.0, 10000.0}) {
        SolverConfig cfg;
        cfg.method = Method::mm_psl;
        cfg.n = n;
        cfg.p = p;
        cfg.max_iter = max_iter;
        cfg.rel_tol = 1e-15;
        cfg.accelerate = true;
        cfg.seed = args.seed;
        cfg.init = InitKind::frank;
        const SolverOutput out = run_solver(cfg);

        char tag[32];
        std::snprintf(tag, sizeof tag, "p%.0f", p);
        write_convergence_csv(dir / (std::string(tag) + "_convergence.csv"),
                              out.record);
        const CorrelationProfile profile = autocorrelation(out.sequence);
        summary += format_g(p) + ',' + format_g(psl(profile)) + ',' +
                   format_g(lp_metric(profile, p)) + ',' +
                   std::to_string(out.record.iterations) + ',' +
                   format_g(out.record.wall_seconds) + '\n';
        std::cout << tag << ": psl=" << psl(profile) << '\n';
    }
    write_text(dir / "p_compare_summary.csv", summary);
    return 0;
}

int cmd_bench(const BenchArgs& args) {
    fs::create_directories(args.out_dir);
    if (args.experiment == "wisl-zone") {
        return bench_wisl_zone(args);
    }
    if (args.experiment == "psl-sweep") {
        return bench_psl_sweep(args);
    }
    if (args.experiment == "p-compare") {
        return bench_p_compare(args);
    }
    throw ConfigError("unknown experiment: " + args.experiment);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unimodular sequence design and evaluation"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // gen
    CLI::App* gen = app.add_subcommand("gen", "emit a closed-form sequence");
    gen->require_subcommand(1);
    std::size_t gen_m = 0, gen_n = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;

    CLI::App* gen_frank = gen->add_subcommand("frank", "Frank sequence, N=m^2");
    gen_frank->add_option("--m", gen_m, "phase-group order m")->required();
    gen_frank->add_option("--out", gen_out, "output phase file")->required();

    CLI::App* gen_golomb = gen->add_subcommand("golomb", "Golomb sequence");
    gen_golomb->add_option("--n", gen_n, "sequence length")->required();
    gen_golomb->add_option("--out", gen_out, "output phase file")->required();

    CLI::App* gen_random = gen->add_subcommand("random", "seeded random phases");
    gen_random->add_option("--n", gen_n, "sequence length")->required();
    gen_random->add_option("--seed", gen_seed, "RNG seed");
    gen_random->add_option("--out", gen_out, "output phase file")->required();

    // eval
    EvalArgs eval_args;
    CLI::App* eval = app.add_subcommand("eval", "measure a sequence file");
    eval->add_option("input", eval_args.input, "phase file to evaluate")
        ->required();
    eval->add_option("--weights", eval_args.weights_path,
                     "weights file for the WISL entry");
    double eval_p = 0.0;
    CLI::Option* eval_p_opt =
        eval->add_option("--p", eval_p, "exponent for the lp entry");
    eval->add_option("--out", eval_args.out, "metrics JSON path")->required();

    // design
    DesignArgs design_args;
    CLI::App* design = app.add_subcommand("design", "run an MM solver");
    design->add_option("--method", design_args.method,
                       "mwisl | mwisl-diag | mm-psl | mm-psl-adaptive")
        ->required();
    design->add_option("--n", design_args.n, "sequence length")->required();
    design->add_option("--weights", design_args.weights_path,
                       "weights file (WISL methods)");
    design->add_option("--init", design_args.init,
                       "random | frank | golomb | file");
    design->add_option("--init-file", design_args.init_file,
                       "phase file used when --init file");
    design->add_option("--p", design_args.p, "metric exponent (mm-psl)");
    design->add_option("--p-schedule", design_args.p_schedule,
                       "increasing exponents (mm-psl-adaptive)")
        ->delimiter(',');
    design->add_option("--max-iter", design_args.max_iter,
                       "iteration budget (per stage when adaptive)");
    design->add_option("--rel-tol", design_args.rel_tol,
                       "relative objective-change stop");
    double design_floor = 0.0;
    CLI::Option* floor_opt = design->add_option(
        "--abs-floor", design_floor, "absolute objective stop");
    design->add_flag("--accelerate", design_args.accelerate,
                     "squared-extrapolation outer loop");
    design->add_option("--seed", design_args.seed, "RNG seed");
    design->add_option("--out", design_args.out, "output phase file")
        ->required();

    // bench
    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "reproduce experiment data");
    bench->add_option("--experiment", bench_args.experiment,
                      "wisl-zone | psl-sweep | p-compare")
        ->required();
    bench->add_option("--out", bench_args.out_dir, "output directory")
        ->required();
    bench->add_option("--n", bench_args.lengths,
                      "lengths (repeatable; psl-sweep / p-compare)");
    bench->add_option("--max-iter", bench_args.max_iter,
                      "iteration budget override");
    bench->add_option("--seed", bench_args.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            UnitModulusSequence seq;
            if (gen_frank->parsed()) {
                seq = frank(gen_m);
            } else if (gen_golomb->parsed()) {
                seq = golomb(gen_n);
            } else {
                seq = random_unimodular(gen_n, gen_seed);
            }
            write_sequence(gen_out, seq);
            std::cout << "wrote " << gen_out << " (N=" << seq.length() << ")\n";
            return 0;
        }
        if (eval->parsed()) {
            if (eval_p_opt->count() > 0) {
                eval_args.p = eval_p;
            }
            return cmd_eval(eval_args);
        }
        if (design->parsed()) {
            if (floor_opt->count() > 0) {
                design_args.abs_floor = design_floor;
            }
            return cmd_design(design_args);
        }
        return cmd_bench(bench_args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalConsistencyError& e) {
        std::cerr << "numerical consistency error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
