#include "cli.hpp"

#include "cgkit/bench.hpp"
#include "cgkit/csv.hpp"
#include "cgkit/pgm.hpp"
#include "cgkit/problems.hpp"
#include "cgkit/solver.hpp"

#include <CLI11.hpp>

#include <sstream>

namespace cgkit::cli {

namespace {

/// Thrown for bad flag values detected after parsing.
class UsageError : public Error {
public:
    using Error::Error;
};

struct SolverFlags {
    std::string method = "azhs";
    double delta = 0.01;
    double sigma = 0.1;
    std::string wolfe = "strong";
    std::size_t max_evals = 60;
    double gtol = 1e-6;
    std::size_t max_iter = 50000;
    double t = 0.1;
    double eta = 0.01;

    void add_to(CLI::App& cmd, bool with_method) {
        if (with_method) {
            cmd.add_option("--method", method, "CG update parameter")
                ->envname("CGKIT_METHOD")
                ->capture_default_str();
        }
        cmd.add_option("--delta", delta, "sufficient-decrease constant")
            ->envname("CGKIT_DELTA")
            ->capture_default_str();
        cmd.add_option("--sigma", sigma, "curvature constant")->envname("CGKIT_SIGMA")->capture_default_str();
        cmd.add_option("--wolfe", wolfe, "strong | weak")->envname("CGKIT_WOLFE")->capture_default_str();
        cmd.add_option("--max-evals", max_evals, "evaluations per line search")
            ->envname("CGKIT_MAX_EVALS")
            ->capture_default_str();
        cmd.add_option("--gtol", gtol, "stop when ||g||_inf <= gtol")->envname("CGKIT_GTOL")->capture_default_str();
        cmd.add_option("--max-iter", max_iter, "iteration cap")->envname("CGKIT_MAX_ITER")->capture_default_str();
        cmd.add_option("--t", t, "Dai-Liao parameter")->envname("CGKIT_T")->capture_default_str();
        cmd.add_option("--eta", eta, "Hager-Zhang truncation constant")->envname("CGKIT_ETA")->capture_default_str();
    }

    MethodSpec method_spec(const std::string& name) const {
        const auto kind = parse_method(name);
        if (!kind) throw UsageError("unknown method '" + name + "'");
        MethodSpec spec{*kind, t, eta};
        spec.validate();
        return spec;
    }

    SolverConfig config() const {
        SolverConfig c;
        c.method = method_spec(method);
        c.wolfe.delta = delta;
        c.wolfe.sigma = sigma;
        c.wolfe.max_evals = max_evals;
        if (wolfe == "strong") {
            c.wolfe.mode = WolfeMode::strong;
        } else if (wolfe == "weak") {
            c.wolfe.mode = WolfeMode::weak;
        } else {
            throw UsageError("--wolfe must be 'strong' or 'weak'");
        }
        c.gtol = gtol;
        c.max_iter = max_iter;
        c.validate();
        return c;
    }
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int exit_for(SolveStatus s) {
    switch (s) {
    case SolveStatus::converged: return kExitOk;
    case SolveStatus::iteration_cap: return kExitIterationCap;
    default: return kExitLineSearchFailure;
    }
}

PgmFormat parse_format(const std::string& s) {
    if (s == "p2" || s == "P2") return PgmFormat::ascii;
    if (s == "p5" || s == "P5") return PgmFormat::binary;
    throw UsageError("--format must be p2 or p5");
}

void print_report(std::ostream& out, const SolveReport& r) {
    out << "status=" << status_name(r.status) << '\n'
        << "iters=" << r.iters << '\n'
        << "fevals=" << r.fevals << '\n'
        << "gevals=" << r.gevals << '\n'
        << "f_final=" << format_double(r.f_final) << '\n'
        << "gnorm_final=" << format_double(r.gnorm_final) << '\n';
}

// ---------------------------------------------------------------------------

struct SolveCmd {
    SolverFlags flags;
    std::string problem;

    int operator()(std::ostream& out) const {
        const auto entry = find_problem(problem);
        if (!entry) throw UsageError("unknown problem '" + problem + "'");
        const SolverConfig config = flags.config();
        const SolveReport report = minimize(*entry->objective, entry->x0, config);
        out << "problem=" << entry->name << '\n' << "method=" << method_name(config.method.kind) << '\n';
        print_report(out, report);
        return exit_for(report.status);
    }
};

struct HeatCmd {
    SolverFlags flags;

    int operator()(std::ostream& out) const {
        const auto entry = heat();
        const SolveReport report = minimize(*entry.objective, entry.x0, flags.config());
        print_report(out, report);
        for (std::size_t i = 0; i < report.x_final.size(); ++i) {
            out << 'x' << (i + 1) << '=' << format_double(report.x_final[i]) << '\n';
        }
        return exit_for(report.status);
    }
};

struct BenchCmd {
    SolverFlags flags;
    std::string problems = "all";
    std::string methods = "azhs,azhs3,hs+,prp+,dl+,hz,azprp";
    std::string out_path;
    std::size_t jobs = 1;
    bool omit_timing = false;

    int operator()(std::ostream& out) const {
        std::vector<ProblemEntry> selected;
        if (problems == "all") {
            selected = catalog();
        } else {
            for (const auto& name : split_list(problems)) {
                auto entry = find_problem(name);
                if (!entry) throw UsageError("unknown problem '" + name + "'");
                selected.push_back(std::move(*entry));
            }
        }
        std::vector<MethodSpec> specs;
        for (const auto& name : split_list(methods)) specs.push_back(flags.method_spec(name));
        if (selected.empty() || specs.empty()) throw UsageError("empty problem or method list");

        GridOptions options;
        options.solver = flags.config();
        options.jobs = jobs;
        options.omit_timing = omit_timing;
        const auto records = run_grid(selected, specs, options);
        write_runs_csv(out_path, records);

        std::size_t solved = 0;
        for (const auto& r : records) solved += r.solved() ? 1 : 0;
        out << "records=" << records.size() << '\n' << "converged=" << solved << '\n';
        return kExitOk;
    }
};

struct ProfileCmd {
    std::string in_path;
    std::string out_path;
    std::string metric = "iters";

    int operator()(std::ostream& out, std::ostream& err) const {
        const auto m = parse_metric(metric);
        if (!m) throw UsageError("unknown metric '" + metric + "'");
        const auto records = read_runs_csv(in_path);
        const ProfileTable table = profile(records, *m);
        for (const auto& p : table.dropped) err << "warning: no solver converged on " << p << ", dropped\n";
        write_profile_csv(out_path, table);
        out << "problems=" << table.problems.size() << '\n'
            << "solvers=" << table.solvers.size() << '\n'
            << "r_max=" << format_double(table.r_max) << '\n';
        return kExitOk;
    }
};

struct NoiseCmd {
    std::string in_path;
    std::string synthetic;
    std::string out_path;
    std::string clean_out;
    double sigma_frac = 0.25;
    std::uint64_t seed = 1;
    std::string format = "p5";

    int operator()(std::ostream& out) const {
        if (in_path.empty() == synthetic.empty()) throw UsageError("give exactly one of --in or --synthetic");
        const PgmFormat fmt = parse_format(format);
        if (!(sigma_frac >= 0.0 && sigma_frac < 1.0)) throw UsageError("--sigma-frac must lie in [0, 1)");

        ImageGray clean;
        if (!synthetic.empty()) {
            std::size_t w = 0, h = 0;
            char x = 0;
            std::istringstream dims(synthetic);
            if (!(dims >> w >> x >> h) || x != 'x' || w == 0 || h == 0) {
                throw UsageError("--synthetic expects WIDTHxHEIGHT");
            }
            clean = make_piecewise_constant(w, h);
        } else {
            clean = read_pgm(in_path);
        }
        if (!clean_out.empty()) write_pgm(clean_out, clean, fmt);
        const ImageGray noisy = add_gaussian_noise(clean, sigma_frac, seed);
        write_pgm(out_path, noisy, fmt);
        out << "width=" << noisy.width << '\n' << "height=" << noisy.height << '\n';
        return kExitOk;
    }
};

struct DenoiseCmd {
    SolverFlags flags;
    std::string in_path;
    std::string out_path;
    std::string ref_path;
    double lambda = 0.08;
    double eps_smooth = 1e-3;
    double tol = 1e-3;
    std::string format = "p5";

    int operator()(std::ostream& out) const {
        const PgmFormat fmt = parse_format(format);
        SolverConfig config = flags.config();
        config.gtol = 0.0;
        config.step_rtol = tol;
        config.validate();

        const ImageGray noisy = read_pgm(in_path);
        std::optional<ImageGray> ref;
        if (!ref_path.empty()) {
            ref = read_pgm(ref_path);
            if (ref->width != noisy.width || ref->height != noisy.height) {
                throw UsageError("reference and input dimensions differ");
            }
        }

        const auto obj = denoise_objective(DenoiseSpec{noisy, lambda, eps_smooth});
        const SolveReport report = minimize(*obj, noisy.as_vector(), config);
        const ImageGray restored = noisy.with_pixels(report.x_final);
        write_pgm(out_path, restored, fmt);

        out << "status=" << status_name(report.status) << '\n'
            << "iters=" << report.iters << '\n'
            << "wall_time=" << format_double(report.wall_time) << '\n';
        if (ref) {
            out << "rmse_noisy=" << format_double(rmse(*ref, noisy)) << '\n'
                << "rmse_restored=" << format_double(rmse(*ref, restored)) << '\n';
        }
        return exit_for(report.status);
    }
};

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nonlinear conjugate gradient toolkit", "cgkit"};
    app.require_subcommand(1);

    SolveCmd solve;
    auto* solve_cmd = app.add_subcommand("solve", "minimize a built-in problem");
    solve.flags.add_to(*solve_cmd, true);
    solve_cmd->add_option("--problem", solve.problem, "catalog name")->required();

    HeatCmd heat_run;
    auto* heat_cmd = app.add_subcommand("heat", "solve the heat-conduction problem");
    heat_run.flags.add_to(*heat_cmd, true);

    BenchCmd bench;
    auto* bench_cmd = app.add_subcommand("bench", "run a method x problem grid to CSV");
    bench.flags.add_to(*bench_cmd, false);
    bench_cmd->add_option("--problems", bench.problems, "comma list or 'all'")->capture_default_str();
    bench_cmd->add_option("--methods", bench.methods, "comma list")->envname("CGKIT_METHODS")->capture_default_str();
    bench_cmd->add_option("--out", bench.out_path, "run CSV path")->required();
    bench_cmd->add_option("--jobs", bench.jobs, "parallel grid cells")->envname("CGKIT_JOBS")->capture_default_str();
    bench_cmd->add_flag("--omit-timing", bench.omit_timing, "write wall_time as 0");

    ProfileCmd prof;
    auto* profile_cmd = app.add_subcommand("profile", "performance profile from a run CSV");
    profile_cmd->add_option("--in", prof.in_path, "run CSV")->required();
    profile_cmd->add_option("--out", prof.out_path, "profile CSV")->required();
    profile_cmd->add_option("--metric", prof.metric, "iters | fevals | gevals | time")
        ->envname("CGKIT_METRIC")
        ->capture_default_str();

    NoiseCmd noise;
    auto* noise_cmd = app.add_subcommand("noise", "add Gaussian noise to a PGM image");
    noise_cmd->add_option("--in", noise.in_path, "input PGM");
    noise_cmd->add_option("--synthetic", noise.synthetic, "generate a WIDTHxHEIGHT test card instead");
    noise_cmd->add_option("--out", noise.out_path, "noisy PGM")->required();
    noise_cmd->add_option("--clean-out", noise.clean_out, "also write the clean image");
    noise_cmd->add_option("--sigma-frac", noise.sigma_frac, "noise std as a fraction of full scale")
        ->envname("CGKIT_SIGMA_FRAC")
        ->capture_default_str();
    noise_cmd->add_option("--seed", noise.seed, "generator seed")->envname("CGKIT_SEED")->capture_default_str();
    noise_cmd->add_option("--format", noise.format, "p2 | p5")->capture_default_str();

    DenoiseCmd denoise;
    denoise.flags.max_iter = 10000;
    auto* denoise_cmd = app.add_subcommand("denoise", "restore a noisy PGM image");
    denoise.flags.add_to(*denoise_cmd, true);
    denoise_cmd->add_option("--in", denoise.in_path, "noisy PGM")->required();
    denoise_cmd->add_option("--out", denoise.out_path, "restored PGM")->required();
    denoise_cmd->add_option("--ref", denoise.ref_path, "clean reference for RMSE");
    denoise_cmd->add_option("--lambda", denoise.lambda, "regularization weight")
        ->envname("CGKIT_LAMBDA")
        ->capture_default_str();
    denoise_cmd->add_option("--eps-smooth", denoise.eps_smooth, "edge penalty smoothing")
        ->envname("CGKIT_EPS_SMOOTH")
        ->capture_default_str();
    denoise_cmd->add_option("--tol", denoise.tol, "relative-step stopping threshold")
        ->envname("CGKIT_TOL")
        ->capture_default_str();
    denoise_cmd->add_option("--format", denoise.format, "p2 | p5")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve_cmd) return solve(out);
        if (*heat_cmd) return heat_run(out);
        if (*bench_cmd) return bench(out);
        if (*profile_cmd) return prof(out, err);
        if (*noise_cmd) return noise(out);
        if (*denoise_cmd) return denoise(out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CsvError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataFormat;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataFormat;
    } catch (const EmptyTableError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDataFormat;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitUsage;
}

} // namespace cgkit::cli
