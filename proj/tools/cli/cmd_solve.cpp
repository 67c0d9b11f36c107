#include <fstream>
#include <ostream>

#include "commands.hpp"
#include "fracvar/csv.hpp"
#include "fracvar/solver.hpp"

namespace fracvar::cli {

namespace {

void write_trace(const std::filesystem::path& file, const std::vector<TraceEntry>& trace)
{
    std::ofstream os(file);
    os << "iteration,residual_norm,damping\n";
    for (const auto& e : trace)
        os << e.iteration << ',' << format_double(e.residual_norm) << ',' << format_double(e.damping) << '\n';
}

VectorPath initial_guess(const json& init, const ProblemSpec& spec, const Grid& grid, std::uint64_t seed)
{
    const std::string kind = value_or<std::string>(init, "kind", "linear");
    const double noise = value_or(init, "noise", 0.0);
    VectorPath q = [&] {
        if (kind == "fixture") {
            if (spec.lagrangian == "example1") {
                const auto prof = parse_profile(value_or<std::string>(init, "profile", "powz:0.8"), spec.a, spec.b);
                return example1_extremal(FracOrder(spec.alpha), prof, grid);
            }
            if (spec.lagrangian == "example2") {
                const auto prof = parse_profile(value_or<std::string>(init, "profile", "sin"), spec.a, spec.b);
                return example2_extremal(FracOrder(spec.beta), prof.sample(grid), spec.scheme);
            }
            throw ConfigError("solve: initial kind 'fixture' needs the example1 or example2 Lagrangian");
        }
        if (kind != "linear" && kind != "parabola")
            throw ConfigError("solve: initial kind must be linear, parabola or fixture, got '" + kind + "'");
        if (!spec.boundary)
            throw ConfigError("solve: a linear or parabola initial guess needs 'boundary'");
        const double amp = kind == "parabola" ? value_or(init, "amplitude", 1.0) : 0.0;
        std::vector<SampledSignal> comps;
        for (std::size_t i = 0; i < spec.boundary->left.size(); ++i) {
            const double ql = spec.boundary->left[i];
            const double qr = spec.boundary->right[i];
            comps.push_back(sample(
                [&](double t) {
                    const double s = (t - spec.a) / (spec.b - spec.a);
                    return ql + (qr - ql) * s + 4.0 * amp * s * (1.0 - s);
                },
                grid));
        }
        return VectorPath(std::move(comps));
    }();
    if (noise == 0.0)
        return q;
    std::mt19937_64 rng(seed);
    std::vector<SampledSignal> noisy;
    for (const auto& c : q.components()) {
        std::vector<double> v(c.values().begin(), c.values().end());
        for (std::size_t k = 1; k + 1 < v.size(); ++k)
            v[k] += noise * symmetric_unit(rng);
        noisy.emplace_back(grid, std::move(v), c.mask());
    }
    return VectorPath(std::move(noisy));
}

} // namespace

int cmd_solve(const SolveArgs& args, Io io)
{
    const json doc = load_json(args.problem);
    ProblemSpec spec = parse_problem(doc);
    if (args.n)
        spec.n = *args.n;
    if (args.alpha)
        spec.alpha = *args.alpha;
    if (args.beta)
        spec.beta = *args.beta;
    const json init = doc.value("initial", json::object());
    const json solver = doc.value("solver", json::object());
    const std::uint64_t seed = args.seed ? *args.seed : value_or<std::uint64_t>(init, "seed", 1);

    SolverConfig sc;
    if (args.tol)
        sc.tol = *args.tol;
    else if (solver.contains("tol"))
        sc.tol = solver.at("tol").get<double>();
    sc.max_iter = args.max_iter ? *args.max_iter : value_or(solver, "max_iter", sc.max_iter);
    sc.damping = args.damping ? *args.damping : value_or(solver, "damping", sc.damping);
    sc.validate();

    const Grid grid = make_grid(spec.a, spec.b, spec.n);
    const VectorPath q0 = initial_guess(init, spec, grid, seed);
    const Boundary bc = spec.boundary && value_or<std::string>(init, "kind", "linear") != "fixture"
                            ? *spec.boundary
                            : boundary_of(q0);
    spec.boundary = bc;
    const FracProblem prob = build_problem(spec, grid, bc);

    json cfg;
    cfg["command"] = "solve";
    cfg["problem"] = to_json(spec);
    json init_out = init;
    init_out["seed"] = seed;
    cfg["initial"] = init_out;
    cfg["solver"] = {{"tol", sc.resolved_tol(grid)}, {"max_iter", sc.max_iter}, {"damping", sc.damping}};
    const auto dir = output_dir(args.out);
    write_json(dir / "config.json", cfg);

    try {
        const SolveResult res = solve_extremal(prob, q0, sc);
        const auto names = component_names("q", prob.dim());
        write_csv(dir / "extremal.csv", res.path, names);
        write_csv(dir / "residual.csv", el_residual(prob, res.path), component_names("r", prob.dim()));
        write_trace(dir / "trace.csv", res.trace);
        io.out << "converged in " << res.iterations << " iterations, residual " << format_double(res.residual_norm)
               << '\n';
        return kOk;
    } catch (const ConvergenceError& e) {
        write_trace(dir / "trace.csv", e.trace());
        io.err << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    }
}

} // namespace fracvar::cli
