#include "cli.hpp"

#include <filesystem>
#include <ostream>

#include "CLI11.hpp"

#include "commands.hpp"
#include "fracvar/errors.hpp"

namespace fracvar::cli {

namespace {

struct Parsed {
    DerivArgs deriv;
    SolveArgs solve;
    VerifyArgs verify;
    ExampleArgs example;
    std::string config;
    CLI::App* deriv_cmd = nullptr;
    CLI::App* solve_cmd = nullptr;
    CLI::App* verify_cmd = nullptr;
    CLI::App* example_cmd = nullptr;
};

void build(CLI::App& app, Parsed& p)
{
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    auto add_config = [&p](CLI::App* sub) {
        sub->add_option("--config", p.config, "JSON file of flag values; flags on the command line win");
    };

    auto* d = app.add_subcommand("deriv", "Apply a discrete Riemann-Liouville operator to a signal");
    d->add_option("--profile", p.deriv.profile, "Built-in profile: pow:v, rpow:v, powz:v, const:c, sin");
    d->add_option("--input", p.deriv.input, "Signal CSV (t,v1,...)");
    d->add_option("--column", p.deriv.column, "Column of --input to differentiate (1-based)")->check(CLI::PositiveNumber);
    d->add_option("--alpha", p.deriv.alpha, "Order; negative values integrate");
    d->add_option("--side", p.deriv.side, "left or right");
    d->add_option("--scheme", p.deriv.scheme, "gl or l1");
    d->add_option("--n", p.deriv.n, "Number of subintervals");
    d->add_option("--a", p.deriv.a, "Left endpoint");
    d->add_option("--b", p.deriv.b, "Right endpoint");
    d->add_option("--oracle", p.deriv.oracle, "power:p,v compares against the exact derivative of (t-a)^v");
    d->add_option("--trim", p.deriv.trim, "Fraction dropped at the singular end for error norms");
    d->add_option("--export-matrix", p.deriv.export_matrix, "Write the operator matrix as CSV");
    d->add_option("--out", p.deriv.out, "Output directory");
    add_config(d);
    p.deriv_cmd = d;

    auto* s = app.add_subcommand("solve", "Solve the fractional Euler-Lagrange equations");
    s->add_option("--problem", p.solve.problem, "Problem JSON")->required();
    s->add_option("--n", p.solve.n, "Override N");
    s->add_option("--alpha", p.solve.alpha, "Override alpha");
    s->add_option("--beta", p.solve.beta, "Override beta");
    s->add_option("--tol", p.solve.tol, "Residual sup-norm target");
    s->add_option("--max-iter", p.solve.max_iter, "Iteration limit");
    s->add_option("--damping", p.solve.damping, "Initial Levenberg parameter");
    s->add_option("--seed", p.solve.seed, "Seed for the initial-guess noise");
    s->add_option("--out", p.solve.out, "Output directory");
    add_config(s);
    p.solve_cmd = s;

    auto* v = app.add_subcommand("verify", "Check a conserved quantity along a path");
    v->add_option("--manifest", p.verify.manifest, "Manifest JSON")->required();
    v->add_option("--tol", p.verify.tol, "Override the manifest tolerance");
    v->add_option("--trim", p.verify.trim, "Override the manifest trim fraction");
    v->add_option("--out", p.verify.out, "Output directory");
    add_config(v);
    p.verify_cmd = v;

    auto* e = app.add_subcommand("example", "Reproduce one of the two worked examples");
    e->add_option("--id", p.example.id, "1 or 2");
    e->add_option("--order", p.example.order, "alpha (example 1) or beta (example 2)");
    e->add_option("--n", p.example.n, "Number of subintervals");
    e->add_option("--profile", p.example.profile, "Profile of q (example 1) or seed of q1 (example 2)");
    e->add_option("--trim", p.example.trim, "Trim fraction for windowed defects");
    e->add_option("--tol", p.example.tol, "Pass threshold");
    e->add_option("--out", p.example.out, "Output directory");
    add_config(e);
    p.example_cmd = e;
}

// Flag list equivalent to a flat JSON object of option values.
std::vector<std::string> config_flags(const std::filesystem::path& file)
{
    const json j = load_json(file);
    if (!j.is_object())
        throw ConfigError("'" + file.string() + "' must hold a JSON object of flag values");
    std::vector<std::string> flags;
    for (const auto& [key, value] : j.items()) {
        if (key == "config" || key == "command")
            continue;
        const std::string flag = "--" + key;
        if (value.is_null())
            continue;
        if (value.is_string())
            flags.insert(flags.end(), {flag, value.get<std::string>()});
        else if (value.is_number() || value.is_boolean())
            flags.insert(flags.end(), {flag, value.dump()});
        else
            throw ConfigError("'" + file.string() + "': value of '" + key + "' must be a string or a number");
    }
    return flags;
}

int dispatch(const Parsed& p, Io io)
{
    if (p.deriv_cmd->parsed())
        return cmd_deriv(p.deriv, io);
    if (p.solve_cmd->parsed())
        return cmd_solve(p.solve, io);
    if (p.verify_cmd->parsed())
        return cmd_verify(p.verify, io);
    return cmd_example(p.example, io);
}

// CLI11 parses argv back to front; hand it a reversed copy of the tail.
void parse(CLI::App& app, std::vector<std::string> args)
{
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(rev);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Io io{out, err};
    try {
        CLI::App app("fracvar: fractional variational calculus toolkit", "fracvar");
        Parsed p;
        build(app, p);
        try {
            parse(app, args);
            if (!p.config.empty()) {
                // Re-parse with the file's values first so that explicit flags override them.
                std::vector<std::string> merged{args.front(), app.get_subcommands().front()->get_name()};
                const auto extra = config_flags(p.config);
                merged.insert(merged.end(), extra.begin(), extra.end());
                std::size_t k = 1;
                while (k < args.size() && args[k] != merged[1])
                    ++k;
                merged.insert(merged.end(), args.begin() + static_cast<std::ptrdiff_t>(k) + 1, args.end());
                CLI::App again("fracvar: fractional variational calculus toolkit", "fracvar");
                Parsed q;
                build(again, q);
                parse(again, merged);
                return dispatch(q, io);
            }
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return kOk;
        } catch (const CLI::CallForAllHelp&) {
            out << app.help("", CLI::AppFormatMode::All);
            return kOk;
        } catch (const CLI::ParseError& e) {
            err << "error: " << e.what() << '\n';
            return kConfigError;
        }
        return dispatch(p, io);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const json::exception& e) {
        err << "error: malformed configuration: " << e.what() << '\n';
        return kConfigError;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalError;
    }
}

} // namespace fracvar::cli
