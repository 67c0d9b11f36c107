#include <cmath>
#include <fstream>
#include <ostream>

#include "commands.hpp"
#include "fracvar/csv.hpp"
#include "fracvar/profile.hpp"

namespace fracvar::cli {

namespace {

struct Oracle {
    double p;
    double v;
};

Oracle parse_oracle(const std::string& spec)
{
    const std::string head = "power:";
    const auto comma = spec.find(',');
    if (spec.rfind(head, 0) != 0 || comma == std::string::npos)
        throw ConfigError("--oracle must look like power:p,v, got '" + spec + "'");
    try {
        std::size_t used1 = 0;
        std::size_t used2 = 0;
        const std::string ps = spec.substr(head.size(), comma - head.size());
        const std::string vs = spec.substr(comma + 1);
        const double p = std::stod(ps, &used1);
        const double v = std::stod(vs, &used2);
        if (used1 != ps.size() || used2 != vs.size())
            throw ConfigError("trailing characters");
        return {p, v};
    } catch (const std::exception&) {
        throw ConfigError("--oracle must look like power:p,v, got '" + spec + "'");
    }
}

Window error_window(const Grid& g, Side side, double trim)
{
    if (!(trim >= 0.0 && trim < 1.0))
        throw ConfigError("--trim must lie in [0, 1)");
    return side == Side::Left ? Window{g.a() + trim * g.length(), g.b()}
                              : Window{g.a(), g.b() - trim * g.length()};
}

} // namespace

double max_rel_error(const SampledSignal& num, const SampledSignal& exact, const Window& w)
{
    const Grid& g = num.grid();
    double m = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!num.valid(k) || !exact.valid(k) || !w.contains(g.node(k)))
            continue;
        const double den = exact[k] != 0.0 ? std::abs(exact[k]) : 1.0;
        m = std::max(m, std::abs(num[k] - exact[k]) / den);
    }
    return m;
}

int cmd_deriv(const DerivArgs& args, Io io)
{
    if (args.profile.empty() == args.input.empty())
        throw ConfigError("deriv: give exactly one of --profile or --input");
    const FracOrder order(args.alpha);
    const Side side = parse_side(args.side);
    const Scheme scheme = parse_scheme(args.scheme);
    const bool oracle = !args.oracle.empty();
    const Oracle orc = oracle ? parse_oracle(args.oracle) : Oracle{0.0, 0.0};
    if (oracle && args.profile.empty())
        throw ConfigError("deriv: --oracle needs --profile (the error table resamples the profile)");

    json cfg;
    cfg["command"] = "deriv";
    std::optional<PowerProfile> profile;
    std::optional<SampledSignal> f;
    if (!args.input.empty()) {
        const VectorPath in = read_csv(std::filesystem::path(args.input));
        if (args.column < 1 || static_cast<std::size_t>(args.column) > in.dim())
            throw ConfigError("deriv: --column out of range for '" + args.input + "'");
        f = in[static_cast<std::size_t>(args.column - 1)];
        cfg["input"] = args.input;
        cfg["column"] = args.column;
        cfg["a"] = f->grid().a();
        cfg["b"] = f->grid().b();
        cfg["n"] = f->grid().intervals();
    } else {
        const Grid grid = make_grid(args.a, args.b, args.n);
        profile = parse_profile(args.profile, args.a, args.b);
        f = profile->sample(grid);
        cfg["profile"] = args.profile;
        cfg["a"] = args.a;
        cfg["b"] = args.b;
        cfg["n"] = args.n;
    }
    const Grid& grid = f->grid();
    cfg["alpha"] = args.alpha;
    cfg["side"] = args.side;
    cfg["scheme"] = scheme_name(scheme);
    cfg["trim"] = args.trim;
    if (oracle)
        cfg["oracle"] = args.oracle;
    if (!args.export_matrix.empty())
        cfg["export_matrix"] = args.export_matrix;

    const auto dir = output_dir(args.out);
    write_json(dir / "config.json", cfg);

    const FracOperator op(order, side, scheme, grid);
    const SampledSignal d = op.apply(*f);
    std::vector<SampledSignal> cols{*f, d};
    std::vector<std::string> names{"f", "derivative"};
    if (oracle) {
        cols.push_back(PowerProfile::power(grid.a(), grid.b(), orc.v).sample_derivative(FracOrder(orc.p), side, grid));
        names.emplace_back("exact");
    }
    write_csv(dir / "derivative.csv", VectorPath(cols), names);

    if (!args.export_matrix.empty()) {
        std::ofstream os(args.export_matrix);
        if (!os)
            throw ConfigError("cannot write '" + args.export_matrix + "'");
        op.write_csv(os);
    }

    if (oracle) {
        std::ofstream os(dir / "error_table.csv");
        os << "N,max_rel_err,order\n";
        const auto n = static_cast<std::int64_t>(grid.intervals());
        double prev_err = 0.0;
        std::int64_t prev_n = 0;
        for (const std::int64_t m : {n / 8, n / 4, n / 2, n}) {
            if (m < 2 || m == prev_n)
                continue;
            const Grid gm = make_grid(grid.a(), grid.b(), m);
            const SampledSignal num = FracOperator(order, side, scheme, gm).apply(profile->sample(gm));
            const SampledSignal ex =
                PowerProfile::power(gm.a(), gm.b(), orc.v).sample_derivative(FracOrder(orc.p), side, gm);
            const double err = max_rel_error(num, ex, error_window(gm, side, args.trim));
            if (!std::isfinite(err))
                throw NumericalError("deriv: non-finite error at N = " + std::to_string(m));
            os << m << ',' << format_double(err) << ',';
            if (prev_n > 0 && err > 0.0 && prev_err > 0.0)
                os << format_double(std::log(prev_err / err) / std::log(static_cast<double>(m) / static_cast<double>(prev_n)));
            os << '\n';
            io.out << "N=" << m << " max_rel_err=" << format_double(err) << '\n';
            prev_err = err;
            prev_n = m;
        }
    }
    io.out << "wrote " << (dir / "derivative.csv").string() << '\n';
    return kOk;
}

} // namespace fracvar::cli
