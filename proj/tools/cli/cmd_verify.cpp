#include <fstream>
#include <map>
#include <ostream>

#include "commands.hpp"
#include "fracvar/csv.hpp"

namespace fracvar::cli {

namespace {

// Signals addressable by name in a manifest decomposition.
class SignalTable {
public:
    SignalTable(const FracProblem& prob, const VectorPath& q, const Generator& gen, SampledSignal target)
        : prob_(prob), q_(q), gen_(gen), target_(std::move(target))
    {
    }

    SampledSignal get(const std::string& name)
    {
        if (!name.empty() && name.front() == '-')
            return -get(name.substr(1));
        const Grid& g = q_.grid();
        if (name == "C")
            return noether_quantity(prob_, q_, gen_);
        if (name == "target")
            return target_;
        if (name == "one")
            return SampledSignal::constant(g, 1.0);
        if (name == "zero")
            return SampledSignal::zeros(g);
        if (name == "t")
            return time_signal(g);
        if (name == "tau")
            return gen_.tau_signal(q_);
        if (name == "tau_bracket")
            return tau_bracket(prob_, q_);
        const auto colon = name.find(':');
        if (colon != std::string::npos) {
            const std::string kind = name.substr(0, colon);
            std::size_t i = 0;
            try {
                i = std::stoul(name.substr(colon + 1));
            } catch (const std::exception&) {
                throw ConfigError("bad component index in signal '" + name + "'");
            }
            if (i < 1 || i > q_.dim())
                throw ConfigError("component index out of range in signal '" + name + "'");
            --i;
            if (kind == "q")
                return q_[i];
            if (kind == "xi")
                return gen_.xi_path(q_)[i];
            if (kind == "p2" || kind == "p3" || kind == "p4") {
                const PartialSignals& ps = partials();
                return kind == "p2" ? ps.dq[i] : kind == "p3" ? ps.dl[i] : ps.dr[i];
            }
            if (kind == "dl" || kind == "dr") {
                const PathDerivatives d = derivatives(prob_, q_);
                return kind == "dl" ? d.left[i] : d.right[i];
            }
        }
        throw ConfigError("unknown signal '" + name
                          + "' (expected C, target, one, zero, t, tau, tau_bracket, q:i, xi:i, p2:i, p3:i, p4:i, "
                            "dl:i or dr:i, optionally prefixed with '-')");
    }

private:
    const PartialSignals& partials()
    {
        if (!partials_)
            partials_ = partial_signals(prob_, q_);
        return *partials_;
    }

    const FracProblem& prob_;
    const VectorPath& q_;
    const Generator& gen_;
    SampledSignal target_;
    std::optional<PartialSignals> partials_;
};

FracOrder parse_gamma(const json& j, const FracProblem& prob)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "alpha")
            return prob.alpha();
        if (s == "beta")
            return prob.beta();
        throw ConfigError("gamma must be a number, 'alpha' or 'beta'");
    }
    return FracOrder(j.get<double>());
}

} // namespace

json report_json(const ConservationReport& rep)
{
    json j;
    j["pass"] = rep.pass;
    j["tolerance"] = rep.tol;
    j["window"] = {rep.window.lo, rep.window.hi};
    j["reconstruction_error"] = rep.reconstruction_error;
    json pairs = json::array();
    for (const auto& p : rep.pairs)
        pairs.push_back({{"label", p.label},
                         {"gamma", p.gamma},
                         {"orientation", to_string(p.orientation)},
                         {"window_defect", p.window_defect},
                         {"global_defect", p.global_defect}});
    j["pairs"] = pairs;
    j["unverified"] = rep.unverified;
    return j;
}

void write_defects(const std::filesystem::path& file, const ConservationReport& rep)
{
    std::vector<SampledSignal> cols;
    std::vector<std::string> names;
    for (const auto& p : rep.pairs) {
        cols.push_back(p.defect);
        names.push_back(p.label.empty() ? "pair" + std::to_string(names.size() + 1) : p.label);
    }
    write_csv(file, VectorPath(std::move(cols)), names);
}

int cmd_verify(const VerifyArgs& args, Io io)
{
    const std::filesystem::path manifest(args.manifest);
    const json doc = load_json(manifest);
    if (!doc.contains("problem") || !doc.contains("path") || !doc.contains("generator"))
        throw ConfigError("verify: the manifest needs 'problem', 'path' and 'generator'");

    std::filesystem::path path_file = doc.at("path").get<std::string>();
    if (path_file.is_relative())
        path_file = manifest.parent_path() / path_file;
    const VectorPath q = read_csv(path_file);

    ProblemSpec spec = parse_problem(doc.at("problem"));
    spec.a = q.grid().a();
    spec.b = q.grid().b();
    spec.n = static_cast<std::int64_t>(q.grid().intervals());
    const FracProblem prob = build_problem(spec, q.grid(), boundary_of(q));

    const json& gj = doc.at("generator");
    const std::string gname = gj.at("name").get<std::string>();
    const double c = value_or(gj, "c", 1.0);
    const double tau_scale = value_or(gj, "tau_scale", 1.0);
    const double xi_scale = value_or(gj, "xi_scale", 1.0);
    const Generator gen = builtin_generator(gname, prob.dim(), c, tau_scale, xi_scale);

    VerifyOptions opts;
    opts.tol = args.tol ? *args.tol : value_or(doc, "tolerance", opts.tol);
    opts.trim = args.trim ? *args.trim : value_or(doc, "trim", opts.trim);
    opts.scheme = prob.scheme();

    const std::string target_kind = value_or<std::string>(doc, "target", "noether");
    SampledSignal target = [&] {
        if (target_kind == "noether")
            return noether_quantity(prob, q, gen);
        if (target_kind == "fixture") {
            if (spec.lagrangian == "example1")
                return example1(prob.alpha()).expected_quantity(prob, q);
            if (spec.lagrangian == "example2")
                return example2(prob.beta()).expected_quantity(prob, q);
            throw ConfigError("verify: target 'fixture' needs the example1 or example2 Lagrangian");
        }
        throw ConfigError("verify: target must be 'noether' or 'fixture'");
    }();

    std::optional<Decomposition> dec;
    if (doc.contains("decomposition")) {
        SignalTable table(prob, q, gen, target);
        dec.emplace();
        for (const auto& pj : doc.at("decomposition")) {
            const std::string c1 = pj.at("c1").get<std::string>();
            const std::string c2 = pj.at("c2").get<std::string>();
            const std::string orient = value_or<std::string>(pj, "orientation", "forward");
            if (orient != "forward" && orient != "reversed")
                throw ConfigError("orientation must be 'forward' or 'reversed'");
            dec->pairs.push_back({table.get(c1), table.get(c2), parse_gamma(pj.at("gamma"), prob),
                                  orient == "forward" ? Orientation::Forward : Orientation::Reversed,
                                  value_or<std::string>(pj, "label", c1 + "*" + c2)});
        }
    }

    ConservationReport rep = dec ? verify_fractional_conserved(*dec, target, opts)
                                 : verify_noether(prob, q, gen, std::nullopt, opts);

    json cfg;
    cfg["command"] = "verify";
    cfg["manifest"] = args.manifest;
    cfg["problem"] = to_json(spec);
    cfg["path"] = path_file.string();
    cfg["generator"] = {{"name", gname}, {"c", c}, {"tau_scale", tau_scale}, {"xi_scale", xi_scale}};
    cfg["target"] = target_kind;
    cfg["tolerance"] = opts.tol;
    cfg["trim"] = opts.trim;
    cfg["decomposition"] = doc.contains("decomposition") ? doc.at("decomposition") : json(nullptr);

    const auto dir = output_dir(args.out);
    write_json(dir / "config.json", cfg);
    json rj = report_json(rep);
    rj["target"] = target_kind;
    write_json(dir / "report.json", rj);
    write_defects(dir / "defects.csv", rep);

    for (const auto& p : rep.pairs)
        io.out << p.label << ": window defect " << format_double(p.window_defect) << '\n';
    io.out << "reconstruction error " << format_double(rep.reconstruction_error) << '\n';
    for (const auto& u : rep.unverified)
        io.out << "unverified: " << u << '\n';
    io.out << (rep.pass ? "PASS" : "FAIL") << '\n';
    return rep.pass ? kOk : kVerificationFailed;
}

} // namespace fracvar::cli
