#include "typea/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "typea/emitters.hpp"
#include "typea/model_io.hpp"
#include "typea/svg.hpp"
#include "typea/sweep.hpp"

namespace typea {

namespace {

struct GlobalFlags {
    std::optional<double> tol;
    std::string output;
    std::string format;
};

struct ModelSource {
    std::string path;
    std::string canonical;

    void attach(CLI::App* cmd) {
        cmd->add_option("model", path, "Model JSON file");
        cmd->add_option("--canonical", canonical, "Canonical model: M1, M2, M3, M+:delta, M-:delta");
    }

    ModelDocument load() const {
        if (path.empty() == canonical.empty())
            throw Error(ErrorKind::InputDomain, "give exactly one of a model file or --canonical");
        return path.empty() ? canonical_document(canonical) : load_model_document(path);
    }
};

std::string pick_format(const GlobalFlags& g, std::initializer_list<const char*> allowed) {
    if (g.format.empty()) return *allowed.begin();
    for (const char* f : allowed)
        if (g.format == f) return g.format;
    throw Error(ErrorKind::InputDomain, "format \"" + g.format + "\" is not available for this command");
}

double positive_tol(const GlobalFlags& g, double fallback) {
    if (!g.tol) return fallback;
    if (!(*g.tol > 0.0) || !std::isfinite(*g.tol)) throw Error(ErrorKind::InputDomain, "--tol must be positive");
    return *g.tol;
}

void emit(const GlobalFlags& g, std::ostream& out, const std::string& text) {
    if (g.output.empty()) out << text;
    else write_file_atomic(g.output, text);
}

std::string dump(const OrderedJson& j) { return j.dump(2) + '\n'; }

Vec2 as_vec2(const std::vector<double>& v, const char* flag) {
    if (v.size() != 2 || !std::isfinite(v[0]) || !std::isfinite(v[1]))
        throw Error(ErrorKind::InputDomain, std::string(flag) + " needs two finite numbers");
    return {v[0], v[1]};
}

std::vector<Vec2> read_start_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InputDomain, "cannot read curve start points " + path);
    std::vector<Vec2> points;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const std::size_t comma = line.find(',');
        Vec2 p{};
        bool ok = comma != std::string::npos;
        if (ok) {
            const char* b = line.data();
            const auto r1 = std::from_chars(b, b + comma, p[0]);
            const auto r2 = std::from_chars(b + comma + 1, b + line.size(), p[1]);
            ok = r1.ec == std::errc{} && r1.ptr == b + comma && r2.ec == std::errc{} && r2.ptr == b + line.size();
        }
        if (!ok) {
            if (first) {  // header row
                first = false;
                continue;
            }
            throw Error(ErrorKind::InputDomain, "bad start point line \"" + line + "\"");
        }
        first = false;
        points.push_back(p);
    }
    return points;
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InputDomain:
        case ErrorKind::DegenerateRicci:
        case ErrorKind::Misuse: return kExitInput;
        case ErrorKind::NumericFailure:
        case ErrorKind::InternalInconsistency: return kExitNumeric;
    }
    return kExitNumeric;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Geodesic completeness of Type A affine surfaces", "typea"};
    app.require_subcommand(1);
    GlobalFlags g;
    app.add_option("--tol", g.tol, "Tolerance (meaning depends on the command)");
    app.add_option("--output", g.output, "Write the result to this file instead of stdout");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "svg"}));

    std::function<int()> action;
    const auto command = [&](const char* name, const char* help) {
        CLI::App* cmd = app.add_subcommand(name, help);
        cmd->fallthrough();
        return cmd;
    };

    // classify
    ModelSource classify_src;
    CLI::App* classify_cmd = command("classify", "Completeness verdict for a model");
    classify_src.attach(classify_cmd);
    classify_cmd->callback([&] {
        action = [&] {
            pick_format(g, {"json"});
            Tolerances tol;
            tol.root = positive_tol(g, tol.root);
            emit(g, out, dump(verdict_json(classify(classify_src.load().christoffel, tol))));
            return kExitOk;
        };
    });

    // log-geodesics
    ModelSource log_src;
    CLI::App* log_cmd = command("log-geodesics", "Solutions (a, b) of the log-geodesic ansatz");
    log_src.attach(log_cmd);
    log_cmd->callback([&] {
        action = [&] {
            pick_format(g, {"json"});
            const double tol = positive_tol(g, kDefaultRootTolerance);
            emit(g, out, dump(solutions_json(log_geodesic_solutions(log_src.load().christoffel, tol))));
            return kExitOk;
        };
    });

    // ricci
    ModelSource ricci_src;
    CLI::App* ricci_cmd = command("ricci", "Ricci tensor, its derivative and the rank-2 invariants");
    ricci_src.attach(ricci_cmd);
    ricci_cmd->callback([&] {
        action = [&] {
            pick_format(g, {"json"});
            const double tol = positive_tol(g, kDefaultRankTolerance);
            const ChristoffelSymbols c = ricci_src.load().christoffel;
            emit(g, out, dump(ricci_json(c, ricci_report(c, tol))));
            return kExitOk;
        };
    });

    // integrate
    ModelSource int_src;
    std::vector<double> x0{0.0, 0.0}, v0;
    double t0 = 0.0, t1 = 0.0;
    bool tilde_m3 = false;
    CLI::App* int_cmd = command("integrate", "Integrate one geodesic");
    int_src.attach(int_cmd);
    int_cmd->add_option("--x0", x0, "Initial point x1,x2")->delimiter(',')->expected(2);
    int_cmd->add_option("--v0", v0, "Initial velocity v1,v2")->delimiter(',')->expected(2)->required();
    int_cmd->add_option("--t0", t0, "Start time");
    int_cmd->add_option("--t1", t1, "End time")->required();
    int_cmd->add_flag("--tilde-m3", tilde_m3, "Use the surface with Gamma_22^1 = x^1 instead of a model");
    int_cmd->callback([&] {
        action = [&] {
            const std::string format = pick_format(g, {"csv", "json"});
            IntegrateOptions opts;
            opts.abs_tol = opts.rel_tol = positive_tol(g, opts.abs_tol);
            ModelKind kind = TildeM3Model{};
            if (tilde_m3) {
                if (!int_src.path.empty() || !int_src.canonical.empty())
                    throw Error(ErrorKind::InputDomain, "--tilde-m3 takes no model");
            } else {
                kind = ConstantModel{int_src.load().christoffel};
            }
            const Trajectory tr = integrate(kind, {as_vec2(x0, "--x0"), as_vec2(v0, "--v0")}, t0, t1, opts);
            emit(g, out, format == "csv" ? trajectory_csv(tr) : dump(trajectory_json(tr)));
            return kExitOk;
        };
    });

    // flow
    ModelSource flow_src;
    std::vector<double> window{-2.0, 2.0, -2.0, 2.0};
    int grid_n = 21;
    std::string curves_path, curves_output, svg_path;
    double flow_horizon = 10.0;
    CLI::App* flow_cmd = command("flow", "Velocity phase field on a grid, with optional flow curves");
    flow_src.attach(flow_cmd);
    flow_cmd->add_option("--window", window, "umin,umax,vmin,vmax")->delimiter(',')->expected(4);
    flow_cmd->add_option("--grid-n", grid_n, "Samples per axis");
    flow_cmd->add_option("--curves", curves_path, "CSV of start points u,v for flow curves");
    flow_cmd->add_option("--curves-output", curves_output, "Write the flow curves as CSV");
    flow_cmd->add_option("--horizon", flow_horizon, "Flow time for each curve");
    flow_cmd->add_option("--svg", svg_path, "Also write an SVG portrait");
    flow_cmd->callback([&] {
        action = [&] {
            const std::string format = pick_format(g, {"csv", "svg"});
            const ChristoffelSymbols c = flow_src.load().christoffel;
            if (window.size() != 4) throw Error(ErrorKind::InputDomain, "--window needs four numbers");
            const Window w{window[0], window[1], window[2], window[3]};
            const std::vector<GridRow> grid = field_grid(c, w, grid_n);
            std::vector<FlowCurve> curves;
            if (!curves_path.empty()) {
                IntegrateOptions opts;
                opts.abs_tol = opts.rel_tol = positive_tol(g, 1e-9);
                for (const Vec2& p : read_start_points(curves_path))
                    curves.push_back(flow_integrate(c, p, 0.0, flow_horizon, opts));
            } else if (!curves_output.empty()) {
                throw Error(ErrorKind::InputDomain, "--curves-output needs --curves");
            }
            const std::string svg = phase_portrait_svg(w, grid, curves);
            emit(g, out, format == "csv" ? grid_csv(grid) : svg);
            if (!svg_path.empty()) write_file_atomic(svg_path, svg);
            if (!curves_output.empty()) write_file_atomic(curves_output, flow_curves_csv(curves));
            return kExitOk;
        };
    });

    // moduli
    ModuliRequest moduli;
    std::vector<double> t_range{moduli.t_lo, moduli.t_hi}, delta_range{moduli.delta_lo, moduli.delta_hi};
    CLI::App* moduli_cmd = command("moduli", "Sample the (Sigma, Psi) moduli curves");
    moduli_cmd->add_option("--t-range", t_range, "t_lo,t_hi (positive)")->delimiter(',')->expected(2);
    moduli_cmd->add_option("--delta-range", delta_range, "delta_lo,delta_hi")->delimiter(',')->expected(2);
    moduli_cmd->add_option("--n", moduli.n, "Samples per branch");
    moduli_cmd->callback([&] {
        action = [&] {
            const std::string format = pick_format(g, {"csv", "svg"});
            const Vec2 t = as_vec2(t_range, "--t-range");
            const Vec2 d = as_vec2(delta_range, "--delta-range");
            moduli.t_lo = t[0];
            moduli.t_hi = t[1];
            moduli.delta_lo = d[0];
            moduli.delta_hi = d[1];
            const auto points = moduli_points(moduli);
            emit(g, out, format == "csv" ? moduli_csv(points) : moduli_svg(points));
            return kExitOk;
        };
    });

    // sweep
    SweepOptions sweep;
    std::vector<std::string> injections;
    std::string report_path;
    CLI::App* sweep_cmd = command("sweep", "Compare verdicts with numerical integration on random models");
    sweep_cmd->add_option("--count", sweep.count, "Number of models");
    sweep_cmd->add_option("--seed", sweep.seed, "Random seed");
    sweep_cmd->add_option("--horizon", sweep.horizon, "Survival horizon for complete verdicts");
    sweep_cmd->add_option("--report", report_path, "Write the JSON report to this file");
    sweep_cmd->add_option("--inject", injections, "Canonical model to check first (repeatable)");
    sweep_cmd->callback([&] {
        action = [&] {
            pick_format(g, {"json"});
            for (const std::string& spec : injections) sweep.injections.push_back(canonical_document(spec).christoffel);
            const SweepReport report = run_sweep(sweep);
            const std::string text = dump(sweep_report_json(report));
            if (!report_path.empty()) write_file_atomic(report_path, text);
            if (report_path.empty() || !g.output.empty()) emit(g, out, text);
            if (report.disagreements() > 0) {
                err << "sweep: " << report.disagreements() << " disagreement(s)\n";
                return kExitNumeric;
            }
            return kExitOk;
        };
    });

    // normalize
    ModelSource norm_src;
    std::uint64_t norm_seed = 0;
    CLI::App* norm_cmd = command("normalize", "Shear a rank-2 model until every symbol is nonzero");
    norm_src.attach(norm_cmd);
    norm_cmd->add_option("--seed", norm_seed, "Rotates the order of shear candidates");
    norm_cmd->callback([&] {
        action = [&] {
            pick_format(g, {"json"});
            const NormalizedModel n = normalize_generic(norm_src.load().christoffel, norm_seed);
            OrderedJson j = OrderedJson::parse(serialize_model_document({n.symbols, {}}));
            j["transform"] = OrderedJson::array({{n.transform.t11, n.transform.t12}, {n.transform.t21, n.transform.t22}});
            emit(g, out, dump(j));
            return kExitOk;
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "typea: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        return action ? action() : kExitInput;
    } catch (const Error& e) {
        err << "typea: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "typea: " << e.what() << '\n';
        return kExitNumeric;
    }
}

}  // namespace typea
