#include "rjm/cli.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "rjm/certificate.hpp"
#include "rjm/parser.hpp"
#include "rjm/svg.hpp"

namespace rjm {

namespace {

// Bad input that is not a parse error: unreadable files, out-of-range flags.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1), std::ios::binary);
    if (!in) throw InputError("cannot read " + arg.substr(1));
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << data)) throw InputError("cannot write " + path);
}

Json lattice(const LatticePoint& p) { return Json::array({p.i, p.j}); }

TongueConfig tongue_config(const std::string& x0, int grid) {
    TongueConfig cfg;
    try {
        cfg.x0 = Rational(x0);
        cfg.x0.canonicalize();
    } catch (const std::invalid_argument&) {
        throw InputError("--x0 must be a rational, got " + x0);
    }
    if (cfg.x0 <= 0) throw InputError("--x0 must be positive");
    if (grid < 8) throw InputError("--grid must be >= 8");
    cfg.grid.nx = cfg.grid.ny = grid;
    return cfg;
}

std::string levels_csv(const LevelSetReport& levels) {
    std::ostringstream s;
    s.precision(17);
    s << "t,classification,component,x,y\n";
    for (const auto& rec : levels.levels)
        for (std::size_t c = 0; c < rec.polylines.size(); ++c)
            for (const auto& p : rec.polylines[c])
                s << to_string(rec.t) << ',' << to_string(rec.classification) << ',' << c << ',' << p.x << ',' << p.y
                  << '\n';
    return s.str();
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Newton polygon certificates for real Jacobian mates", "rjm"};
    app.require_subcommand(1, 1);

    std::string input;
    auto add_input = [&](CLI::App* sub) { sub->add_option("poly", input, "polynomial text or @file")->required(); };

    auto* certify = app.add_subcommand("certify", "edge criterion certificate as JSON");
    bool no_swap = false, with_tongue = false;
    std::size_t falsify_n = 0;
    std::uint64_t seed = 0;
    std::string json_path, svg_path;
    int grid = 1000;
    certify->add_flag("--no-swap", no_swap, "do not try the x<->y swap");
    certify->add_flag("--tongue", with_tongue, "run the numeric tongue verification");
    certify->add_option("--falsify", falsify_n, "number of random mate trials");
    certify->add_option("--seed", seed, "base seed of the trials");
    certify->add_option("--json", json_path, "write the certificate here instead of stdout");
    certify->add_option("--svg", svg_path, "write the Newton polygon figure here");
    certify->add_option("--grid", grid, "tongue grid nodes per axis");
    add_input(certify);

    auto* analyze = app.add_subcommand("analyze", "Newton polygon and outer edges as JSON");
    add_input(analyze);

    auto* branch = app.add_subcommand("branch", "trace a branch at infinity as CSV");
    std::size_t edge_index = 0, root_index = 0;
    double x_start = 10, x_end = 1000;
    branch->add_option("--edge", edge_index, "right outer edge index, by slope")->required();
    branch->add_option("--x-start", x_start)->required();
    branch->add_option("--x-end", x_end)->required();
    branch->add_option("--root", root_index, "face polynomial root index");
    add_input(branch);

    auto* tongue = app.add_subcommand("tongue", "tongue verification as JSON");
    std::string x0 = "1", csv_path;
    tongue->add_option("--x0", x0, "left end of the tongue");
    tongue->add_option("--grid", grid, "grid nodes per axis");
    tongue->add_option("--csv", csv_path, "write level polylines here");
    tongue->add_option("--svg", svg_path, "write the tongue figure here");
    add_input(tongue);

    auto* falsify = app.add_subcommand("falsify", "search zeros of Jac(p, q)");
    std::string q_text;
    std::size_t trials = 20;
    int degree = 3, bound = 3;
    falsify->add_option("--q", q_text, "candidate mate; random mates when absent");
    falsify->add_option("--trials", trials);
    falsify->add_option("--degree", degree);
    falsify->add_option("--bound", bound);
    falsify->add_option("--seed", seed);
    add_input(falsify);

    auto* render = app.add_subcommand("render", "SVG figure");
    std::string what = "polygon", out_path;
    render->add_option("--what", what)->check(CLI::IsMember({"polygon", "tongue"}));
    render->add_option("--out", out_path, "write here instead of stdout");
    render->add_option("--x0", x0);
    render->add_option("--grid", grid);
    add_input(render);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "UsageError: " << e.what() << "\n";
        return kExitUsage;
    }

    auto emit = [&](const std::string& data, const std::string& path) {
        if (path.empty())
            out << data;
        else
            write_file(path, data);
    };

    try {
        const auto p = parse_polynomial(read_input(input));
        const std::string canonical = p.to_string();

        if (certify->parsed()) {
            auto criterion = corollary_certificate(p, !no_swap);
            std::optional<TongueCertificate> tc;
            std::optional<TrialReport> tr;
            if (with_tongue && criterion.satisfied) tc = tongue_certificate(p, tongue_config("1", grid));
            if (falsify_n > 0) {
                SearchConfig cfg;
                cfg.rng_seed = seed;
                tr = random_trials(p, falsify_n, 3, 3, cfg);
            }
            const CertificateDocument doc(canonical, criterion, std::move(tc), std::move(tr));
            const auto json = emit_certificate_json(doc);
            if (json_path.empty()) {
                out << json;
            } else {
                write_file(json_path, json);
                out << doc.summary() << "\n";
            }
            if (!svg_path.empty()) write_file(svg_path, render_polygon_svg(newton_polygon(p), &doc.criterion()));
            return doc.conclusion() == Conclusion::NoRealJacobianMate ? kExitOk : kExitNegative;
        }

        if (analyze->parsed()) {
            if (p.is_zero()) throw InputError("zero polynomial has no Newton polygon");
            const auto polygon = newton_polygon(p);
            Json j;
            j["input"] = canonical;
            j["vertices"] = Json::array();
            for (const auto& v : polygon.vertices) j["vertices"].push_back(lattice(v));
            j["outer_edges"] = Json::array();
            for (const auto& e : outer_edges(polygon)) j["outer_edges"].push_back(to_json(e));
            j["right_outer_edges"] = Json::array();
            for (const auto& e : right_outer_edges(polygon)) j["right_outer_edges"].push_back(to_json(e));
            j["criterion"] = to_json(corollary_certificate(p, true));
            out << j.dump(2) << "\n";
            return kExitOk;
        }

        if (branch->parsed()) {
            if (p.is_zero()) throw InputError("zero polynomial has no branches");
            const auto edges = right_outer_edges(newton_polygon(p));
            if (edge_index >= edges.size())
                throw InputError("--edge " + std::to_string(edge_index) + " out of range; " +
                                 std::to_string(edges.size()) + " right outer edges");
            const auto roots = branch_candidates(p, edges[edge_index]);
            if (root_index >= roots.size())
                throw InputError("--root " + std::to_string(root_index) + " out of range; " +
                                 std::to_string(roots.size()) + " face roots");
            TraceConfig cfg;
            cfg.x_start = x_start;
            cfg.x_end = x_end;
            try {
                cfg.validate();
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            const auto trace = trace_branch(p, roots[root_index], cfg);
            std::ostringstream s;
            s.precision(17);
            s << "x,y,residual\n";
            for (const auto& t : trace.samples) s << t.x << ',' << t.y << ',' << t.residual << '\n';
            out << s.str();
            return kExitOk;
        }

        if (tongue->parsed()) {
            const auto tc = tongue_certificate(p, tongue_config(x0, grid));
            out << to_json(tc).dump(2) << "\n";
            if (!csv_path.empty() && tc.levels) write_file(csv_path, levels_csv(*tc.levels));
            if (!svg_path.empty() && tc.region)
                write_file(svg_path, render_tongue_svg(*tc.region, tc.levels ? *tc.levels : LevelSetReport{}));
            return tc.status == TongueStatus::Verified ? kExitOk : kExitNegative;
        }

        if (falsify->parsed()) {
            SearchConfig cfg;
            cfg.rng_seed = seed;
            if (!q_text.empty()) {
                const auto q = parse_polynomial(q_text);
                const auto o = find_jacobian_zero(p, q, cfg);
                Json j;
                j["p"] = canonical;
                j["q"] = q.to_string();
                const Json oj = to_json(o);
                for (const auto& [k, v] : oj.items()) j[k] = v;
                out << j.dump(2) << "\n";
                return std::holds_alternative<ZeroWitness>(o) ? kExitOk : kExitNegative;
            }
            if (degree < 1 || bound < 1) throw InputError("--degree and --bound must be >= 1");
            const auto r = random_trials(p, trials, degree, bound, cfg);
            out << to_json(r).dump(2) << "\n";
            return r.witness_rate >= 0.9 ? kExitOk : kExitNegative;
        }

        if (render->parsed()) {
            if (what == "polygon") {
                if (p.is_zero()) throw InputError("zero polynomial has no Newton polygon");
                const auto cert = corollary_certificate(p, true);
                emit(render_polygon_svg(newton_polygon(p), &cert), out_path);
                return kExitOk;
            }
            const auto tc = tongue_certificate(p, tongue_config(x0, grid));
            if (!tc.region) {
                err << "no tongue: ";
                for (const auto& r : tc.reasons) err << r << "; ";
                err << "\n";
                return kExitNegative;
            }
            emit(render_tongue_svg(*tc.region, tc.levels ? *tc.levels : LevelSetReport{}), out_path);
            return tc.status == TongueStatus::Verified ? kExitOk : kExitNegative;
        }
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const InputError& e) {
        err << "InputError: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNegative;
    }
    return kExitUsage;
}

}  // namespace rjm
