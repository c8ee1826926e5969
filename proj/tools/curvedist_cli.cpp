// Command-line front end: one subcommand per experiment, JSON output with a
// config echo, version and timing.

#include "curvedist/counting.hpp"
#include "curvedist/elekes.hpp"
#include "curvedist/errors.hpp"
#include "curvedist/io.hpp"
#include "curvedist/motion.hpp"
#include "curvedist/parallel.hpp"
#include "curvedist/rigidity.hpp"
#include "curvedist/simplicity.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace curvedist;
using nlohmann::json;

namespace {

struct Globals {
    unsigned threads = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
};

// Raised after a partial result has been written.
struct NumericFailure {
    std::string message;
};

std::vector<std::string> split(const std::string &text, char sep = ',') {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

std::vector<double> parse_doubles(const std::string &text) {
    std::vector<double> v;
    for (const auto &s : split(text)) v.push_back(to_double(parse_rational(s)));
    return v;
}

Interval parse_window(const std::string &text) {
    auto v = parse_doubles(text);
    if (v.size() != 2 || !(v[0] < v[1])) throw ValidationError("window must be 'lo,hi' with lo < hi");
    return Interval(v[0], v[1]);
}

void write_text(const Globals &g, const std::string &text) {
    if (g.out.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw ValidationError("cannot open output file " + g.out);
    f << text << "\n";
}

struct CurveArgs {
    std::string curve;
    std::string quantity = "sq_euclidean";
    std::string domain;

    void add(CLI::App *cmd, bool with_quantity = true) {
        cmd->add_option("--curve", curve, "builtin name, JSON file or inline JSON");
        if (with_quantity) cmd->add_option("--quantity", quantity, "sq_euclidean, pinned_area(x,y), JSON file or inline JSON");
        cmd->add_option("--domain", domain, "restrict the curve to lo,hi");
    }
    Curve load_curve() const {
        if (curve.empty()) throw ValidationError("--curve is required");
        Curve c = io::parse_curve_arg(curve);
        if (!domain.empty()) c = c.restricted(parse_window(domain));
        return c;
    }
    Quantity load_quantity(const Curve &c) const { return io::parse_quantity_arg(quantity, c.dimension()); }
    json echo() const { return {{"curve", curve}, {"quantity", quantity}, {"domain", domain}}; }
};

struct PointArgs {
    std::string scheme;
    std::string params;

    void add(CLI::App *cmd) {
        cmd->add_option("--scheme", scheme, "arith:s:d:N | geom:s:r:N | random:[seed:]N | angle:N");
        cmd->add_option("--params,--points", params, "explicit comma-separated parameters");
    }
    Scheme resolve_scheme(std::uint64_t seed) const {
        auto parts = split(scheme, ':');
        if (parts.size() == 2 && parts[0] == "random") return parse_scheme("random:" + std::to_string(seed) + ":" + parts[1]);
        return parse_scheme(scheme);
    }
    ParamPointSet load(const Curve &c, std::uint64_t seed) const {
        if (!params.empty()) {
            std::vector<Rational> v;
            for (const auto &s : split(params)) v.push_back(parse_rational(s));
            return make_point_set(c, std::move(v));
        }
        if (scheme.empty()) throw ValidationError("--scheme or --params is required");
        return generate_point_set(c, resolve_scheme(seed));
    }
};

CountMode resolve_mode(const std::string &mode, double eps, const ParamPointSet &pset) {
    if (mode == "exact") return ExactMode{};
    if (mode == "tol") return ToleranceMode{eps};
    if (mode.rfind("tol:", 0) == 0) return ToleranceMode{to_double(parse_rational(mode.substr(4)))};
    if (mode != "auto") throw ValidationError("--mode must be auto, exact or tol");
    if (pset.curve.is_rational() && pset.exact) return ExactMode{};
    return ToleranceMode{eps};
}

// Self-test bookkeeping: one PASS/FAIL line per check.
struct SelfTest {
    int failed = 0;
    void check(const std::string &name, const std::function<bool()> &f) {
        bool ok = false;
        std::string note;
        try {
            ok = f();
        } catch (const std::exception &e) {
            note = std::string(" (") + e.what() + ")";
        }
        std::cout << (ok ? "PASS " : "FAIL ") << name << note << "\n";
        if (!ok) ++failed;
    }
    int code() const { return failed == 0 ? 0 : 1; }
};

bool is_input_error(const CurveDistError &e) {
    return dynamic_cast<const ValidationError *>(&e) || dynamic_cast<const DomainError *>(&e) ||
           dynamic_cast<const DimensionMismatch *>(&e) || dynamic_cast<const SchemeMismatch *>(&e) ||
           dynamic_cast<const DisconnectedFramework *>(&e) || dynamic_cast<const ExactnessUnavailable *>(&e) ||
           dynamic_cast<const JetOrderError *>(&e) || dynamic_cast<const PoleError *>(&e);
}

using Runner = std::function<json(json &config)>;

struct Command {
    std::string name;
    bool self_test = false;
    Runner run;
    std::function<int()> self;
    // CSV rendering of the result, when the command has a tabular form.
    std::function<std::string(const json &result)> csv;
};

int execute(const Globals &g, Command &cmd) {
    set_thread_count(g.threads);
    if (cmd.self_test) return cmd.self();
    if (g.format != "json" && g.format != "csv") throw ValidationError("--format must be json or csv");
    if (g.format == "csv" && !cmd.csv) throw ValidationError(cmd.name + " has no CSV form");
    json config;
    config["threads"] = g.threads;
    config["seed"] = g.seed;
    const auto t0 = std::chrono::steady_clock::now();
    json doc = {{"command", cmd.name}, {"version", CURVEDIST_VERSION}};
    int code = 0;
    try {
        doc["result"] = cmd.run(config);
    } catch (const NumericFailure &f) {
        doc["result"] = config.contains("partial") ? config["partial"] : json(nullptr);
        doc["error"] = f.message;
        code = 3;
    } catch (const CurveDistError &e) {
        if (is_input_error(e)) throw;
        doc["result"] = config.contains("partial") ? config["partial"] : json(nullptr);
        doc["error"] = e.what();
        code = 3;
    }
    config.erase("partial");
    doc["config"] = config;
    doc["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (g.format == "csv" && code == 0)
        write_text(g, cmd.csv(doc["result"]));
    else
        write_text(g, doc.dump(2));
    if (code != 0) std::cerr << "error: " << doc["error"].get<std::string>() << "\n";
    return code;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Distinct values of distance polynomials on curves"};
    app.set_version_flag("--version", std::string(CURVEDIST_VERSION));
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--threads", g.threads, "worker cap (0 = all cores)");
    app.add_option("--seed", g.seed, "seed for random schemes and sampling");
    app.add_option("--out", g.out, "output file (default stdout)");
    app.add_option("--format", g.format, "json or csv");

    std::vector<std::unique_ptr<Command>> commands;
    auto make = [&](const std::string &name, const std::string &help) {
        auto *sub = app.add_subcommand(name, help);
        commands.push_back(std::make_unique<Command>());
        commands.back()->name = name;
        sub->add_flag("--self-test", commands.back()->self_test, "run built-in sanity checks");
        return std::make_pair(sub, commands.back().get());
    };

    // count-distances
    CurveArgs cd_curve;
    PointArgs cd_points;
    std::string cd_mode = "auto";
    double cd_eps = 1e-9;
    bool cd_values = false;
    {
        auto [sub, cmd] = make("count-distances", "count distinct values of D over a point set");
        cd_curve.add(sub);
        cd_points.add(sub);
        sub->add_option("--mode", cd_mode, "auto, exact, tol or tol:EPS");
        sub->add_option("--eps", cd_eps, "relative merge tolerance");
        sub->add_flag("--values", cd_values, "list the distinct values");
        cmd->run = [&](json &config) {
            config.update(cd_curve.echo());
            config.update({{"scheme", cd_points.scheme}, {"params", cd_points.params}, {"mode", cd_mode}, {"eps", cd_eps}});
            Curve c = cd_curve.load_curve();
            Quantity q = cd_curve.load_quantity(c);
            ParamPointSet pset = cd_points.load(c, g.seed);
            DistinctCount r = count_distinct_values(pset, q, resolve_mode(cd_mode, cd_eps, pset));
            json out = io::to_json(r);
            out["n"] = pset.size();
            if (cd_values) out["values"] = r.values;
            return out;
        };
        cmd->self = [] {
            SelfTest t;
            const auto q = Quantity::squared_euclidean(2);
            t.check("6 equally spaced points on the unit circle give 3 distances", [&] {
                auto pset = generate_point_set(builtin_curve("unit_circle"), EquallySpacedAngle{6});
                return count_distinct_values(pset, q, ToleranceMode{1e-9}).count == 3;
            });
            t.check("N integer points on a line give N-1 distances", [&] {
                auto pset = generate_point_set(builtin_curve("line"), ArithmeticProgression{0, 1, 10});
                return count_distinct_values(pset, q, ExactMode{}).count == 9;
            });
            t.check("two points give one value", [&] {
                auto pset = make_point_set(builtin_curve("parabola"), std::vector<Rational>{0, 1});
                return count_distinct_values(pset, q, ExactMode{}).count == 1;
            });
            return t.code();
        };
    }

    // estimate-exponent
    CurveArgs ee_curve;
    std::string ee_scheme;
    std::string ee_sizes = "8,16,32,64,128";
    std::string ee_mode = "auto";
    double ee_eps = 1e-9;
    {
        auto [sub, cmd] = make("estimate-exponent", "fit the growth exponent of the distinct-value count");
        ee_curve.add(sub);
        sub->add_option("--scheme", ee_scheme, "base scheme; its size is replaced by each --sizes entry");
        sub->add_option("--sizes", ee_sizes, "comma-separated point-set sizes");
        sub->add_option("--mode", ee_mode, "auto, exact, tol or tol:EPS");
        sub->add_option("--eps", ee_eps, "relative merge tolerance");
        cmd->run = [&](json &config) {
            config.update(ee_curve.echo());
            config.update({{"scheme", ee_scheme}, {"sizes", ee_sizes}, {"mode", ee_mode}, {"eps", ee_eps}});
            Curve c = ee_curve.load_curve();
            Quantity q = ee_curve.load_quantity(c);
            if (ee_scheme.empty()) throw ValidationError("--scheme is required");
            PointArgs pa{ee_scheme, ""};
            const Scheme base = pa.resolve_scheme(g.seed);
            std::vector<std::pair<double, double>> samples;
            json rows = json::array();
            for (const auto &s : split(ee_sizes)) {
                const int n = std::stoi(s);
                ParamPointSet pset = generate_point_set(c, with_size(base, n));
                DistinctCount r = count_distinct_values(pset, q, resolve_mode(ee_mode, ee_eps, pset));
                samples.emplace_back(n, static_cast<double>(r.count));
                rows.push_back({{"n", n}, {"count", r.count}, {"exact", r.exact}});
            }
            json out = io::to_json(fit_exponent(samples));
            out["rows"] = rows;
            return out;
        };
        cmd->csv = [](const json &result) {
            std::ostringstream os;
            os << "n,count\n";
            for (const auto &row : result["rows"]) os << row["n"].get<int>() << "," << row["count"].get<std::size_t>() << "\n";
            os << "# slope=" << result["slope"].get<double>() << " intercept=" << result["intercept"].get<double>()
               << " r_squared=" << result["r_squared"].get<double>();
            return os.str();
        };
        cmd->self = [] {
            SelfTest t;
            t.check("line with integer points has exponent near 1", [] {
                std::vector<std::pair<double, double>> s;
                for (int n : {8, 16, 32, 64}) s.emplace_back(n, n - 1);
                const auto fit = fit_exponent(s);
                return fit.slope > 1.0 && fit.slope < 1.1;
            });
            t.check("exact power law is recovered", [] {
                const auto fit = fit_exponent({{2, 4}, {4, 16}, {8, 64}});
                return std::abs(fit.slope - 2.0) < 1e-12 && std::abs(fit.r_squared - 1.0) < 1e-12;
            });
            return t.code();
        };
    }

    // elekes-analyze
    CurveArgs ea_curve;
    PointArgs ea_points;
    AdmissibilityOptions ea_opts;
    std::string ea_window;
    bool ea_skip_incidence = false;
    {
        auto [sub, cmd] = make("elekes-analyze", "Elekes curves: incidences, implicit forms and pairwise intersections");
        ea_curve.add(sub);
        ea_points.add(sub);
        sub->add_option("--pairs", ea_opts.sample_pairs, "sampled pairs of Elekes curves");
        sub->add_option("--grid", ea_opts.grid, "Newton seed grid per axis");
        sub->add_option("--tol", ea_opts.tol, "deduplication and same-curve tolerance");
        sub->add_option("--window", ea_window, "parameter window lo,hi");
        sub->add_flag("--skip-incidence", ea_skip_incidence, "skip the incidence check");
        cmd->run = [&](json &config) {
            config.update(ea_curve.echo());
            config.update({{"scheme", ea_points.scheme},
                           {"params", ea_points.params},
                           {"pairs", ea_opts.sample_pairs},
                           {"grid", ea_opts.grid},
                           {"tol", ea_opts.tol},
                           {"window", ea_window}});
            Curve c = ea_curve.load_curve();
            Quantity q = ea_curve.load_quantity(c);
            ParamPointSet pset = ea_points.load(c, g.seed);
            AdmissibilityOptions opts = ea_opts;
            opts.seed = g.seed;
            if (!ea_window.empty()) opts.window = parse_window(ea_window);
            json out;
            out["n"] = pset.size();
            if (!ea_skip_incidence) out["incidence"] = io::to_json(verify_incidence_invariant(pset, q));
            if (pset.exact && c.is_rational() && pset.size() >= 2) {
                auto e = with_implicit(make_elekes_curve(c, q, (*pset.exact)[0], (*pset.exact)[1]));
                out["example_implicit"] = io::to_json(*e.implicit);
                out["degree_bound"] = e.degree_bound();
            }
            out["admissibility"] = io::to_json(admissibility_scan(pset, q, opts));
            return out;
        };
        cmd->self = [] {
            SelfTest t;
            const auto q = Quantity::squared_euclidean(2);
            t.check("parabola implicitizes to X^2 - Y", [] {
                const Curve par = builtin_curve("parabola");
                const auto &co = par.rational().coords;
                return implicitize_rational(co[0], co[1]).to_string() == "X^2 - Y";
            });
            t.check("incidence invariant holds on 5 parabola points", [&] {
                auto pset = make_point_set(builtin_curve("parabola"), std::vector<Rational>{0, 1, 2, Rational(1, 3), -3});
                auto r = verify_incidence_invariant(pset, q);
                return r.failures.empty() && r.exact && r.checked == 60;
            });
            t.check("mirror pairs on the parabola share one algebraic curve", [&] {
                auto par = builtin_curve("parabola");
                auto a = with_implicit(make_elekes_curve(par, q, Rational(1), Rational(2)));
                auto b = with_implicit(make_elekes_curve(par, q, Rational(-1), Rational(-2)));
                return *a.implicit == *b.implicit;
            });
            return t.code();
        };
    }

    // test-degeneracy
    CurveArgs td_curve;
    DegeneracyOptions td_opts{16, 256, 1e-8, std::nullopt};
    std::string td_window;
    {
        auto [sub, cmd] = make("test-degeneracy", "scan the rigidity function H for T-degeneracy");
        td_curve.add(sub);
        sub->add_option("--pairs", td_opts.pairs, "number of (alpha, beta) pairs (>= 8)");
        sub->add_option("--tau-grid", td_opts.tau_grid, "tau grid size (>= 64)");
        sub->add_option("--tol", td_opts.tol, "relative variation threshold");
        sub->add_option("--window", td_window, "working interval lo,hi");
        cmd->run = [&](json &config) {
            config.update(td_curve.echo());
            config.update({{"pairs", td_opts.pairs}, {"tau_grid", td_opts.tau_grid}, {"tol", td_opts.tol}, {"window", td_window}});
            Curve c = td_curve.load_curve();
            Quantity q = td_curve.load_quantity(c);
            DegeneracyOptions opts = td_opts;
            if (!td_window.empty()) opts.window = parse_window(td_window);
            return io::to_json(scan_T_degeneracy(c, q, opts));
        };
        cmd->self = [] {
            SelfTest t;
            const auto q = Quantity::squared_euclidean(2);
            t.check("H is 1 on the unit circle", [&] {
                return std::abs(eval_H(builtin_curve("unit_circle"), q, 0.3, 1.1, 2.0) - 1.0) < 1e-12;
            });
            t.check("unit circle is a degeneracy candidate", [&] {
                return scan_T_degeneracy(builtin_curve("unit_circle"), q).is_degenerate_candidate;
            });
            t.check("parabola is not", [&] {
                auto r = scan_T_degeneracy(builtin_curve("parabola"), q);
                return !r.is_degenerate_candidate && r.witness.has_value();
            });
            return t.code();
        };
    }

    // flex
    std::string fx_framework;
    double fx_tol = 1e-9;
    {
        auto [sub, cmd] = make("flex", "infinitesimal flexibility of a framework on a curve");
        sub->add_option("--framework", fx_framework, "framework JSON file or inline JSON");
        sub->add_option("--tol", fx_tol, "relative singular-value cutoff");
        cmd->run = [&](json &config) {
            config.update({{"framework", fx_framework}, {"tol", fx_tol}});
            if (fx_framework.empty()) throw ValidationError("--framework is required");
            Framework fw = io::framework_from_json(io::load_spec(fx_framework));
            auto r = infinitesimal_nullity(fw, fx_tol);
            json out = io::to_json(r);
            out["vertices"] = fw.vertex_count;
            out["edges"] = fw.edges.size();
            return out;
        };
        cmd->self = [] {
            SelfTest t;
            const auto q = Quantity::squared_euclidean(2);
            const auto circle = builtin_curve("unit_circle");
            t.check("K_{1,1} has nullity 1", [&] {
                return infinitesimal_nullity(make_framework(circle, q, {{0, 1}}, std::vector<double>{0.1, 0.7})).nullity() == 1;
            });
            t.check("K_{2,1} has nullity at least 1", [&] {
                auto fw = make_framework(builtin_curve("parabola"), q, {{0, 2}, {1, 2}}, std::vector<Rational>{0, 1, 2});
                return infinitesimal_nullity(fw).nullity() >= 1;
            });
            t.check("triangle on the circle rotates", [&] {
                const double third = 2.0 * std::numbers::pi / 3.0;
                auto fw = make_framework(circle, q, complete_graph_edges(3), std::vector<double>{0.0, third, -third});
                return infinitesimal_nullity(fw).nullity() == 1;
            });
            return t.code();
        };
    }

    // trace-motion
    CurveArgs tm_curve;
    std::string tm_triangle, tm_framework;
    int tm_driver = 0;
    double tm_step = 0.005;
    int tm_steps = 100;
    {
        auto [sub, cmd] = make("trace-motion", "continue a triangle or framework motion and measure drift");
        tm_curve.add(sub);
        sub->add_option("--triangle", tm_triangle, "alpha,tau,beta");
        sub->add_option("--framework", tm_framework, "framework JSON (instead of --curve/--triangle)");
        sub->add_option("--driver", tm_driver, "driver vertex for --framework");
        sub->add_option("--step", tm_step, "driver step");
        sub->add_option("--steps", tm_steps, "number of steps");
        cmd->run = [&](json &config) {
            config.update(tm_curve.echo());
            config.update({{"triangle", tm_triangle},
                           {"framework", tm_framework},
                           {"driver", tm_driver},
                           {"step", tm_step},
                           {"steps", tm_steps}});
            MotionTrace trace;
            if (!tm_framework.empty()) {
                trace = trace_framework_motion(io::framework_from_json(io::load_spec(tm_framework)), tm_driver, tm_step, tm_steps);
            } else {
                Curve c = tm_curve.load_curve();
                Quantity q = tm_curve.load_quantity(c);
                auto v = parse_doubles(tm_triangle);
                if (v.size() != 3) throw ValidationError("--triangle needs three parameters");
                trace = trace_triangle_motion(c, q, {v[0], v[1], v[2]}, tm_step, tm_steps);
            }
            json out = io::to_json(trace);
            if (trace.status != TraceStatus::Completed) {
                config["partial"] = out;
                throw NumericFailure{"trace stopped early: " + to_string(trace.status) + ", " + trace.message};
            }
            return out;
        };
        cmd->self = [] {
            SelfTest t;
            t.check("circle triangle has no drift", [] {
                auto tr = trace_triangle_motion(builtin_curve("unit_circle"), Quantity::squared_euclidean(2), {0.0, 0.8, 1.7}, 0.005, 100);
                return tr.status == TraceStatus::Completed && tr.max_drift < 1e-9;
            });
            t.check("parabola triangle drifts", [] {
                auto tr = trace_triangle_motion(builtin_curve("parabola"), Quantity::squared_euclidean(2), {0.0, 0.5, 1.0}, 0.01, 10);
                return tr.max_drift > 1e-4;
            });
            return t.code();
        };
    }

    // classify-curve
    CurveArgs cc_curve;
    int cc_order = 4, cc_samples = 64;
    double cc_h = 1e-3, cc_tol = 1e-12, cc_helix_tol = 1e-4;
    long cc_max_den = 1000000;
    {
        auto [sub, cmd] = make("classify-curve", "helix verdict from derivative norms and, for helices, frequency ratios");
        cc_curve.add(sub, false);
        sub->add_option("--max-order", cc_order, "highest derivative order (1..5)");
        sub->add_option("--samples", cc_samples, "sample points on the arc-length parametrization");
        sub->add_option("--fd-step", cc_h, "finite-difference step");
        sub->add_option("--helix-tol", cc_helix_tol, "relative variation threshold for the helix verdict");
        sub->add_option("--max-den", cc_max_den, "denominator bound for ratio certificates");
        sub->add_option("--tol", cc_tol, "relative tolerance for ratio certificates");
        cmd->run = [&](json &config) {
            json echo = cc_curve.echo();
            echo.erase("quantity");
            config.update(echo);
            config.update({{"max_order", cc_order},
                           {"samples", cc_samples},
                           {"h", cc_h},
                           {"helix_tol", cc_helix_tol},
                           {"max_den", cc_max_den},
                           {"tol", cc_tol}});
            Curve c = cc_curve.load_curve();
            json out;
            if (c.is_helix()) out["structural"] = io::to_json(classify_helix(c.helix(), cc_max_den, cc_tol));
            auto profile = derivative_norm_profile(c, cc_order, cc_samples, cc_h, cc_helix_tol);
            out["profile"] = io::to_json(profile);
            out["helix_candidate"] = profile.helix_candidate;
            return out;
        };
        cmd->csv = [](const json &result) {
            const auto &p = result["profile"];
            std::ostringstream os;
            os.precision(17);
            os << "s";
            for (const auto &k : p["orders"]) os << ",norm_" << k.get<int>();
            os << "\n";
            const auto &samples = p["samples"];
            for (std::size_t i = 0; i < samples.size(); ++i) {
                os << samples[i].get<double>();
                for (const auto &row : p["norms"]) os << "," << row[i].get<double>();
                os << "\n";
            }
            os << "# helix_candidate=" << (result["helix_candidate"].get<bool>() ? "true" : "false");
            return os.str();
        };
        cmd->self = [] {
            SelfTest t;
            t.check("circle is an algebraic helix", [] {
                return classify_helix(builtin_curve("unit_circle").helix()).is_algebraic;
            });
            t.check("circular helix is not algebraic", [] {
                return !classify_helix(builtin_curve("circular_helix(1)").helix()).is_algebraic;
            });
            t.check("frequencies (2, 3) certify 3/2", [] {
                auto c = classify_helix(builtin_curve("flat_torus(2,3)").helix());
                return c.is_algebraic && c.certificates.size() == 1 && c.certificates[0].p == 3 && c.certificates[0].q == 2;
            });
            t.check("circle has unit curvature", [] {
                auto p = derivative_norm_profile(builtin_curve("unit_circle"), 2, 32);
                return std::abs(p.norms[1][0] - 1.0) < 1e-6 && p.helix_candidate;
            });
            return t.code();
        };
    }

    // check-simplicity
    CurveArgs cs_curve;
    int cs_grid = 256;
    double cs_tol = 1e-9;
    {
        auto [sub, cmd] = make("check-simplicity", "sampled check of the five simple-pair conditions");
        cs_curve.add(sub);
        sub->add_option("--grid", cs_grid, "grid size (>= 32)");
        sub->add_option("--tol", cs_tol, "tolerance");
        cmd->run = [&](json &config) {
            config.update(cs_curve.echo());
            config.update({{"grid", cs_grid}, {"tol", cs_tol}});
            Curve c = cs_curve.load_curve();
            return io::to_json(check_simplicity(c, cs_curve.load_quantity(c), cs_grid, cs_tol));
        };
        cmd->self = [] {
            SelfTest t;
            const auto q = Quantity::squared_euclidean(2);
            t.check("line fails the curvature condition", [&] {
                auto r = check_simplicity(builtin_curve("line"), q);
                return !r.conditions[1].passed;
            });
            t.check("parabola passes", [&] { return check_simplicity(builtin_curve("parabola"), q).all_passed(); });
            return t.code();
        };
    }

    // bound
    long bd_np = 100, bd_nxi = 10000;
    double bd_c = 1.0, bd_k = 1.0;
    {
        auto [sub, cmd] = make("bound", "distinct-value lower bound implied by the incidence inequality");
        sub->add_option("--np", bd_np, "number of points");
        sub->add_option("--nxi", bd_nxi, "number of Elekes curves");
        sub->add_option("--c", bd_c, "admissibility constant");
        sub->add_option("--k", bd_k, "incidence-bound constant");
        cmd->run = [&](json &config) {
            config.update({{"np", bd_np}, {"nxi", bd_nxi}, {"c", bd_c}, {"k", bd_k}});
            auto b = elekes_lower_bound(bd_np, bd_nxi, bd_c, bd_k);
            std::cerr << "delta* = " << b.delta << "\n";
            return json{{"delta", b.delta}, {"trivial", b.trivial}};
        };
        cmd->self = [] {
            SelfTest t;
            t.check("bound is at least 1", [] { return elekes_lower_bound(10, 10, 1, 1).delta >= 1.0; });
            t.check("bound grows with the number of points",
                    [] { return elekes_lower_bound(200, 10000, 1, 1).delta > elekes_lower_bound(100, 10000, 1, 1).delta; });
            return t.code();
        };
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    for (auto &cmd : commands) {
        if (!app.got_subcommand(cmd->name)) continue;
        try {
            return execute(g, *cmd);
        } catch (const CurveDistError &e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        } catch (const nlohmann::json::exception &e) {
            std::cerr << "error: malformed input: " << e.what() << "\n";
            return 2;
        } catch (const std::invalid_argument &e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return 2;
}
