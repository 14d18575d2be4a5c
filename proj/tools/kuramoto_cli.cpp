// Command-line front end: reproducible experiments over the library with
// deterministic seeds, config files, and CSV/JSON outputs.
//
// Subcommands:
//   equilibria  census of the fixed points with analytic eigenstructure
//   simulate    orbit integration (random / explicit / saddle-connection)
//   cells       cell complex, Euler characteristic and integer homology
//   imprint     normal-circle experiments and winding numbers
//
// Exit codes: 0 ok, 2 invalid configuration, 3 integration failure,
// 4 boundary-operator inconsistency, 5 degenerate normal frame.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "kuramoto/imprints.hpp"
#include "kuramoto/io.hpp"

using namespace kuramoto;
using nlohmann::json;

namespace {

constexpr int schema_version = 1;

constexpr int exit_ok = 0;
constexpr int exit_bad_config = 2;
constexpr int exit_integration = 3;
constexpr int exit_dd_nonzero = 4;
constexpr int exit_degenerate_frame = 5;

std::vector<double> parse_reals(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

std::vector<int> parse_indices(const std::string& csv) {
    std::vector<int> out;
    for (double v : parse_reals(csv)) out.push_back(static_cast<int>(v));
    return out;
}

std::string subset_string(const std::vector<int>& subset) {
    std::string s = "{";
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(subset[i] + 1); // 1-based for display
    }
    return s + "}";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

/// CSV header comment embedding the resolved configuration.
std::string csv_header(const json& config) {
    return "# schema_version=" + std::to_string(schema_version) + " config=" + config.dump() +
           "\n";
}

json base_summary(const std::string& command, const json& config) {
    json out;
    out["schema_version"] = schema_version;
    out["command"] = command;
    out["config"] = config;
    return out;
}

void emit(const json& summary) { std::cout << summary.dump(2) << std::endl; }

// ---------------------------------------------------------------------------

int cmd_equilibria(int m, const std::string& out_path, const std::string& format) {
    json config{{"m", m}, {"out", out_path}, {"format", format}};
    auto records = enumerate_equilibria(m);

    std::ostringstream csv;
    csv << csv_header(config);
    csv.precision(17);
    csv << "subset,index,potential,kind,eigenvalues\n";
    json rows = json::array();
    long nonmax = 0, singular = 0;
    for (const auto& r : records) {
        (r.kind == EquilibriumKind::singular_max ? singular : nonmax)++;
        std::string kind = r.kind == EquilibriumKind::sink     ? "sink"
                           : r.kind == EquilibriumKind::saddle ? "saddle"
                                                               : "singular-max";
        std::ostringstream eig;
        eig.precision(17);
        for (std::size_t i = 0; i < r.eigenpairs.size(); ++i) {
            if (i) eig << ";";
            eig << r.eigenpairs[i].first;
        }
        csv << subset_string(r.subset) << "," << r.index << "," << r.potential << "," << kind
            << "," << eig.str() << "\n";
        rows.push_back({{"subset", r.subset},
                        {"index", r.index},
                        {"potential", r.potential},
                        {"kind", kind}});
    }

    json summary = base_summary("equilibria", config);
    summary["nonmaximal_count"] = nonmax;
    summary["singular_count"] = singular;
    if (!out_path.empty()) {
        if (format == "json") {
            json full = summary;
            full["records"] = rows;
            write_file(out_path, full.dump(2) + "\n");
        } else {
            write_file(out_path, csv.str());
        }
    }
    emit(summary);
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    int m = 5;
    std::string start, start_equilibrium, omega;
    bool random = false;
    double offset_unstable = 0.0, offset_stable = 0.0;
    double coupling_jitter = 0.0;
    double tmax = 100.0;
    std::uint64_t seed = 0;
    std::string out_path;
};

int cmd_simulate(const SimulateArgs& a) {
    json config{{"m", a.m},
                {"seed", a.seed},
                {"tmax", a.tmax},
                {"start", a.start},
                {"random", a.random},
                {"start_equilibrium", a.start_equilibrium},
                {"offset_unstable", a.offset_unstable},
                {"offset_stable", a.offset_stable},
                {"omega", a.omega},
                {"coupling_jitter", a.coupling_jitter},
                {"out", a.out_path}};
    std::mt19937_64 rng(a.seed);

    ModelParams params = ModelParams::standard(a.m);
    bool perturbed = false;
    if (!a.omega.empty()) {
        auto w = parse_reals(a.omega);
        if (static_cast<int>(w.size()) != a.m) {
            std::cerr << "omega must have m entries\n";
            return exit_bad_config;
        }
        params.omega = Eigen::Map<Vec>(w.data(), a.m);
        perturbed = true;
    }
    if (a.coupling_jitter != 0.0) {
        std::uniform_real_distribution<double> uni(-a.coupling_jitter, a.coupling_jitter);
        for (int i = 0; i < a.m; ++i)
            for (int j = 0; j < a.m; ++j) params.coupling(i, j) = 1.0 + uni(rng);
        perturbed = true;
    }

    FlowOptions opts;
    opts.t_span = a.tmax;

    // saddle-connection mode
    if (!a.start_equilibrium.empty() && a.offset_unstable > 0.0) {
        auto listed = parse_indices(a.start_equilibrium);
        std::vector<int> I;
        for (int i : listed) I.push_back(i - 1);
        std::sort(I.begin(), I.end());
        if (I.empty() || 2 * static_cast<int>(I.size()) >= a.m) {
            std::cerr << "start equilibrium must satisfy 0 < |I| < m/2\n";
            return exit_bad_config;
        }
        std::vector<int> J(I.begin(), I.end() - 1);
        auto het = find_heteroclinic(I, J, a.m, opts, a.offset_unstable);
        if (!het.found) {
            std::cerr << "saddle connection not found: " << het.message << "\n";
            return exit_integration;
        }
        json summary = base_summary("simulate", config);
        summary["mode"] = "heteroclinic";
        summary["terminal"] = "saddle";
        summary["terminal_subset"] = subset_string(J);
        summary["samples"] = het.branch_plus.samples.size();
        if (!a.out_path.empty())
            write_file(a.out_path, csv_header(config) + orbit_trace_csv(het.branch_plus));
        emit(summary);
        return exit_ok;
    }

    // assemble the start point
    Vec theta;
    if (!a.start.empty()) {
        auto v = parse_reals(a.start);
        if (static_cast<int>(v.size()) != a.m) {
            std::cerr << "start must have m angles\n";
            return exit_bad_config;
        }
        theta = Eigen::Map<Vec>(v.data(), a.m);
    } else if (!a.start_equilibrium.empty()) {
        auto listed = parse_indices(a.start_equilibrium);
        std::vector<int> I;
        for (int i : listed) I.push_back(i - 1);
        theta = exemplar(I, a.m).angles;
        if (a.offset_stable > 0.0) {
            Vec dir = Vec::Zero(a.m);
            std::normal_distribution<double> gauss;
            for (const auto& [lambda, v] : detail::permuted_eigenpairs(I, a.m))
                if (lambda < -0.5) dir += gauss(rng) * v.normalized();
            if (dir.norm() > 0) theta += a.offset_stable * dir.normalized();
        }
    } else {
        // default: a seeded random start
        std::uniform_real_distribution<double> uni(0.0, two_pi);
        theta.resize(a.m);
        for (int i = 0; i < a.m; ++i) theta[i] = uni(rng);
    }

    OrbitTrace trace = integrate(PhasePoint(Vec(theta)), a.tmax, Direction::forward, params, opts);
    if (trace.terminal == TerminalKind::step_failure) {
        std::cerr << "integration failure\n";
        return exit_integration;
    }

    // classify the terminal state against the unperturbed census
    auto records = enumerate_equilibria(a.m);
    const Vec final_state = trace.back().state;
    Vec f = vector_field_raw(final_state, params);
    json summary = base_summary("simulate", config);
    summary["mode"] = perturbed ? "generalized" : "standard";
    summary["final_V"] = trace.back().V;
    summary["final_r"] = trace.back().r;
    summary["final_field_norm"] = f.norm();
    if (f.norm() < 1e-6) {
        int best = -1;
        double best_d = 1e18;
        for (std::size_t i = 0; i < records.size(); ++i) {
            double d = diagonal_dist(final_state, exemplar(records[i].subset, a.m).angles);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(i);
            }
        }
        const auto& r = records[static_cast<std::size_t>(best)];
        summary["terminal"] = (r.kind == EquilibriumKind::sink) ? "sink" : "saddle";
        summary["terminal_subset"] = subset_string(r.subset);
        summary["terminal_distance"] = best_d;
    } else {
        summary["terminal"] = "max-time";
    }
    if (!a.out_path.empty()) write_file(a.out_path, csv_header(config) + orbit_trace_csv(trace));
    emit(summary);
    return exit_ok;
}

// ---------------------------------------------------------------------------

int cmd_cells(int m, const std::string& out_path, const std::string& out_complex) {
    if (m < 3 || m > 9) {
        std::cerr << "m must be between 3 and 9 for cell enumeration\n";
        return exit_bad_config;
    }
    json config{{"m", m}, {"out", out_path}, {"out_complex", out_complex}};
    ChainComplex cc = enumerate_cells(m);
    json summary = base_summary("cells", config);
    json counts = json::array();
    for (int k = 0; k <= cc.max_dim(); ++k) counts.push_back(cc.cell_count(k));
    summary["cells_by_dim"] = counts;
    summary["euler_characteristic"] = euler_characteristic(cc);

    bool dd = verify_dd_zero(cc);
    summary["dd_zero"] = dd;
    if (!dd) {
        emit(summary);
        std::cerr << "boundary operator inconsistency: dd != 0\n";
        return exit_dd_nonzero;
    }

    BettiTable table = homology_snf(cc);
    json snf = json::array(), formula = json::array();
    bool match = true;
    for (std::size_t k = 0; k < table.betti.size(); ++k) {
        snf.push_back(table.betti[k]);
        long long bf = betti_formula(m, static_cast<int>(k));
        formula.push_back(bf);
        if (bf != table.betti[k]) match = false;
    }
    summary["betti_snf"] = snf;
    summary["betti_formula"] = formula;
    summary["match"] = match;
    json torsion = json::array();
    for (const auto& t : table.torsion) {
        json dims = json::array();
        for (const auto& d : t) dims.push_back(d.str());
        torsion.push_back(dims);
    }
    summary["torsion"] = torsion;

    if (!out_path.empty()) write_file(out_path, csv_header(config) + betti_csv(table));
    if (!out_complex.empty()) write_file(out_complex, complex_to_json(cc).dump(2) + "\n");
    emit(summary);
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct ImprintArgs {
    int m = 5;
    std::string base = "roots-of-unity";
    double radius = 0.01;
    int n = 360;
    double crossing_level = -1.0; // default m - 2
    bool winding = false;
    std::string template_I;
    std::uint64_t seed = 0;
    std::string out_path;
};

int cmd_imprint(const ImprintArgs& a) {
    json config{{"m", a.m},
                {"base", a.base},
                {"radius", a.radius},
                {"n", a.n},
                {"crossing_level", a.crossing_level < 0 ? a.m - 2.0 : a.crossing_level},
                {"winding", a.winding},
                {"I", a.template_I},
                {"seed", a.seed},
                {"out", a.out_path}};

    if (a.winding) {
        if (a.template_I.empty()) {
            std::cerr << "winding needs --I (the equal-angle template)\n";
            return exit_bad_config;
        }
        auto listed = parse_indices(a.template_I);
        std::vector<int> tmpl;
        for (int i : listed) tmpl.push_back(i - 1);
        std::sort(tmpl.begin(), tmpl.end());
        if (static_cast<int>(tmpl.size()) != a.m - 2) {
            std::cerr << "template must list m-2 equal angles\n";
            return exit_bad_config;
        }
        std::vector<char> in_t(a.m, 0);
        for (int i : tmpl) in_t[i] = 1;
        std::vector<int> saddle;
        for (int i = 0; i < a.m; ++i)
            if (!in_t[i]) saddle.push_back(i);
        auto circle =
            normal_circle_polyline(saddle, a.m, std::min(a.radius, 0.01), std::max(a.n, 64));
        json summary = base_summary("imprint", config);
        try {
            summary["winding"] = winding_number(circle, tmpl);
        } catch (const WindingUndefined& e) {
            std::cerr << e.what() << "\n";
            return exit_bad_config;
        }
        summary["saddle_subset"] = subset_string(saddle);
        emit(summary);
        return exit_ok;
    }

    // resolve the base point
    PhasePoint base{Vec::Zero(2)};
    if (a.base == "roots-of-unity") {
        Vec v(a.m);
        for (int k = 0; k < a.m; ++k) v[k] = two_pi * k / a.m;
        base = PhasePoint(std::move(v));
    } else if (a.base == "singular") {
        if (a.m % 2 != 0) {
            std::cerr << "singular base needs even m\n";
            return exit_bad_config;
        }
        std::vector<int> half;
        for (int i = 0; i < a.m / 2; ++i) half.push_back(i);
        base = exemplar(half, a.m);
    } else if (a.base == "random") {
        // a random maximum-set point via a random cell realization
        ChainComplex cc = enumerate_cells(a.m);
        std::mt19937_64 rng(a.seed);
        const auto& tops = cc.cells[static_cast<std::size_t>(cc.max_dim())];
        base = realize_cell(tops[rng() % tops.size()]);
    } else {
        auto v = parse_reals(a.base);
        if (static_cast<int>(v.size()) != a.m) {
            std::cerr << "base must be 'roots-of-unity', 'singular', 'random' or m angles\n";
            return exit_bad_config;
        }
        base = PhasePoint(Eigen::Map<Vec>(v.data(), a.m));
        if (!vmax_membership(base, 1e-8)) {
            std::cerr << "base point is not on the maximum set\n";
            return exit_bad_config;
        }
    }

    const double level = a.crossing_level < 0 ? a.m - 2.0 : a.crossing_level;
    try {
        auto res = normal_circle_experiment(base, a.radius, a.n, level);
        std::ostringstream csv;
        csv << csv_header(config);
        csv.precision(17);
        csv << "phi,t_cross";
        for (int i = 0; i < a.m; ++i) csv << ",theta" << i + 1;
        for (int i = 0; i < a.m; ++i) csv << ",dist_saddle" << i + 1;
        csv << ",backward_dist\n";
        for (const auto& row : res.rows) {
            csv << row.phi << "," << row.t_cross;
            for (int i = 0; i < a.m; ++i) csv << "," << row.crossing[i];
            for (int i = 0; i < a.m; ++i) csv << "," << row.saddle_distance[i];
            csv << "," << row.backward_dist << "\n";
        }
        if (!a.out_path.empty()) write_file(a.out_path, csv.str());

        json summary = base_summary("imprint", config);
        summary["rows"] = res.rows.size();
        double worst_backward = 0.0;
        for (const auto& row : res.rows)
            worst_backward = std::max(worst_backward, row.backward_dist);
        summary["max_backward_dist"] = worst_backward;
        emit(summary);
        return exit_ok;
    } catch (const DegenerateFrameError& e) {
        std::cerr << e.what() << "\n";
        return exit_degenerate_frame;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric toolkit for the all-to-all identical-oscillator flow"};
    app.set_config("--config");
    app.require_subcommand(1);

    auto* eq = app.add_subcommand("equilibria", "fixed-point census with eigenstructure");
    int eq_m = 5;
    std::string eq_out, eq_format = "csv";
    eq->add_option("--m", eq_m, "number of oscillators");
    eq->add_option("--out", eq_out, "output file");
    eq->add_option("--format", eq_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* sim = app.add_subcommand("simulate", "integrate an orbit");
    SimulateArgs sa;
    sim->add_option("--m", sa.m, "number of oscillators");
    sim->add_option("--start", sa.start, "comma-separated start angles");
    sim->add_flag("--random", sa.random, "random start (uses --seed)");
    sim->add_option("--start-equilibrium", sa.start_equilibrium,
                    "1-based subset of the starting saddle");
    sim->add_option("--offset-unstable", sa.offset_unstable,
                    "trace the saddle connection with this offset");
    sim->add_option("--offset-stable", sa.offset_stable, "random stable-direction offset");
    sim->add_option("--omega", sa.omega, "natural frequencies (generalized model)");
    sim->add_option("--coupling-jitter", sa.coupling_jitter,
                    "uniform coupling perturbation amplitude");
    sim->add_option("--tmax", sa.tmax, "integration horizon");
    sim->add_option("--seed", sa.seed, "RNG seed");
    sim->add_option("--out", sa.out_path, "trace CSV path");

    auto* ce = app.add_subcommand("cells", "cell complex and homology");
    int ce_m = 5;
    std::string ce_out, ce_complex;
    ce->add_option("--m", ce_m, "number of oscillators (3..9)");
    ce->add_option("--out", ce_out, "Betti CSV path");
    ce->add_option("--out-complex", ce_complex, "complex JSON path");

    auto* im = app.add_subcommand("imprint", "normal-circle experiments and winding");
    ImprintArgs ia;
    im->add_option("--m", ia.m, "number of oscillators");
    im->add_option("--base", ia.base, "roots-of-unity | singular | random | angles");
    im->add_option("--radius", ia.radius, "normal circle radius");
    im->add_option("--n", ia.n, "samples on the circle");
    im->add_option("--crossing-level", ia.crossing_level,
                   "potential crossing level (default m-2)");
    im->add_flag("--winding", ia.winding, "compute the winding number instead");
    im->add_option("--I", ia.template_I, "1-based equal-angle template for --winding");
    im->add_option("--seed", ia.seed, "RNG seed");
    im->add_option("--out", ia.out_path, "experiment CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eq->parsed()) {
            if (eq_m < 2) {
                std::cerr << "m must be >= 2\n";
                return exit_bad_config;
            }
            return cmd_equilibria(eq_m, eq_out, eq_format);
        }
        if (sim->parsed()) {
            if (sa.m < 2) {
                std::cerr << "m must be >= 2\n";
                return exit_bad_config;
            }
            return cmd_simulate(sa);
        }
        if (ce->parsed()) return cmd_cells(ce_m, ce_out, ce_complex);
        if (im->parsed()) {
            if (ia.m < 2) {
                std::cerr << "m must be >= 2\n";
                return exit_bad_config;
            }
            return cmd_imprint(ia);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return exit_bad_config;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return exit_integration;
    }
    return exit_bad_config;
}
