#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "youngflow/attractor.hpp"
#include "youngflow/fbm.hpp"
#include "youngflow/io.hpp"
#include "youngflow/models.hpp"
#include "youngflow/parallel.hpp"
#include "youngflow/rng.hpp"
#include "youngflow/solver.hpp"
#include "youngflow/stability.hpp"
#include "youngflow/variation.hpp"
#include "youngflow/young.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace youngflow;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    std::string out_dir;
};

std::string resolve_out(const GlobalOpts& g, const std::string& path) {
    if (g.out_dir.empty() || fs::path(path).is_absolute()) return path;
    fs::create_directories(g.out_dir);
    return (fs::path(g.out_dir) / path).string();
}

Eigen::VectorXd parse_vector(const std::string& csv) {
    std::vector<double> vals;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
    return v;
}

std::vector<double> parse_times(const std::string& csv) {
    std::vector<double> vals;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    return vals;
}

double default_p(double hurst) { return 1.0 / ((hurst + 0.5) / 2.0); }

int cmd_fbm(const GlobalOpts& g, double hurst, double horizon, unsigned steps, std::uint64_t seed,
            int count, const std::string& out) {
    if (count < 1) throw std::invalid_argument("fbm: --count must be >= 1 (empty ensembles are not writable)");
    if (g.seed_set) seed = g.seed;
    std::vector<SamplePath> paths(static_cast<std::size_t>(count));
    parallel_for(static_cast<std::size_t>(count), g.threads, [&](std::size_t k) {
        FbmSpec spec{hurst, horizon, steps, derive_seed(seed, k)};
        paths[k] = generate_fbm(spec);
    });
    write_paths_csv(resolve_out(g, out), paths);
    return 0;
}

int cmd_pvar(const GlobalOpts& g, const std::string& in, double p, double from, double to, int col,
             const std::string& json_out) {
    const std::vector<SamplePath> paths = read_paths_csv(in);
    if (col < 0 || static_cast<std::size_t>(col) >= paths.size())
        throw std::invalid_argument("pvar: --col out of range");
    const auto start = std::chrono::steady_clock::now();
    const VariationResult res = pvar_seminorm(paths[static_cast<std::size_t>(col)], p, from, to);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    json j;
    j["p"] = res.p;
    j["from"] = res.from;
    j["to"] = res.to;
    j["value"] = res.value;
    j["argmax_indices"] = res.argmax_partition;
    j["wall_time_ms"] = ms;
    const std::string text = j.dump(2);
    std::cout << text << "\n";
    if (!json_out.empty()) {
        std::ofstream f(resolve_out(g, json_out));
        f << text << "\n";
    }
    return 0;
}

int cmd_young(const std::string& x_file, const std::string& omega_file, double from, double to,
              int x_col, int omega_col, bool certify, double p, double q) {
    const std::vector<SamplePath> xs = read_paths_csv(x_file);
    const std::vector<SamplePath> omegas = read_paths_csv(omega_file);
    if (x_col < 0 || static_cast<std::size_t>(x_col) >= xs.size())
        throw std::invalid_argument("young: --x-col out of range");
    if (omega_col < 0 || static_cast<std::size_t>(omega_col) >= omegas.size())
        throw std::invalid_argument("young: --omega-col out of range");
    const SamplePath& x = xs[static_cast<std::size_t>(x_col)];
    const SamplePath& omega = omegas[static_cast<std::size_t>(omega_col)];

    json j;
    j["value"] = young_integral(x, omega, from, to)(0);
    if (certify) {
        const YoungLoeveCertificate cert = young_loeve_certify(x, omega, from, to, p, q);
        j["certificate"] = {{"lhs", cert.lhs}, {"rhs", cert.rhs}, {"K", cert.K},
                            {"p", cert.p},     {"q", cert.q},     {"holds", cert.holds}};
        std::cout << j.dump(2) << "\n";
        return cert.holds ? 0 : 2;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_solve(const GlobalOpts& g, const std::string& model_file, const std::string& omega_file,
              const std::string& x0_csv, double from, double to, int substeps, int col,
              const std::string& out) {
    const ModelFile model = read_model_json(model_file);
    const std::vector<SamplePath> omegas = read_paths_csv(omega_file);
    if (col < 0 || static_cast<std::size_t>(col) >= omegas.size())
        throw std::invalid_argument("solve: --col out of range");
    const Eigen::VectorXd x0 = parse_vector(x0_csv);
    const SamplePath traj =
        solve_young_sde(model.coeffs, omegas[static_cast<std::size_t>(col)], x0, from, to, substeps);
    write_trajectory_csv(resolve_out(g, out), traj);
    return 0;
}

int cmd_stability(const GlobalOpts& g, const std::string& model_file, const std::string& omega_file,
                  int m, double p, double q, int col, const std::string& x0_csv,
                  const std::string& json_out) {
    const ModelFile model = read_model_json(model_file);
    const std::vector<SamplePath> omegas = read_paths_csv(omega_file);
    if (col < 0 || static_cast<std::size_t>(col) >= omegas.size())
        throw std::invalid_argument("stability: --col out of range");
    const SamplePath& omega = omegas[static_cast<std::size_t>(col)];
    if (q <= 0.0) q = p;

    StabilityReport rep = criterion_report(model.coeffs, omega, m, p, q);
    if (!x0_csv.empty()) {
        const SamplePath traj =
            solve_young_sde(model.coeffs, omega, parse_vector(x0_csv), 0.0, static_cast<double>(m));
        rep.lyapunov_estimate = lyapunov_estimate(traj, 0.5);
    }
    const std::string text = stability_report_json(rep);
    std::cout << text << "\n";
    if (!json_out.empty()) {
        std::ofstream f(resolve_out(g, json_out));
        f << text << "\n";
    }
    return 0;
}

int cmd_attractor(const GlobalOpts& g, const std::string& model_file, const std::string& omega_file,
                  const std::string& times_csv, const std::string& x0_grid, int col, double delta,
                  double hurst, double p, int q0, const std::string& json_out) {
    const ModelFile model = read_model_json(model_file);
    const std::vector<SamplePath> omegas = read_paths_csv(omega_file);
    if (col < 0 || static_cast<std::size_t>(col) >= omegas.size())
        throw std::invalid_argument("attractor: --col out of range");

    PullbackOptions opts;
    opts.delta = delta;
    opts.hurst = hurst;
    opts.p = p;
    opts.q0 = q0;
    const AttractorReport rep =
        pullback_experiment(model.coeffs, omegas[static_cast<std::size_t>(col)],
                            parse_x0_grid(x0_grid, model.coeffs.dim), parse_times(times_csv), opts);
    const std::string text = attractor_report_json(rep);
    std::cout << text << "\n";
    if (!json_out.empty()) {
        std::ofstream f(resolve_out(g, json_out));
        f << text << "\n";
    }
    return 0;
}

int cmd_sir(const GlobalOpts& g, const SirParams& params) {
    const SirSystem sys = sir_build(params);
    const double cf_original = std::sqrt(3.0) * params.gamma;
    const double cf_transformed = 4.0 * std::sqrt(3.0) * params.gamma;

    // model files carry the registry name + parameter block so they re-build F
    auto write_sir_model = [&](const std::string& file, const std::string& kind, double cf) {
        json j;
        j["name"] = kind;
        j["nonlinearity"] = kind;
        j["params"] = {{"q", params.q},           {"a", params.a},         {"b", params.b},
                       {"c", params.c},           {"gamma", params.gamma}, {"sigma1", params.sigma1},
                       {"sigma2", params.sigma2}, {"sigma3", params.sigma3}};
        j["h"] = params.a;
        j["f"] = cf;
        std::ofstream out(resolve_out(g, file));
        out << j.dump(2) << "\n";
    };
    write_sir_model("sir_original.json", "sir", cf_original);
    write_sir_model("sir_transformed.json", "sir-transformed", cf_transformed);

    json j;
    auto dump_matrix = [](const Eigen::Matrix3d& m) {
        std::vector<double> flat;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) flat.push_back(m(r, c));
        return flat;
    };
    j["A"] = dump_matrix(sys.A);
    j["D"] = dump_matrix(sys.D);
    j["P"] = dump_matrix(sys.P);
    j["Pinv"] = dump_matrix(sys.Pinv);
    j["C"] = dump_matrix(sys.C);
    j["C_transformed"] = dump_matrix(sys.C_transformed);
    j["reconstruction_error"] = ((sys.P * sys.D * sys.Pinv) - sys.A).cwiseAbs().maxCoeff();
    j["lipschitz_original"] = cf_original;
    j["lipschitz_transformed"] = cf_transformed;
    std::ofstream out(resolve_out(g, "sir_transform.json"));
    out << j.dump(2) << "\n";
    std::cout << j.dump(2) << "\n";
    return 0;
}

// End-to-end experiment: ensemble generation, stability and attractor reports,
// inequality certifications, manifest. Exit 2 when any certification fails.
int cmd_suite(GlobalOpts g, const std::string& config_file) {
    std::ifstream in(config_file);
    if (!in) throw std::runtime_error("cannot open " + config_file);
    json cfg;
    in >> cfg;

    const std::string model_path = cfg.at("model").get<std::string>();
    const json fbm_cfg = cfg.at("fbm");
    const double hurst = fbm_cfg.value("hurst", 0.7);
    const double horizon = fbm_cfg.value("horizon", 8.0);
    const unsigned steps = fbm_cfg.value("steps_per_unit", 128u);
    const int count = cfg.value("ensemble", 1);
    std::uint64_t seed = cfg.value("base_seed", 1ull);
    if (g.seed_set) seed = g.seed;
    if (count < 1) throw std::invalid_argument("suite: ensemble count must be >= 1");

    const json analysis = cfg.value("analysis", json::object());
    const double p = analysis.value("p", default_p(hurst));
    const double q = analysis.value("q", p);
    const double delta = analysis.value("delta", 0.1);
    const int m = analysis.value("m", static_cast<int>(horizon));
    const int q0 = analysis.value("q0", 0);
    const std::vector<double> times = analysis.value("times", std::vector<double>{});
    const std::string x0_grid = analysis.value("x0_grid", std::string("cube:1:2"));

    if (g.out_dir.empty()) g.out_dir = cfg.value("out_dir", std::string("."));
    fs::create_directories(g.out_dir);

    const ModelFile model = read_model_json(model_path);

    std::vector<SamplePath> paths(static_cast<std::size_t>(count));
    parallel_for(static_cast<std::size_t>(count), g.threads, [&](std::size_t k) {
        FbmSpec spec{hurst, horizon, steps, derive_seed(seed, k)};
        paths[k] = generate_fbm(spec);
    });
    const std::string paths_file = resolve_out(g, "paths.csv");
    write_paths_csv(paths_file, paths);

    StabilityReport stab = criterion_report(model.coeffs, paths[0], m, p, q);
    const Eigen::VectorXd x0 = Eigen::VectorXd::Ones(model.coeffs.dim);
    const SamplePath traj = solve_young_sde(model.coeffs, paths[0], x0, 0.0, static_cast<double>(m));
    stab.lyapunov_estimate = lyapunov_estimate(traj, 0.5);
    const std::string traj_file = resolve_out(g, "trajectory.csv");
    write_trajectory_csv(traj_file, traj);
    const std::string stab_file = resolve_out(g, "stability.json");
    {
        std::ofstream f(stab_file);
        f << stability_report_json(stab) << "\n";
    }

    // inequality certifications over the ensemble head
    std::size_t violations = 0;
    const std::size_t certify_paths = std::min<std::size_t>(paths.size(), 8);
    Rng pick(derive_seed(seed, 0xCEF));
    for (std::size_t k = 0; k < certify_paths; ++k) {
        const SamplePath& w = paths[k];
        const std::size_t ia = w.index_of(0.0);
        const std::size_t ib = w.index_of(1.0);
        for (int trial = 0; trial < 8; ++trial) {
            std::size_t s = ia + static_cast<std::size_t>(pick.uniform() * (ib - ia - 1));
            std::size_t t = s + 1 + static_cast<std::size_t>(pick.uniform() * (ib - s - 1));
            const YoungLoeveCertificate cert = young_loeve_certify(w, w, w.time(s), w.time(t), p, q);
            if (!cert.holds) ++violations;
        }
        if (!model.coeffs.has_nonlinearity())
            violations += phi_bound_check(model.coeffs, w, model.h_A, delta, p, q).size();
    }

    std::string attractor_file;
    if (!times.empty()) {
        PullbackOptions opts;
        opts.delta = delta;
        opts.hurst = hurst;
        opts.p = p;
        opts.q0 = q0;
        const AttractorReport rep = pullback_experiment(
            model.coeffs, paths[0], parse_x0_grid(x0_grid, model.coeffs.dim), times, opts);
        attractor_file = resolve_out(g, "attractor.json");
        std::ofstream f(attractor_file);
        f << attractor_report_json(rep) << "\n";
    }

    json manifest;
    manifest["tool"] = "youngflow";
    manifest["version"] = "0.1.0";
    manifest["base_seed"] = seed;
    manifest["config"] = cfg;
    manifest["violations"] = violations;
    json outputs;
    outputs["paths.csv"] = fnv1a_file(paths_file);
    outputs["trajectory.csv"] = fnv1a_file(traj_file);
    outputs["stability.json"] = fnv1a_file(stab_file);
    if (!attractor_file.empty()) outputs["attractor.json"] = fnv1a_file(attractor_file);
    manifest["outputs"] = outputs;
    {
        std::ofstream f(resolve_out(g, "manifest.json"));
        f << manifest.dump(2) << "\n";
    }
    if (violations > 0) {
        std::cerr << "suite: " << violations << " certification violation(s) found\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"youngflow: pathwise toolkit for Young SDEs driven by fractional Brownian motion"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "override the base seed of any subcommand")
        ->each([&](const std::string&) { g.seed_set = true; });
    app.add_option("--threads", g.threads, "worker threads (YOUNGFLOW_THREADS respected, flag wins)");
    app.add_option("--out-dir", g.out_dir, "directory for relative output paths");

    double hurst = 0.7, horizon = 1.0;
    unsigned steps = 256;
    std::uint64_t seed = 1;
    int count = 1;
    std::string out = "paths.csv";
    CLI::App* fbm = app.add_subcommand("fbm", "generate two-sided fBm sample paths");
    fbm->add_option("--hurst", hurst, "Hurst exponent in [0.5, 1)")->required();
    fbm->add_option("--horizon", horizon, "path lives on [-horizon, horizon]");
    fbm->add_option("--steps-per-unit", steps, "grid resolution");
    fbm->add_option("--seed", seed, "base seed");
    fbm->add_option("--count", count, "ensemble size");
    fbm->add_option("--out", out, "output CSV");

    std::string pvar_in;
    double pvar_p = 1.25, pvar_from = 0.0, pvar_to = 1.0;
    int pvar_col = 0;
    std::string pvar_json;
    CLI::App* pvar = app.add_subcommand("pvar", "p-variation seminorm of a sampled path");
    pvar->add_option("--in", pvar_in, "input CSV")->required();
    pvar->add_option("--p", pvar_p, "variation exponent >= 1")->required();
    pvar->add_option("--from", pvar_from, "interval start (grid time)");
    pvar->add_option("--to", pvar_to, "interval end (grid time)");
    pvar->add_option("--col", pvar_col, "path column");
    pvar->add_option("--json", pvar_json, "also write the JSON report here (bare flag: stdout only)")->expected(0, 1);

    std::string y_x, y_omega;
    double y_from = 0.0, y_to = 1.0, y_p = 0.0, y_q = 0.0;
    int y_xcol = 0, y_ocol = 0;
    bool y_certify = false;
    CLI::App* young = app.add_subcommand("young", "left-point Young integral, optional certification");
    young->add_option("--x", y_x, "integrand CSV")->required();
    young->add_option("--omega", y_omega, "driver CSV")->required();
    young->add_option("--from", y_from)->required();
    young->add_option("--to", y_to)->required();
    young->add_option("--x-col", y_xcol, "integrand column");
    young->add_option("--omega-col", y_ocol, "driver column");
    young->add_flag("--certify", y_certify, "emit the Young-Loeve certificate");
    young->add_option("--p", y_p, "driver variation exponent");
    young->add_option("--q", y_q, "integrand variation exponent");

    std::string s_model, s_omega, s_x0 = "1", s_out = "traj.csv";
    double s_from = 0.0, s_to = 1.0;
    int s_substeps = 1, s_col = 0;
    CLI::App* solve = app.add_subcommand("solve", "integrate the Young SDE along a driver path");
    solve->add_option("--model", s_model, "model JSON")->required();
    solve->add_option("--omega", s_omega, "driver CSV")->required();
    solve->add_option("--x0", s_x0, "initial state, comma separated")->required();
    solve->add_option("--from", s_from)->required();
    solve->add_option("--to", s_to)->required();
    solve->add_option("--substeps", s_substeps, "driver refinement per grid step");
    solve->add_option("--col", s_col, "driver column");
    solve->add_option("--out", s_out, "trajectory CSV");

    std::string st_model, st_omega, st_json, st_x0;
    int st_m = 8, st_col = 0;
    double st_p = 0.0, st_q = 0.0;
    CLI::App* stability = app.add_subcommand("stability", "criterion report over unit blocks");
    stability->add_option("--model", st_model)->required();
    stability->add_option("--omega", st_omega)->required();
    stability->add_option("--m", st_m, "number of unit blocks")->required();
    stability->add_option("--p", st_p, "driver variation exponent")->required();
    stability->add_option("--q", st_q, "coefficient variation exponent (default p)");
    stability->add_option("--col", st_col, "driver column");
    stability->add_option("--x0", st_x0, "optional initial state; adds an empirical Lyapunov slope");
    stability->add_option("--json", st_json, "write the report here (bare flag: stdout only)")->expected(0, 1);

    std::string a_model, a_omega, a_times = "1,2,5,10,20", a_grid = "cube:2:8", a_json;
    int a_col = 0, a_q0 = 0;
    double a_delta = 0.1, a_hurst = 0.7, a_p = 0.0;
    CLI::App* attractor = app.add_subcommand("attractor", "pullback experiment and absorbing radius");
    attractor->add_option("--model", a_model)->required();
    attractor->add_option("--omega", a_omega)->required();
    attractor->add_option("--times", a_times, "pullback times, comma separated");
    attractor->add_option("--x0-grid", a_grid, "initial set descriptor, e.g. cube:2:8");
    attractor->add_option("--col", a_col, "driver column");
    attractor->add_option("--delta", a_delta);
    attractor->add_option("--hurst", a_hurst, "driver Hurst exponent (for the beta floor)");
    attractor->add_option("--p", a_p, "variation exponent (default from hurst)");
    attractor->add_option("--q0", a_q0, "moment order (default: the floor)");
    attractor->add_option("--json", a_json, "write the report here (bare flag: stdout only)")->expected(0, 1);

    SirParams sir_params;
    CLI::App* sir = app.add_subcommand("sir", "emit both SIR coordinate systems and the transform");
    sir->add_option("--q", sir_params.q)->required();
    sir->add_option("--a", sir_params.a)->required();
    sir->add_option("--b", sir_params.b)->required();
    sir->add_option("--c", sir_params.c)->required();
    sir->add_option("--gamma", sir_params.gamma)->required();
    sir->add_option("--sigma1", sir_params.sigma1);
    sir->add_option("--sigma2", sir_params.sigma2);
    sir->add_option("--sigma3", sir_params.sigma3);

    std::string suite_config;
    CLI::App* suite = app.add_subcommand("suite", "end-to-end experiment from a config file");
    suite->add_option("--config", suite_config, "experiment config JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (fbm->parsed()) return cmd_fbm(g, hurst, horizon, steps, seed, count, out);
        if (pvar->parsed()) return cmd_pvar(g, pvar_in, pvar_p, pvar_from, pvar_to, pvar_col, pvar_json);
        if (young->parsed())
            return cmd_young(y_x, y_omega, y_from, y_to, y_xcol, y_ocol, y_certify, y_p, y_q);
        if (solve->parsed())
            return cmd_solve(g, s_model, s_omega, s_x0, s_from, s_to, s_substeps, s_col, s_out);
        if (stability->parsed())
            return cmd_stability(g, st_model, st_omega, st_m, st_p, st_q, st_col, st_x0, st_json);
        if (attractor->parsed())
            return cmd_attractor(g, a_model, a_omega, a_times, a_grid, a_col, a_delta, a_hurst, a_p,
                                 a_q0, a_json);
        if (sir->parsed()) return cmd_sir(g, sir_params);
        if (suite->parsed()) return cmd_suite(g, suite_config);
    } catch (const std::exception& e) {
        std::cerr << "youngflow: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
