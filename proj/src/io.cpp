#include "youngflow/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "youngflow/models.hpp"

namespace youngflow {

using nlohmann::json;

std::string format_full(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round-trip
    return std::string(buf, res.ptr);
}

void write_paths_csv(const std::string& file, const std::vector<SamplePath>& paths) {
    if (paths.empty()) throw std::invalid_argument("write_paths_csv: no paths");
    for (const SamplePath& p : paths) {
        if (p.dim() != 1) throw ShapeError("write_paths_csv: scalar paths only");
        if (!p.same_grid(paths.front()) || p.size() != paths.front().size() ||
            p.t0() != paths.front().t0())
            throw ShapeError("write_paths_csv: paths must share the grid");
    }
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot open " + file + " for writing");
    out << "t";
    for (std::size_t k = 0; k < paths.size(); ++k) out << ",path_" << k;
    out << "\n";
    const SamplePath& head = paths.front();
    for (std::size_t i = 0; i < head.size(); ++i) {
        out << format_full(head.time(i));
        for (const SamplePath& p : paths) out << "," << format_full(p.value(i));
        out << "\n";
    }
}

void write_trajectory_csv(const std::string& file, const SamplePath& traj) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot open " + file + " for writing");
    out << "t";
    for (std::size_t c = 0; c < traj.dim(); ++c) out << ",x_" << c;
    out << "\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out << format_full(traj.time(i));
        for (std::size_t c = 0; c < traj.dim(); ++c) out << "," << format_full(traj.component(i, c));
        out << "\n";
    }
}

std::vector<SamplePath> read_paths_csv(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(file + ": empty csv");
    std::size_t cols = 1;
    for (char ch : line) cols += (ch == ',');
    if (cols < 2) throw std::runtime_error(file + ": expected t plus at least one path column");

    std::vector<double> times;
    std::vector<std::vector<double>> series(cols - 1);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(row, cell, ',')) {
            const double v = std::stod(cell);
            if (c == 0)
                times.push_back(v);
            else if (c - 1 < series.size())
                series[c - 1].push_back(v);
            ++c;
        }
        if (c != cols) throw std::runtime_error(file + ": ragged csv row");
    }
    if (times.size() < 2) throw std::runtime_error(file + ": need at least two rows");
    const double dt = times[1] - times[0];
    std::vector<SamplePath> out;
    out.reserve(series.size());
    for (auto& s : series) out.push_back(SamplePath::scalar(times[0], dt, std::move(s)));
    return out;
}

namespace {

Eigen::MatrixXd matrix_from_json(const json& j, int d, const std::string& what) {
    if (!j.is_array()) throw std::runtime_error("model json: " + what + " must be an array");
    Eigen::MatrixXd m(d, d);
    if (j.size() == static_cast<std::size_t>(d * d) && (j.empty() || !j[0].is_array())) {
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) m(r, c) = j[static_cast<std::size_t>(r * d + c)].get<double>();
        return m;
    }
    if (j.size() == static_cast<std::size_t>(d)) {  // nested rows
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                m(r, c) = j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].get<double>();
        return m;
    }
    throw std::runtime_error("model json: " + what + " has the wrong shape");
}

}  // namespace

ModelFile read_model_json(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file);
    json j;
    in >> j;

    ModelFile model;
    model.name = j.value("name", std::string("model"));
    const std::string kind = j.value("nonlinearity", std::string("none"));

    if (kind == "sir" || kind == "sir-transformed") {
        const json& params = j.at("params");
        SirParams sp;
        sp.q = params.value("q", 0.0);
        sp.a = params.value("a", 0.0);
        sp.b = params.value("b", 0.0);
        sp.c = params.value("c", 0.0);
        sp.gamma = params.value("gamma", 0.0);
        sp.sigma1 = params.value("sigma1", 0.0);
        sp.sigma2 = params.value("sigma2", 0.0);
        sp.sigma3 = params.value("sigma3", 0.0);
        SirSystem sys = sir_build(sp);
        model.coeffs = (kind == "sir") ? sys.original : sys.transformed;
        model.h_A = model.coeffs.dissipativity.constant_value();
        model.c_f = model.coeffs.lipschitz.constant_value();
        return model;
    }

    const int d = j.at("d").get<int>();
    const Eigen::MatrixXd A = matrix_from_json(j.at("A"), d, "A");
    const Eigen::MatrixXd C = j.contains("C") ? matrix_from_json(j.at("C"), d, "C")
                                              : Eigen::MatrixXd::Zero(d, d).eval();

    std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> F;
    double lipschitz = j.value("f", 0.0);
    if (kind == "custom-affine") {
        const json& params = j.at("params");
        const Eigen::MatrixXd G = matrix_from_json(params.at("G"), d, "params.G");
        Eigen::VectorXd g0 = Eigen::VectorXd::Zero(d);
        if (params.contains("g0")) {
            for (int i = 0; i < d; ++i) g0(i) = params.at("g0")[static_cast<std::size_t>(i)].get<double>();
        }
        F = [G, g0](double, const Eigen::VectorXd& x) { return (G * x + g0).eval(); };
        if (!j.contains("f")) lipschitz = spectral_norm(G);
    } else if (kind != "none") {
        throw std::runtime_error("model json: unknown nonlinearity '" + kind + "'");
    }

    model.h_A = j.value("h", 0.0);
    model.coeffs = make_autonomous(A, C, F, lipschitz, model.h_A, kind);
    model.c_f = lipschitz;
    return model;
}

void write_model_json(const std::string& file, const ModelFile& model) {
    if (!model.coeffs.drift.is_constant() || !model.coeffs.diffusion.is_constant())
        throw std::runtime_error("write_model_json: constant-coefficient models only");
    json j;
    j["name"] = model.name;
    j["d"] = model.coeffs.dim;
    const Eigen::MatrixXd& A = model.coeffs.drift.constant_value();
    const Eigen::MatrixXd& C = model.coeffs.diffusion.constant_value();
    std::vector<double> a_flat, c_flat;
    for (int r = 0; r < model.coeffs.dim; ++r)
        for (int c = 0; c < model.coeffs.dim; ++c) {
            a_flat.push_back(A(r, c));
            c_flat.push_back(C(r, c));
        }
    j["A"] = a_flat;
    j["C"] = c_flat;
    j["nonlinearity"] = model.coeffs.nonlinearity_name;
    j["h"] = model.h_A;
    j["f"] = model.c_f;
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot open " + file + " for writing");
    out << j.dump(2) << "\n";
}

std::string stability_report_json(const StabilityReport& r) {
    json j;
    j["p"] = r.p;
    j["q"] = r.q;
    j["m_blocks"] = r.m_blocks;
    j["h0"] = r.h0;
    j["a_hat"] = r.a_hat;
    j["c_hat"] = r.c_hat;
    j["gamma2"] = r.gamma2;
    j["gamma4"] = r.gamma4;
    j["gamma2p2"] = r.gamma2p2;
    j["K"] = r.K;
    j["g_hat"] = r.g_hat;
    j["criterion_lhs"] = r.criterion_lhs;
    j["criterion_rhs"] = r.criterion_rhs;
    j["verdict"] = r.verdict;
    if (std::isfinite(r.lyapunov_estimate)) j["lyapunov_estimate"] = r.lyapunov_estimate;
    auto diag = [](const CesaroDiagnostics& d) {
        return json{{"value", d.value}, {"last_quarter", d.last_quarter}, {"drift", d.drift}};
    };
    j["diagnostics"] = {{"a_hat", diag(r.a_hat_diag)},
                        {"c_hat", diag(r.c_hat_diag)},
                        {"gamma2", diag(r.gamma2_diag)},
                        {"gamma4", diag(r.gamma4_diag)},
                        {"gamma2p2", diag(r.gamma2p2_diag)}};
    return j.dump(2);
}

std::string attractor_report_json(const AttractorReport& r) {
    json j;
    j["h"] = r.h;
    j["delta"] = r.delta;
    j["b_partial"] = r.b_partial;
    j["xi_partial"] = r.xi_partial;
    json dists = json::array();
    for (const auto& [t, d] : r.pullback_distances) dists.push_back({{"t", t}, {"distance", d}});
    j["pullback_distances"] = dists;
    j["decay_slope"] = r.decay_slope;
    j["criterion_ok"] = r.criterion_ok;
    j["b_truncated_at"] = r.b_truncated_at;
    if (std::isfinite(r.absorbing_time)) j["absorbing_time"] = r.absorbing_time;
    return j.dump(2);
}

std::uint64_t fnv1a_file(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + file);
    std::uint64_t hash = 1469598103934665603ULL;
    char ch;
    while (in.get(ch)) {
        hash ^= static_cast<unsigned char>(ch);
        hash *= 1099511628211ULL;
    }
    return hash;
}

}  // namespace youngflow
