#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "youngflow/attractor.hpp"
#include "youngflow/fbm.hpp"
#include "youngflow/models.hpp"
#include "youngflow/rng.hpp"
#include "youngflow/solver.hpp"
#include "youngflow/stability.hpp"
#include "youngflow/variation.hpp"
#include "youngflow/young.hpp"

namespace py = pybind11;
using namespace youngflow;

namespace {

py::array_t<double> path_array(const SamplePath& path) {
    py::array_t<double> out({path.size(), path.dim()});
    auto buf = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < path.size(); ++i)
        for (std::size_t c = 0; c < path.dim(); ++c) buf(i, c) = path.component(i, c);
    return out;
}

py::array_t<double> path_times(const SamplePath& path) {
    py::array_t<double> out(path.size());
    auto buf = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < path.size(); ++i) buf(i) = path.time(i);
    return out;
}

SamplePath path_from_array(double t0, double dt, py::array_t<double, py::array::c_style | py::array::forcecast> values) {
    if (values.ndim() == 1) {
        std::vector<double> data(values.data(), values.data() + values.shape(0));
        return SamplePath::scalar(t0, dt, std::move(data));
    }
    if (values.ndim() == 2) {
        const auto n = static_cast<std::size_t>(values.shape(0));
        const auto d = static_cast<std::size_t>(values.shape(1));
        std::vector<double> data(values.data(), values.data() + n * d);
        return SamplePath(t0, dt, d, std::move(data));
    }
    throw py::value_error("values must be a 1-d or 2-d array");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pathwise Young-SDE toolkit: fBm sampling, p-variation, Young integration, "
              "stability criteria, and random-attractor experiments.";

    py::register_exception<OffGridError>(m, "OffGridError", PyExc_IndexError);
    py::register_exception<ShapeError>(m, "PathShapeError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);
    py::register_exception<NearZeroError>(m, "NearZeroError", PyExc_ArithmeticError);

    py::class_<SamplePath>(m, "SamplePath")
        .def(py::init(&path_from_array), py::arg("t0"), py::arg("dt"), py::arg("values"))
        .def_property_readonly("t0", &SamplePath::t0)
        .def_property_readonly("dt", &SamplePath::dt)
        .def_property_readonly("dim", &SamplePath::dim)
        .def("__len__", &SamplePath::size)
        .def("time", &SamplePath::time, py::arg("i"))
        .def("times", &path_times)
        .def("values", &path_array, "grid values as an (n, dim) array")
        .def("index_of", &SamplePath::index_of, py::arg("t"))
        .def("segment", &SamplePath::segment, py::arg("i0"), py::arg("i1"));

    py::class_<FbmSpec>(m, "FbmSpec")
        .def(py::init([](double hurst, double horizon, std::uint32_t steps_per_unit, std::uint64_t seed) {
                 FbmSpec spec{hurst, horizon, steps_per_unit, seed};
                 spec.validate();
                 return spec;
             }),
             py::arg("hurst"), py::arg("horizon") = 1.0, py::arg("steps_per_unit") = 256,
             py::arg("seed") = 0)
        .def_readwrite("hurst", &FbmSpec::hurst)
        .def_readwrite("horizon", &FbmSpec::horizon)
        .def_readwrite("steps_per_unit", &FbmSpec::steps_per_unit)
        .def_readwrite("seed", &FbmSpec::seed);

    m.def("covariance_rh", &covariance_rh, py::arg("s"), py::arg("t"), py::arg("hurst"));
    m.def("generate_fbm", &generate_fbm, py::arg("spec"),
          "two-sided fBm on [-horizon, horizon], pinned at 0");
    m.def("generate_fbm_one_sided", &generate_fbm_one_sided, py::arg("hurst"), py::arg("horizon"),
          py::arg("steps_per_unit"), py::arg("seed"));
    m.def("wiener_shift", &wiener_shift, py::arg("path"), py::arg("t"));
    m.def("derive_seed", &derive_seed, py::arg("base"), py::arg("k"));

    py::class_<VariationResult>(m, "VariationResult")
        .def_readonly("p", &VariationResult::p)
        .def_readonly("value", &VariationResult::value)
        .def_readonly("argmax_partition", &VariationResult::argmax_partition);
    m.def("pvar_seminorm", &pvar_seminorm, py::arg("path"), py::arg("p"), py::arg("from_t"),
          py::arg("to_t"));
    m.def("holder_seminorm", &holder_seminorm, py::arg("path"), py::arg("nu"), py::arg("from_t"),
          py::arg("to_t"));
    m.def("apriori_variation_bound", &apriori_variation_bound, py::arg("b"), py::arg("p"), py::arg("dt_len"),
          py::arg("omega_pvar"));

    m.def("k_constant", &k_constant, py::arg("p"), py::arg("q"));
    m.def("young_integral", &young_integral, py::arg("x"), py::arg("omega"), py::arg("from_t"),
          py::arg("to_t"), py::arg("kahan") = false);
    py::class_<YoungLoeveCertificate>(m, "YoungLoeveCertificate")
        .def_readonly("lhs", &YoungLoeveCertificate::lhs)
        .def_readonly("rhs", &YoungLoeveCertificate::rhs)
        .def_readonly("K", &YoungLoeveCertificate::K)
        .def_readonly("holds", &YoungLoeveCertificate::holds);
    m.def("young_loeve_certify", &young_loeve_certify, py::arg("x"), py::arg("omega"),
          py::arg("from_t"), py::arg("to_t"), py::arg("p"), py::arg("q"));

    py::class_<CoefficientSet>(m, "CoefficientSet")
        .def_property_readonly("dim", [](const CoefficientSet& c) { return c.dim; })
        .def("drift", [](const CoefficientSet& c, double t) { return c.drift(t); }, py::arg("t") = 0.0)
        .def("diffusion", [](const CoefficientSet& c, double t) { return c.diffusion(t); },
             py::arg("t") = 0.0)
        .def("lipschitz", [](const CoefficientSet& c, double t) { return c.lipschitz(t); },
             py::arg("t") = 0.0)
        .def("dissipativity", [](const CoefficientSet& c, double t) { return c.dissipativity(t); },
             py::arg("t") = 0.0)
        .def("spot_check_violations", [](const CoefficientSet& c, std::uint64_t seed, int trials) {
                 return c.spot_check(seed, trials).size();
             }, py::arg("seed") = 0, py::arg("trials") = 200);
    m.def("autonomous_system", &make_autonomous, py::arg("A"), py::arg("C"),
          py::arg("F") = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>{},
          py::arg("lipschitz") = 0.0, py::arg("dissipativity") = 0.0, py::arg("name") = "none",
          "linear-plus-Lipschitz system with constant matrices");

    m.def("solve_young_sde", &solve_young_sde, py::arg("coeffs"), py::arg("omega"), py::arg("x0"),
          py::arg("from_t"), py::arg("to_t"), py::arg("substeps") = 1);
    py::class_<FlowMatrix>(m, "FlowMatrix")
        .def_property_readonly("values", [](const FlowMatrix& f) { return f.values; })
        .def_property_readonly("condition_numbers",
                               [](const FlowMatrix& f) { return f.condition_numbers; })
        .def_readonly("all_invertible", &FlowMatrix::all_invertible)
        .def("time", &FlowMatrix::time)
        .def("__len__", &FlowMatrix::size);
    m.def("fundamental_matrix", &fundamental_matrix, py::arg("coeffs"), py::arg("omega"),
          py::arg("from_t"), py::arg("to_t"), py::arg("substeps") = 1);
    m.def("variation_of_parameters_check", &variation_of_parameters_check, py::arg("coeffs"),
          py::arg("omega"), py::arg("x0"), py::arg("from_t"), py::arg("to_t"));
    m.def("polar_dynamics_check", &polar_dynamics_check, py::arg("coeffs"), py::arg("omega"),
          py::arg("x0"), py::arg("from_t"), py::arg("to_t"), py::arg("r_floor") = 1e-30);

    py::class_<BlockStats>(m, "BlockStats")
        .def_readonly("a_hat", &BlockStats::a_hat)
        .def_readonly("c_hat", &BlockStats::c_hat)
        .def_readonly("omega_pvar", &BlockStats::omega_pvar);
    m.def("block_stats", &block_stats, py::arg("coeffs"), py::arg("omega"), py::arg("m"),
          py::arg("p"), py::arg("q"));
    m.def("cesaro_limit", &cesaro_limit, py::arg("values"), py::arg("exponent"));

    py::class_<StabilityReport>(m, "StabilityReport")
        .def_readonly("p", &StabilityReport::p)
        .def_readonly("q", &StabilityReport::q)
        .def_readonly("m_blocks", &StabilityReport::m_blocks)
        .def_readonly("h0", &StabilityReport::h0)
        .def_readonly("a_hat", &StabilityReport::a_hat)
        .def_readonly("c_hat", &StabilityReport::c_hat)
        .def_readonly("gamma2", &StabilityReport::gamma2)
        .def_readonly("gamma4", &StabilityReport::gamma4)
        .def_readonly("gamma2p2", &StabilityReport::gamma2p2)
        .def_readonly("K", &StabilityReport::K)
        .def_readonly("g_hat", &StabilityReport::g_hat)
        .def_readonly("criterion_lhs", &StabilityReport::criterion_lhs)
        .def_readonly("criterion_rhs", &StabilityReport::criterion_rhs)
        .def_readonly("verdict", &StabilityReport::verdict)
        .def_readonly("lyapunov_estimate", &StabilityReport::lyapunov_estimate);
    m.def("criterion_report", &criterion_report, py::arg("coeffs"), py::arg("omega"), py::arg("m"),
          py::arg("p"), py::arg("q"));
    m.def("lyapunov_estimate", &lyapunov_estimate, py::arg("trajectory"),
          py::arg("tail_fraction") = 0.5);

    py::class_<KappaParams>(m, "KappaParams")
        .def_readonly("delta", &KappaParams::delta)
        .def_readonly("p", &KappaParams::p)
        .def_readonly("K", &KappaParams::K)
        .def_readonly("G", &KappaParams::G);
    m.def("kappa_params_for", &kappa_params_for, py::arg("A"), py::arg("C"), py::arg("p"),
          py::arg("q"), py::arg("delta") = 0.1);
    m.def("kappa", &kappa, py::arg("t"), py::arg("omega"), py::arg("params"));
    m.def("phi_bound_violations",
          [](const CoefficientSet& coeffs, const SamplePath& omega, double h_A, double delta,
             double p, double q, double eps) {
              const auto v = phi_bound_check(coeffs, omega, h_A, delta, p, q, eps);
              std::vector<std::tuple<double, double, double>> out;
              out.reserve(v.size());
              for (const auto& b : v) out.emplace_back(b.t, b.lhs, b.rhs);
              return out;
          },
          py::arg("coeffs"), py::arg("omega"), py::arg("h_A"), py::arg("delta"), py::arg("p"),
          py::arg("q"), py::arg("eps_disc") = 1e-6);

    m.def("gronwall_bound", &gronwall_bound, py::arg("z0"), py::arg("alpha"), py::arg("eta"),
          py::arg("t0"), py::arg("dt"));
    m.def("beta_bound", &beta_bound, py::arg("q0"));
    m.def("beta_q0_floor", &beta_q0_floor, py::arg("hurst"), py::arg("p"));
    m.def("beta_bound_checked", &beta_bound_checked, py::arg("q0"), py::arg("hurst"), py::arg("p"));
    py::class_<AttractorCriterion>(m, "AttractorCriterion")
        .def_readonly("h", &AttractorCriterion::h)
        .def_readonly("rhs", &AttractorCriterion::rhs)
        .def_readonly("ok", &AttractorCriterion::ok);
    m.def("attractor_criterion", &attractor_criterion, py::arg("h_A"), py::arg("c_f"),
          py::arg("delta"), py::arg("C_norm"), py::arg("p"), py::arg("K"), py::arg("G"),
          py::arg("beta"));
    py::class_<SeriesResult>(m, "SeriesResult")
        .def_readonly("partial", &SeriesResult::partial)
        .def_readonly("truncated_at", &SeriesResult::truncated_at)
        .def_readonly("tail_alarm", &SeriesResult::tail_alarm);
    m.def("absorbing_radius", &absorbing_radius, py::arg("omega"), py::arg("coeffs"),
          py::arg("params"), py::arg("h"), py::arg("delta"), py::arg("n_terms"));
    py::class_<TemperProbe>(m, "TemperProbe")
        .def_readonly("slope_pos", &TemperProbe::slope_pos)
        .def_readonly("slope_neg", &TemperProbe::slope_neg)
        .def_readonly("tail_alarm", &TemperProbe::tail_alarm);
    m.def("temperedness_probe", &temperedness_probe, py::arg("omega"), py::arg("h"), py::arg("c"),
          py::arg("m_max"), py::arg("params"), py::arg("series_terms") = 80);

    py::class_<PullbackOptions>(m, "PullbackOptions")
        .def(py::init<>())
        .def_readwrite("delta", &PullbackOptions::delta)
        .def_readwrite("p", &PullbackOptions::p)
        .def_readwrite("hurst", &PullbackOptions::hurst)
        .def_readwrite("q0", &PullbackOptions::q0)
        .def_readwrite("substeps", &PullbackOptions::substeps)
        .def_readwrite("series_terms", &PullbackOptions::series_terms);
    py::class_<AttractorReport>(m, "AttractorReport")
        .def_readonly("h", &AttractorReport::h)
        .def_readonly("delta", &AttractorReport::delta)
        .def_readonly("b_partial", &AttractorReport::b_partial)
        .def_readonly("xi_partial", &AttractorReport::xi_partial)
        .def_readonly("pullback_distances", &AttractorReport::pullback_distances)
        .def_readonly("decay_slope", &AttractorReport::decay_slope)
        .def_readonly("criterion_ok", &AttractorReport::criterion_ok)
        .def_readonly("absorbing_time", &AttractorReport::absorbing_time);
    m.def("pullback_experiment", &pullback_experiment, py::arg("coeffs"), py::arg("omega"),
          py::arg("x0_set"), py::arg("times"), py::arg("options") = PullbackOptions{});
    m.def("parse_x0_grid", &parse_x0_grid, py::arg("descriptor"), py::arg("dim"));

    py::class_<SirParams>(m, "SirParams")
        .def(py::init([](double q, double a, double b, double c, double gamma, double s1, double s2,
                         double s3) {
                 SirParams p{q, a, b, c, gamma, s1, s2, s3};
                 p.validate();
                 return p;
             }),
             py::arg("q"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("gamma"),
             py::arg("sigma1") = 0.0, py::arg("sigma2") = 0.0, py::arg("sigma3") = 0.0)
        .def_readwrite("q", &SirParams::q)
        .def_readwrite("a", &SirParams::a)
        .def_readwrite("b", &SirParams::b)
        .def_readwrite("c", &SirParams::c)
        .def_readwrite("gamma", &SirParams::gamma)
        .def_readwrite("sigma1", &SirParams::sigma1)
        .def_readwrite("sigma2", &SirParams::sigma2)
        .def_readwrite("sigma3", &SirParams::sigma3);
    py::class_<SirSystem>(m, "SirSystem")
        .def_readonly("original", &SirSystem::original)
        .def_readonly("transformed", &SirSystem::transformed)
        .def_property_readonly("A", [](const SirSystem& s) { return Eigen::MatrixXd(s.A); })
        .def_property_readonly("P", [](const SirSystem& s) { return Eigen::MatrixXd(s.P); })
        .def_property_readonly("Pinv", [](const SirSystem& s) { return Eigen::MatrixXd(s.Pinv); })
        .def_property_readonly("D", [](const SirSystem& s) { return Eigen::MatrixXd(s.D); });
    m.def("sir_build", &sir_build, py::arg("params"));
    m.def("sir_positivity_probe",
          [](const SirParams& params, const SamplePath& omega, const Eigen::Vector3d& x0,
             double horizon) -> py::object {
              const auto exit = sir_positivity_probe(params, omega, x0, horizon);
              if (exit) return py::float_(*exit);
              return py::none();
          },
          py::arg("params"), py::arg("omega"), py::arg("x0"), py::arg("horizon"));
    py::class_<LyapunovTransform>(m, "LyapunovTransform")
        .def_readonly("Q", &LyapunovTransform::Q)
        .def_readonly("lambda_ratio", &LyapunovTransform::lambda_ratio);
    m.def("lyapunov_transform", &lyapunov_transform, py::arg("A"), py::arg("D_target"));
    m.def("spectral_norm", &spectral_norm, py::arg("matrix"));
}
