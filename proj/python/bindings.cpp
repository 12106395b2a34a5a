#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "logsum/curves.hpp"
#include "logsum/errors.hpp"
#include "logsum/irl1.hpp"
#include "logsum/matrix.hpp"
#include "logsum/scalar.hpp"
#include "logsum/vector.hpp"

namespace py = pybind11;
using namespace logsum;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact proximity operator of the log-sum penalty";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::enum_<Regime>(m, "Regime")
        .value("Convex", Regime::Convex)
        .value("Nonconvex", Regime::Nonconvex);

    py::class_<ProxParams>(m, "ProxParams")
        .def(py::init<double, double>(), py::arg("lam"), py::arg("eps"))
        .def_property_readonly("lam", &ProxParams::lambda)
        .def_property_readonly("eps", &ProxParams::epsilon)
        .def_property_readonly("regime", &ProxParams::regime)
        .def_property_readonly("critical_lower", &ProxParams::critical_lower)
        .def_property_readonly("critical_upper", &ProxParams::critical_upper)
        .def_property_readonly("jump_point", &ProxParams::jump_point)
        .def("__repr__", [](const ProxParams &p) {
            return "ProxParams(lam=" + std::to_string(p.lambda()) + ", eps=" + std::to_string(p.epsilon()) + ")";
        });

    py::enum_<ProxResult::Kind>(m, "ProxKind")
        .value("Zero", ProxResult::Kind::Zero)
        .value("Point", ProxResult::Kind::Point)
        .value("Pair", ProxResult::Kind::Pair);

    py::class_<ProxResult>(m, "ProxResult")
        .def_property_readonly("kind", &ProxResult::kind)
        .def_property_readonly("canonical", &ProxResult::canonical)
        .def_property_readonly("nonzero", &ProxResult::nonzero)
        .def_property_readonly("elements", &ProxResult::elements)
        .def("is_singleton", &ProxResult::is_singleton)
        .def("contains", &ProxResult::contains, py::arg("x"), py::arg("tol") = 0.0)
        .def("__repr__", [](const ProxResult &r) {
            return std::string("ProxResult(") + to_string(r.kind()) + ", " + std::to_string(r.nonzero()) + ")";
        });

    py::class_<ZStarResult>(m, "ZStarResult")
        .def_readonly("z_star", &ZStarResult::z_star)
        .def_readonly("bracket", &ZStarResult::bracket)
        .def_readonly("iterations", &ZStarResult::iterations)
        .def_readonly("residual", &ZStarResult::residual);

    m.def("q_objective", &q_objective, py::arg("params"), py::arg("z"), py::arg("x"));
    m.def("r1", &r1, py::arg("params"), py::arg("z"));
    m.def("r2", &r2, py::arg("params"), py::arg("z"));
    m.def("gap_r", &gap_r, py::arg("params"), py::arg("z"));
    m.def(
        "z_star",
        [](const ProxParams &p, std::optional<double> tol, int max_iter) {
            return z_star(p, tol.value_or(default_z_star_tolerance(p)), max_iter);
        },
        py::arg("params"), py::arg("tol") = py::none(), py::arg("max_iter") = default_z_star_max_iter);
    m.def("prox_scalar", &prox_scalar, py::arg("params"), py::arg("z"));

    py::class_<VectorProxResult>(m, "VectorProxResult")
        .def_readonly("canonical", &VectorProxResult::canonical)
        .def_readonly("ambiguous_indices", &VectorProxResult::ambiguous_indices)
        .def_readonly("alternatives", &VectorProxResult::alternatives)
        .def_readonly("objective_value", &VectorProxResult::objective_value);
    m.def(
        "prox_vector",
        [](const ProxParams &p, const std::vector<double> &z) { return prox_vector(p, z); },
        py::arg("params"), py::arg("z"));

    py::enum_<StopReason>(m, "StopReason")
        .value("FixedPointHit", StopReason::FixedPointHit)
        .value("ToleranceMet", StopReason::ToleranceMet)
        .value("MaxIters", StopReason::MaxIters);
    py::enum_<LimitClass>(m, "LimitClass")
        .value("Zero", LimitClass::Zero)
        .value("R1FixedPoint", LimitClass::R1FixedPoint)
        .value("R2", LimitClass::R2);
    py::enum_<FailureCase>(m, "FailureCase")
        .value("ConvexExact", FailureCase::ConvexExact)
        .value("LargeInit", FailureCase::LargeInit)
        .value("MidInit", FailureCase::MidInit)
        .value("KnifeEdgeInit", FailureCase::KnifeEdgeInit)
        .value("SmallInit", FailureCase::SmallInit);

    py::class_<IrlTrace>(m, "IrlTrace")
        .def_readonly("z", &IrlTrace::z)
        .def_readonly("x0", &IrlTrace::x0)
        .def_readonly("iterates", &IrlTrace::iterates)
        .def_readonly("stop_reason", &IrlTrace::stop_reason)
        .def_readonly("limit_estimate", &IrlTrace::limit_estimate);
    py::class_<LimitPrediction>(m, "LimitPrediction")
        .def_readonly("limit", &LimitPrediction::limit)
        .def_readonly("classification", &LimitPrediction::classification)
        .def_readonly("justification", &LimitPrediction::justification);
    py::class_<Interval>(m, "Interval")
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi)
        .def_readonly("lo_closed", &Interval::lo_closed)
        .def_readonly("hi_closed", &Interval::hi_closed)
        .def("contains", &Interval::contains);
    py::class_<FailureReport>(m, "FailureReport")
        .def_readonly("x0", &FailureReport::x0)
        .def_readonly("z_star", &FailureReport::z_star)
        .def_readonly("intervals", &FailureReport::intervals)
        .def_readonly("failure_case", &FailureReport::failure_case)
        .def("contains", &FailureReport::contains);

    m.def("irl1_step", &irl1_step, py::arg("params"), py::arg("z"), py::arg("x_k"));
    m.def("irl1_simulate", &irl1_simulate, py::arg("params"), py::arg("z"), py::arg("x0"),
          py::arg("stop_tol") = default_irl1_stop_tol, py::arg("max_iters") = default_irl1_max_iters);
    m.def("irl1_predict_limit", &irl1_predict_limit, py::arg("params"), py::arg("z"), py::arg("x0"));
    m.def("r1_inverse", &r1_inverse, py::arg("params"), py::arg("x0"));
    m.def("failure_intervals", &failure_intervals, py::arg("params"), py::arg("x0"));

    m.def(
        "prox_sweep",
        [](const ProxParams &p, double from, double to, std::size_t points) {
            std::vector<std::tuple<double, double, std::string>> rows;
            for (const auto &r : prox_sweep(p, from, to, points))
                rows.emplace_back(r.z, r.value, to_string(r.branch));
            return rows;
        },
        py::arg("params"), py::arg("start"), py::arg("stop"), py::arg("points"));

    py::class_<SvdFactorization>(m, "SvdFactorization")
        .def_readonly("u", &SvdFactorization::u)
        .def_readonly("singular_values", &SvdFactorization::singular_values)
        .def_readonly("v", &SvdFactorization::v);
    py::class_<MatrixProxResult>(m, "MatrixProxResult")
        .def_readonly("x_star", &MatrixProxResult::x_star)
        .def_readonly("d", &MatrixProxResult::d)
        .def_readonly("ambiguous_indices", &MatrixProxResult::ambiguous_indices)
        .def_readonly("objective_value", &MatrixProxResult::objective_value);

    m.def(
        "svd", [](const Eigen::MatrixXd &x, double tol) { return svd(x, tol); }, py::arg("x"),
        py::arg("tol") = default_svd_tol);
    m.def("prox_matrix", &prox_matrix, py::arg("params"), py::arg("z"));
    m.def("logdet_penalty", &logdet_penalty, py::arg("params"), py::arg("x"));
}
