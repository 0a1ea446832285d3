// Python bindings for the main operations: operator construction, trajectory
// integration, the stationary Fokker-Planck solver, and the estimators.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <vector>

#include "maglab/collective_spin.hpp"
#include "maglab/estimation.hpp"
#include "maglab/experiments.hpp"
#include "maglab/fokker_planck.hpp"
#include "maglab/record.hpp"
#include "maglab/rng.hpp"
#include "maglab/trajectory.hpp"

namespace py = pybind11;
using namespace maglab;

namespace {

std::vector<std::uint64_t> philox_raw(std::uint64_t seed, std::uint64_t stream, int count) {
    Philox4x64 gen(seed, stream);
    std::vector<std::uint64_t> out(count);
    for (auto& v : out) v = gen();
    return out;
}

Integrator integrator_from(const std::string& name) {
    if (name == "euler") return Integrator::euler;
    if (name == "kraus") return Integrator::kraus;
    throw std::invalid_argument("integrator must be 'euler' or 'kraus'");
}

}  // namespace

PYBIND11_MODULE(maglab, m) {
    m.doc() = "continuous weak measurement of a collective-spin magnetometer";

    py::class_<CollectiveOps>(m, "CollectiveOps")
        .def_readonly("n_qubits", &CollectiveOps::n_qubits)
        .def_readonly("jx", &CollectiveOps::jx)
        .def_readonly("jy", &CollectiveOps::jy)
        .def_readonly("jz", &CollectiveOps::jz)
        .def_property_readonly("dim", &CollectiveOps::dim);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init([](const Matrix& data) { return DensityMatrix{data}; }))
        .def_readonly("data", &DensityMatrix::data)
        .def_property_readonly("dim", &DensityMatrix::dim);

    m.def("build_collective_ops", &build_collective_ops, py::arg("n_qubits"));
    m.def("coherent_state_x", &coherent_state_x);
    m.def("max_entropy_state", &max_entropy_state);
    m.def("bloch_density", &bloch_density, py::arg("rho_x"), py::arg("rho_y"), py::arg("rho_z"));
    m.def("is_valid_density", &is_valid_density, py::arg("rho"), py::arg("herm_tol") = 1e-10,
          py::arg("trace_tol") = 1e-10, py::arg("eig_floor") = -1e-8);

    py::class_<WienerRealization>(m, "WienerRealization")
        .def_readonly("dt", &WienerRealization::dt)
        .def_readonly("increments", &WienerRealization::increments)
        .def_readonly("seed", &WienerRealization::seed);

    py::class_<MeasurementRecord>(m, "MeasurementRecord")
        .def(py::init([](double dt, std::vector<double> increments,
                         std::optional<double> b_true) {
                 MeasurementRecord r;
                 r.dt = dt;
                 r.increments = std::move(increments);
                 r.b_true = b_true;
                 return r;
             }),
             py::arg("dt"), py::arg("increments"), py::arg("b_true") = std::nullopt)
        .def_readonly("dt", &MeasurementRecord::dt)
        .def_readonly("increments", &MeasurementRecord::increments)
        .def_readonly("b_true", &MeasurementRecord::b_true);

    m.def("generate_wiener", &generate_wiener, py::arg("dt"), py::arg("steps"), py::arg("seed"),
          py::arg("stream") = 0);
    m.def("philox_raw", &philox_raw, py::arg("seed"), py::arg("stream"), py::arg("count"));
    m.def("save_wiener",
          [](const std::filesystem::path& p, const WienerRealization& w) { save_record(p, w); });
    m.def("save_measurement",
          [](const std::filesystem::path& p, const MeasurementRecord& r) { save_record(p, r); });
    m.def("load_record", [](const std::filesystem::path& p) -> py::object {
        const RecordFile f = load_record(p);
        if (f.kind == RecordKind::wiener) return py::cast(f.to_wiener());
        return py::cast(f.to_measurement());
    });

    m.def("sme_step_euler", &sme_step_euler, py::arg("rho"), py::arg("ops"), py::arg("b"),
          py::arg("dt"), py::arg("dw"));
    m.def("sme_step_kraus", &sme_step_kraus, py::arg("rho"), py::arg("ops"), py::arg("b"),
          py::arg("dt"), py::arg("dy"));
    m.def("emit_measurement", &emit_measurement);
    m.def("angular_step", &angular_step, py::arg("theta"), py::arg("b"), py::arg("dt"),
          py::arg("dw"));
    m.def("wrap_angle", &wrap_angle);
    m.def("circular_distance", &circular_distance);

    py::class_<TrajectoryResult>(m, "TrajectoryResult")
        .def_readonly("times", &TrajectoryResult::times)
        .def_readonly("states", &TrajectoryResult::states)
        .def_readonly("record", &TrajectoryResult::record);

    m.def(
        "run_trajectory",
        [](const DensityMatrix& initial, const CollectiveOps& ops, double b,
           const WienerRealization& noise, const std::string& integrator, int stride) {
            return run_trajectory(initial, ops, b, noise, integrator_from(integrator), stride);
        },
        py::arg("initial"), py::arg("ops"), py::arg("b"), py::arg("noise"),
        py::arg("integrator") = "kraus", py::arg("stride") = 100);
    m.def(
        "replay_trajectory",
        [](const DensityMatrix& initial, const CollectiveOps& ops, double b,
           const MeasurementRecord& record, const std::string& integrator, int stride) {
            return run_trajectory(initial, ops, b, record, integrator_from(integrator), stride);
        },
        py::arg("initial"), py::arg("ops"), py::arg("b"), py::arg("record"),
        py::arg("integrator") = "kraus", py::arg("stride") = 100);

    py::class_<FourierDistribution>(m, "FourierDistribution")
        .def_readonly("b", &FourierDistribution::b)
        .def_readonly("max_order", &FourierDistribution::max_order)
        .def_readonly("coeffs", &FourierDistribution::coeffs)
        .def("coeff", &FourierDistribution::coeff)
        .def("density", &FourierDistribution::density)
        .def("bin_mass", &FourierDistribution::bin_mass);

    m.def("stationary_distribution", &stationary_distribution, py::arg("b"),
          py::arg("max_order") = 500, py::arg("depth") = 100);
    m.def("quotient_s", &quotient_s, py::arg("m"), py::arg("b"), py::arg("depth"));
    m.def("probability_current", [](const FourierDistribution& d, int grid) {
        const CurrentDiagnostics c = probability_current(d, grid);
        return py::make_tuple(c.j_sta, c.flatness);
    }, py::arg("dist"), py::arg("grid") = 4096);
    m.def("classical_current", &classical_current);
    m.def("stationary_mean_theta", &stationary_mean_theta);
    m.def("ergodicity_test", [](double b, double total_time, double dt, std::uint64_t seed,
                                int bins) {
        const ErgodicityResult r = ergodicity_test(b, total_time, dt, seed, bins);
        return py::make_tuple(r.histogram, r.stationary_mass, r.tv_distance);
    }, py::arg("b"), py::arg("total_time"), py::arg("dt"), py::arg("seed"),
       py::arg("bins") = 63);

    py::class_<ScanResult>(m, "ScanResult")
        .def_readonly("b_grid", &ScanResult::b_grid)
        .def_readonly("loglik", &ScanResult::loglik)
        .def_readonly("argmax", &ScanResult::argmax);

    m.def(
        "scan_estimate",
        [](const MeasurementRecord& record, const CollectiveOps& ops,
           const std::vector<double>& grid, const DensityMatrix& initial,
           const std::string& integrator) {
            return scan_estimate(record, ops, grid, initial, integrator_from(integrator));
        },
        py::arg("record"), py::arg("ops"), py::arg("b_grid"), py::arg("initial"),
        py::arg("integrator") = "kraus");

    py::class_<OnlineSample>(m, "OnlineSample")
        .def_readonly("t", &OnlineSample::t)
        .def_readonly("b_est", &OnlineSample::b_est)
        .def_readonly("loglik", &OnlineSample::loglik)
        .def_readonly("loglik_grad", &OnlineSample::loglik_grad)
        .def_readonly("mean_jx", &OnlineSample::mean_jx)
        .def_readonly("mean_jz", &OnlineSample::mean_jz);

    m.def(
        "online_estimate",
        [](const MeasurementRecord& record, const CollectiveOps& ops,
           const DensityMatrix& initial, double b0, double gamma, double b_max, int stride) {
            return online_estimate(record, ops, initial, b0, gamma, b_max, stride).samples;
        },
        py::arg("record"), py::arg("ops"), py::arg("initial"), py::arg("b0"), py::arg("gamma"),
        py::arg("b_max"), py::arg("stride") = 100);
}
