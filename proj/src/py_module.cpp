#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bregcube/bregman.hpp"
#include "bregcube/cube_fn.hpp"
#include "bregcube/instances.hpp"
#include "bregcube/noise.hpp"
#include "bregcube/shatter.hpp"

namespace py = pybind11;
using namespace bregcube;

PYBIND11_MODULE(_core, m) {
    m.doc() = "p-biased Fourier analysis, directed noise operators, and Bregman cube tooling";

    py::class_<CubeFunction>(m, "CubeFunction")
        .def(py::init<int, double>(), py::arg("dim"), py::arg("fill") = 0.0)
        .def(py::init<int, std::vector<double>>(), py::arg("dim"), py::arg("values"))
        .def_readonly("dim", &CubeFunction::dim)
        .def_readwrite("values", &CubeFunction::values)
        .def_static("indicator", &CubeFunction::indicator)
        .def("__len__", &CubeFunction::size)
        .def("__getitem__", [](const CubeFunction& f, Mask x) { return f.values.at(x); })
        .def("__setitem__", [](CubeFunction& f, Mask x, double v) { f.values.at(x) = v; });

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("dim", &Spectrum::dim)
        .def_readonly("bias", &Spectrum::bias)
        .def_readonly("coeffs", &Spectrum::coeffs);

    m.def("measure_weight", &measure_weight, py::arg("p"), py::arg("x"), py::arg("d"));
    m.def("expectation", &expectation, py::arg("f"), py::arg("p"));
    m.def("norm", &norm, py::arg("f"), py::arg("p"), py::arg("j"));
    m.def("chi", &chi, py::arg("p"), py::arg("subset"), py::arg("x"));
    m.def("biased_fourier", &biased_fourier, py::arg("f"), py::arg("p"));
    m.def("inverse_fourier", &inverse_fourier, py::arg("spec"));
    m.def("random_function", &random_function, py::arg("d"), py::arg("seed"));
    m.def("random_indicator", &random_indicator, py::arg("d"), py::arg("density"),
          py::arg("seed"));

    py::class_<NoiseParams>(m, "NoiseParams")
        .def(py::init([](double p1, double p2) { return NoiseParams{p1, p2}; }),
             py::arg("p1"), py::arg("p2"))
        .def_readwrite("p1", &NoiseParams::p1)
        .def_readwrite("p2", &NoiseParams::p2);

    m.def("apply_asymmetric", &apply_asymmetric, py::arg("f"), py::arg("np"));
    m.def("apply_symmetric", &apply_symmetric, py::arg("f"), py::arg("delta"));
    m.def("apply_tau", &apply_tau, py::arg("f"), py::arg("delta"), py::arg("p"));
    m.def("decompose", [](const NoiseParams& np) {
        const Decomposition d = decompose(np);
        return std::make_pair(d.p_sym, d.p_dir);
    });
    m.def("verify_decomposition", &verify_decomposition);
    m.def("transform_relation_residual", &transform_relation_residual);
    m.def("norm_identity_residual", &norm_identity_residual);
    m.def("restrict_lower_half", &restrict_lower_half);
    m.def("restrict_upper_half", &restrict_upper_half);

    py::enum_<HcVariant>(m, "HcVariant")
        .value("keller", HcVariant::keller)
        .value("biased_tau", HcVariant::biased_tau)
        .value("half_cube_r", HcVariant::half_cube_r)
        .value("general_r", HcVariant::general_r)
        .value("asymptotic", HcVariant::asymptotic)
        .value("naive_sym2", HcVariant::naive_sym2);

    py::class_<HypercontractivityCase>(m, "HypercontractivityCase")
        .def(py::init<>())
        .def_readwrite("variant", &HypercontractivityCase::variant)
        .def_readwrite("p", &HypercontractivityCase::p)
        .def_readwrite("p1", &HypercontractivityCase::p1)
        .def_readwrite("p2", &HypercontractivityCase::p2)
        .def_readwrite("delta", &HypercontractivityCase::delta)
        .def_readwrite("upper", &HypercontractivityCase::upper);

    py::enum_<HcStatus>(m, "HcStatus")
        .value("ok", HcStatus::ok)
        .value("not_applicable", HcStatus::not_applicable);

    py::class_<HcResult>(m, "HcResult")
        .def_readonly("status", &HcResult::status)
        .def_property_readonly("ok",
                               [](const HcResult& r) { return r.status == HcStatus::ok; })
        .def_readonly("lhs", &HcResult::lhs)
        .def_readonly("rhs", &HcResult::rhs)
        .def_readonly("gap", &HcResult::gap)
        .def_readonly("note", &HcResult::note);

    m.def("hypercontractivity_gap", &hypercontractivity_gap, py::arg("f"), py::arg("case"));
    m.def("asymptotic_exponent_residual", &asymptotic_exponent_residual, py::arg("p"));

    py::class_<Generator>(m, "Generator")
        .def_readonly("name", &Generator::name)
        .def("phi", [](const Generator& g, double x) { return g.phi(x); })
        .def("dphi", [](const Generator& g, double x) { return g.dphi(x); })
        .def("d2phi", [](const Generator& g, double x) { return g.d2phi(x); });

    m.def("generator_by_name", &generator_by_name, py::return_value_policy::reference);
    m.def("generator_names", &generator_names);
    m.def("divergence",
          [](const std::string& gen, const std::vector<double>& x,
             const std::vector<double>& y) { return divergence(generator_by_name(gen), x, y); },
          py::arg("generator"), py::arg("x"), py::arg("y"));
    m.def("divergence1",
          [](const Generator& gen, double x, double y) { return divergence1(gen, x, y); },
          py::arg("generator"), py::arg("x"), py::arg("y"));
    m.def("divergence1",
          [](const std::string& gen, double x, double y) {
              return divergence1(generator_by_name(gen), x, y);
          },
          py::arg("generator"), py::arg("x"), py::arg("y"));
    m.def("asymmetry_grid",
          [](const std::string& gen, double l, double u, int n) {
              return asymmetry_grid(generator_by_name(gen), l, u, n);
          },
          py::arg("generator"), py::arg("l"), py::arg("u"), py::arg("grid_n"));
    m.def("asymmetry_hessian",
          [](const std::string& gen, double l, double u) {
              return asymmetry_hessian(generator_by_name(gen), l, u);
          },
          py::arg("generator"), py::arg("l"), py::arg("u"));
    m.def("cube_distance",
          [](double mu, int dim, Mask x, Mask y) {
              return cube_distance({mu, dim}, x, y);
          },
          py::arg("mu"), py::arg("dim"), py::arg("x"), py::arg("y"));
    m.def("induced_cube_params",
          [](const std::string& gen, double a, double b) {
              const InducedCubeParams p = induced_cube_params(generator_by_name(gen), a, b);
              return std::make_tuple(p.scale, p.mu);
          },
          py::arg("generator"), py::arg("a"), py::arg("b"));
    m.def("pseudo_cube_embed",
          [](const std::string& gen, double a, double b, Mask x, int d) {
              return pseudo_cube_embed(make_anchors(generator_by_name(gen), a, b), x, d);
          },
          py::arg("generator"), py::arg("a"), py::arg("b"), py::arg("x"), py::arg("d"));
    m.def("verify_embedding",
          [](const std::string& gen_name, double a, double b, int d, int trials,
             std::uint64_t seed) {
              const Generator& gen = generator_by_name(gen_name);
              return verify_embedding(gen, make_anchors(gen, a, b), d, trials, seed);
          },
          py::arg("generator"), py::arg("a"), py::arg("b"), py::arg("d"),
          py::arg("trials") = 10000, py::arg("seed") = 1);
    m.def("dominates", &dominates, py::arg("q"), py::arg("p"));
    py::class_<PmCheck>(m, "PmCheck")
        .def_readonly("pm_answer", &PmCheck::pm_answer)
        .def_readonly("ann_answer", &PmCheck::ann_answer)
        .def_readonly("consistent", &PmCheck::consistent);
    m.def("pm_reduction_check", &pm_reduction_check, py::arg("P"), py::arg("q"), py::arg("d"));

    py::class_<GapInstanceConfig>(m, "GapInstanceConfig")
        .def(py::init<>())
        .def_readwrite("dim", &GapInstanceConfig::dim)
        .def_readwrite("n", &GapInstanceConfig::n)
        .def_readwrite("eps", &GapInstanceConfig::eps)
        .def_readwrite("mu", &GapInstanceConfig::mu)
        .def_readwrite("perturb_mu", &GapInstanceConfig::perturb_mu)
        .def_readwrite("seed", &GapInstanceConfig::seed);

    py::class_<BitVec>(m, "BitVec")
        .def(py::init<int>())
        .def_readonly("dim", &BitVec::dim)
        .def("get", &BitVec::get)
        .def("set", &BitVec::set)
        .def("weight", &BitVec::weight)
        .def("to_hex", &BitVec::to_hex)
        .def_static("from_hex", &BitVec::from_hex);

    py::class_<GapInstance>(m, "GapInstance")
        .def_readonly("config", &GapInstance::config)
        .def_readonly("S", &GapInstance::S)
        .def_readonly("P", &GapInstance::P)
        .def_readonly("Q", &GapInstance::Q);

    py::class_<GapStatistics>(m, "GapStatistics")
        .def_readonly("paired", &GapStatistics::paired)
        .def_readonly("min_cross", &GapStatistics::min_cross)
        .def_readonly("ratio", &GapStatistics::ratio)
        .def_readonly("paired_per_bit_mean", &GapStatistics::paired_per_bit_mean)
        .def_readonly("analytic_per_bit_mean", &GapStatistics::analytic_per_bit_mean)
        .def_readonly("per_bit_standard_error", &GapStatistics::per_bit_standard_error)
        .def_readonly("cross_per_bit_mean", &GapStatistics::cross_per_bit_mean)
        .def_readonly("min_ratio", &GapStatistics::min_ratio);

    m.def("generate", &generate, py::arg("config"));
    m.def("gap_statistics", &gap_statistics, py::arg("instance"));

    py::class_<ShatterParams>(m, "ShatterParams")
        .def(py::init<>())
        .def(py::init([](double eps, double mu, double c0, double c1) {
                 return ShatterParams{eps, mu, c0, c1};
             }),
             py::arg("eps"), py::arg("mu"), py::arg("c0") = 0.01, py::arg("c1") = 0.01)
        .def_readwrite("eps", &ShatterParams::eps)
        .def_readwrite("mu", &ShatterParams::mu)
        .def_readwrite("c0", &ShatterParams::c0)
        .def_readwrite("c1", &ShatterParams::c1);

    py::class_<Partition>(m, "Partition")
        .def_readonly("dim", &Partition::dim)
        .def_readonly("m", &Partition::m)
        .def_readonly("cell_of", &Partition::cell_of)
        .def("light_cells", &Partition::light_cells);

    py::enum_<PartitionKind>(m, "PartitionKind")
        .value("bit_sample", PartitionKind::bit_sample)
        .value("random_balanced", PartitionKind::random_balanced)
        .value("seeded_hash", PartitionKind::seeded_hash);

    py::class_<ShatterReport>(m, "ShatterReport")
        .def_readonly("holds", &ShatterReport::holds)
        .def_readonly("lhs", &ShatterReport::lhs)
        .def_readonly("rhs", &ShatterReport::rhs)
        .def_readonly("heavy_count", &ShatterReport::heavy_count);

    py::class_<PartitionShatterReport>(m, "PartitionShatterReport")
        .def_readonly("holds", &PartitionShatterReport::holds)
        .def_readonly("violation_fraction", &PartitionShatterReport::violation_fraction)
        .def_readonly("threshold", &PartitionShatterReport::threshold)
        .def_readonly("bound", &PartitionShatterReport::bound)
        .def_readonly("light_cell_count", &PartitionShatterReport::light_cell_count)
        .def_readonly("no_light_cells", &PartitionShatterReport::no_light_cells);

    m.def("gamma_all", &gamma_all, py::arg("A"), py::arg("params"));
    m.def("heavy_set", &heavy_set, py::arg("A"), py::arg("params"), py::arg("a"));
    m.def("shattering_report", &shattering_report, py::arg("A"), py::arg("params"),
          py::arg("a"));
    m.def("partition_shatter", &partition_shatter, py::arg("partition"), py::arg("params"));
    m.def("make_partition", &make_partition, py::arg("kind"), py::arg("d"), py::arg("k_or_m"),
          py::arg("seed") = 0);
}
