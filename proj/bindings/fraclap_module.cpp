// Python bindings for the main operations: problem setup, the extension
// solver, the beta continuation, diagnostics, hemisphere exponents, and the
// barrier checks.
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fraclap/barriers.hpp"
#include "fraclap/continuation.hpp"
#include "fraclap/diagnostics.hpp"
#include "fraclap/exponents.hpp"
#include "fraclap/field_io.hpp"
#include "fraclap/scenarios.hpp"

namespace py = pybind11;
using namespace fraclap;

namespace {

py::array_t<double> component_array(const Field& f, int c) {
  const int nx = f.grid.nx(), ny = f.grid.ny();
  py::array_t<double> out({ny, nx});
  auto buf = out.mutable_unchecked<2>();
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) buf(j, i) = f.values[c][f.grid.index(i, j)];
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Extension-problem laboratory for strongly competing fractional "
            "systems";

  py::class_<ReactionSpec>(m, "ReactionSpec")
      .def_static("zero", &ReactionSpec::zero)
      .def_static("constant", &ReactionSpec::constant, py::arg("lam"),
                  py::arg("theta") = 0.0)
      .def_static("logistic", &ReactionSpec::logistic, py::arg("lam"),
                  py::arg("kappa"), py::arg("theta") = 0.0)
      .def_readwrite("cutoff_theta", &ReactionSpec::cutoff_theta);

  py::class_<ProblemParams>(m, "ProblemParams")
      .def_static("make", &ProblemParams::make, py::arg("s"), py::arg("k"),
                  py::arg("p"), py::arg("q"), py::arg("beta"))
      .def_readonly("s", &ProblemParams::s)
      .def_readonly("a", &ProblemParams::a)
      .def_readonly("k", &ProblemParams::k)
      .def_readwrite("p", &ProblemParams::p)
      .def_readwrite("q", &ProblemParams::q)
      .def_readwrite("beta", &ProblemParams::beta)
      .def_readwrite("reactions", &ProblemParams::reactions)
      .def("aij", &ProblemParams::aij)
      .def("set_aij", &ProblemParams::set_aij)
      .def("validate", &ProblemParams::validate);

  py::class_<Grid>(m, "Grid")
      .def_readonly("x_nodes", &Grid::x_nodes)
      .def_readonly("y_nodes", &Grid::y_nodes)
      .def_readonly("face_weights_x", &Grid::face_weights_x)
      .def_readonly("face_weights_y", &Grid::face_weights_y)
      .def_property_readonly("nx", &Grid::nx)
      .def_property_readonly("ny", &Grid::ny)
      .def_readonly("a", &Grid::a)
      .def_readonly("grading_exponent", &Grid::grading_exponent);
  m.def("build_grid", &build_grid, py::arg("x_lo"), py::arg("x_hi"),
        py::arg("height"), py::arg("nx"), py::arg("ny"),
        py::arg("grading_exponent"), py::arg("a"));
  m.def("default_grading_exponent", &default_grading_exponent);

  py::class_<Field>(m, "Field")
      .def_static("zeros", &Field::zeros)
      .def_static("constant", &Field::constant)
      .def_readonly("params", &Field::params)
      .def_readonly("grid", &Field::grid)
      .def("component", &component_array, py::arg("c"),
           "component c as an (ny, nx) array")
      .def("trace", &Field::trace, py::arg("c"))
      .def("set_value",
           [](Field& f, int c, int i, int j, double v) { f.at(c, i, j) = v; })
      .def("validate", &Field::validate);

  py::class_<BoundaryData>(m, "BoundaryData")
      .def_static("constant", &BoundaryData::constant)
      .def_static("mirror_crossing", &BoundaryData::mirror_crossing)
      .def_readwrite("frozen", &BoundaryData::frozen)
      .def_readwrite("tag", &BoundaryData::tag);

  py::enum_<SweepOrder>(m, "SweepOrder")
      .value("RED_BLACK", SweepOrder::RedBlack)
      .value("LEXICOGRAPHIC", SweepOrder::Lexicographic);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("tolerance", &SolverConfig::tolerance)
      .def_readwrite("max_sweeps", &SolverConfig::max_sweeps)
      .def_readwrite("damping", &SolverConfig::damping)
      .def_readwrite("sweep_order", &SolverConfig::sweep_order)
      .def_readwrite("threads", &SolverConfig::threads);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("final_residual", &SolveReport::final_residual)
      .def_readonly("converged", &SolveReport::converged)
      .def_readonly("wall_time", &SolveReport::wall_time);

  m.def("eval_reaction",
        [](const ReactionSpec& spec, double x, std::vector<double> t,
           int own) { return eval_reaction(spec, x, t, own); },
        py::arg("spec"), py::arg("x"), py::arg("t"), py::arg("own") = 0);
  m.def("competition_term",
        [](const ProblemParams& pp, int i, std::vector<double> t) {
          return competition_term(pp, i, t);
        });
  m.def("interior_defect", &interior_defect);
  m.def("boundary_defect", &boundary_defect);
  m.def("conormal_trace", &conormal_trace);
  m.def("solve_system", &solve_system, py::arg("params"), py::arg("grid"),
        py::arg("bdata"), py::arg("init"), py::arg("cfg"));

  py::class_<BetaLadder>(m, "BetaLadder")
      .def(py::init([](double beta0, double ratio, int steps) {
             BetaLadder l{beta0, ratio, steps};
             l.validate();
             return l;
           }),
           py::arg("beta0"), py::arg("ratio"), py::arg("steps"))
      .def_readonly("beta0", &BetaLadder::beta0)
      .def_readonly("ratio", &BetaLadder::ratio)
      .def_readonly("steps", &BetaLadder::steps);

  py::class_<SweepRecord>(m, "SweepRecord")
      .def_readonly("beta", &SweepRecord::beta)
      .def_readonly("iterations", &SweepRecord::iterations)
      .def_readonly("final_residual", &SweepRecord::final_residual)
      .def_readonly("overlap", &SweepRecord::overlap)
      .def_readonly("beta_overlap", &SweepRecord::beta_overlap)
      .def_readonly("trace_product", &SweepRecord::trace_product)
      .def_readonly("reflection_residual", &SweepRecord::reflection_residual);

  m.def("continue_beta", &continue_beta);
  m.def("segregation_reached", &segregation_reached);
  m.def("default_segregation_eps", &default_segregation_eps);

  py::class_<RadialProfile>(m, "RadialProfile")
      .def_readonly("center_x", &RadialProfile::center_x)
      .def_readonly("radii", &RadialProfile::radii)
      .def_readonly("values", &RadialProfile::values);

  py::class_<HatField>(m, "HatField")
      .def_readonly("values", &HatField::values);

  py::class_<Box>(m, "Box")
      .def(py::init([](double x_lo, double x_hi, double y_lo, double y_hi) {
             return Box{x_lo, x_hi, y_lo, y_hi};
           }),
           py::arg("x_lo"), py::arg("x_hi"), py::arg("y_lo"), py::arg("y_hi"));

  m.def("holder_quotient", &holder_quotient, py::arg("field"), py::arg("i"),
        py::arg("alpha"), py::arg("sub"), py::arg("all_pairs") = false);
  m.def("morrey_quotient", &morrey_quotient);
  m.def("acf_quotient", &acf_quotient);
  py::class_<AlmgrenResult>(m, "AlmgrenResult")
      .def_readonly("E", &AlmgrenResult::E)
      .def_readonly("H", &AlmgrenResult::H)
      .def_readonly("identity_residual", &AlmgrenResult::identity_residual);
  m.def("almgren_EH", &almgren_EH);
  m.def("hat_field", &hat_field);
  m.def("reflection_residual", &reflection_residual);
  py::class_<SegregationResiduals>(m, "SegregationResiduals")
      .def_readonly("upper", &SegregationResiduals::upper)
      .def_readonly("lower", &SegregationResiduals::lower)
      .def_readonly("complementarity", &SegregationResiduals::complementarity);
  m.def("segregation_system_residual", &segregation_system_residual);
  m.def("fit_local_exponent", &fit_local_exponent);
  m.def("free_boundary", &free_boundary);
  m.def("multiplicity", &multiplicity);
  m.def("default_fb_threshold", &default_fb_threshold);

  py::class_<ArcSpec>(m, "ArcSpec")
      .def(py::init([](double lo, double hi, bool dlo, bool dhi) {
             return ArcSpec{lo, hi, dlo, dhi};
           }),
           py::arg("theta_lo"), py::arg("theta_hi"),
           py::arg("force_dirichlet_lo") = false,
           py::arg("force_dirichlet_hi") = false);
  py::class_<ExponentResult>(m, "ExponentResult")
      .def_readonly("value", &ExponentResult::value)
      .def_readonly("trace", &ExponentResult::trace)
      .def_readonly("grid_resolution", &ExponentResult::grid_resolution);
  py::class_<OptimConfig>(m, "OptimConfig")
      .def(py::init<>())
      .def_readwrite("theta_tol", &OptimConfig::theta_tol)
      .def_readwrite("coarse_points", &OptimConfig::coarse_points);
  m.def("gamma_char", &gamma_char, py::arg("t"), py::arg("s"), py::arg("N"));
  m.def("arc_eigenvalue", &arc_eigenvalue);
  m.def("lambda2_halfsphere", &lambda2_halfsphere);
  m.def("optimize_mu", &optimize_mu, py::arg("s"), py::arg("resolution"),
        py::arg("cfg") = OptimConfig{});
  m.def("optimize_nu", &optimize_nu, py::arg("s"), py::arg("resolution"),
        py::arg("cfg") = OptimConfig{});

  py::class_<BarrierParams>(m, "BarrierParams")
      .def_static("make", &BarrierParams::make, py::arg("a"), py::arg("p"),
                  py::arg("M"), py::arg("delta"))
      .def_readonly("a", &BarrierParams::a)
      .def_readonly("b", &BarrierParams::b)
      .def_readonly("c", &BarrierParams::c)
      .def_readonly("M", &BarrierParams::M)
      .def_readonly("delta", &BarrierParams::delta);
  m.def("barrier_f", &barrier_f);
  m.def("barrier_gM", &barrier_gM);
  m.def("supersolution_wdelta", &supersolution_wdelta, py::arg("x"),
        py::arg("y"), py::arg("bp"), py::arg("tol") = 1e-9);
  py::enum_<DecayClosure>(m, "DecayClosure")
      .value("CONST", DecayClosure::Const)
      .value("PROFILE", DecayClosure::Profile);
  py::class_<DecayCase>(m, "DecayCase")
      .def_readonly("field", &DecayCase::field)
      .def_readonly("bdata", &DecayCase::bdata)
      .def_readonly("report", &DecayCase::report);
  m.def("run_decay_case", &run_decay_case, py::arg("s"), py::arg("p"),
        py::arg("M"), py::arg("delta"), py::arg("h"), py::arg("nx"),
        py::arg("ny"), py::arg("cfg"),
        py::arg("closure") = DecayClosure::Const);
  py::class_<DecayResult>(m, "DecayResult")
      .def_readonly("ok", &DecayResult::ok)
      .def_readonly("lhs", &DecayResult::lhs)
      .def_readonly("rhs", &DecayResult::rhs)
      .def_readonly("margin", &DecayResult::margin);
  m.def("decay_check", &decay_check);

  m.def("save_field", &save_field);
  m.def("load_field", &load_field);
}
