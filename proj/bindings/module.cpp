#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "apgrad/engine.hpp"
#include "apgrad/experiment.hpp"
#include "apgrad/metrics.hpp"
#include "apgrad/presets.hpp"
#include "apgrad/projection.hpp"

namespace py = pybind11;
using namespace apgrad;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Projected adaptive-rate optimization: core operations";

  py::class_<SeedState>(m, "SeedState")
      .def(py::init<>())
      .def(py::init([](std::uint64_t seed, std::uint64_t counter) {
             return SeedState{seed, counter};
           }),
           py::arg("seed"), py::arg("counter") = 0)
      .def_readwrite("seed", &SeedState::seed)
      .def_readwrite("counter", &SeedState::counter)
      .def("next_u64", &SeedState::next_u64)
      .def("next_unit", &SeedState::next_unit)
      .def("next_gaussian", &SeedState::next_gaussian)
      .def("substream", &SeedState::substream, py::arg("salt"));

  py::enum_<EstimatorKind>(m, "EstimatorKind")
      .value("AdamMax", EstimatorKind::AdamMax)
      .value("AmsGrad", EstimatorKind::AmsGrad);

  py::class_<AlphaRule>(m, "AlphaRule")
      .def_static("constant", &AlphaRule::constant, py::arg("alpha"))
      .def_static("inverse_power", &AlphaRule::inverse_power, py::arg("eta"),
                  py::arg("scale") = 1.0)
      .def_readonly("value", &AlphaRule::value)
      .def_readonly("eta", &AlphaRule::eta)
      .def_readonly("scale", &AlphaRule::scale);

  py::class_<BetaRule>(m, "BetaRule")
      .def_static("constant", &BetaRule::constant, py::arg("beta"))
      .def_static("geometric", &BetaRule::geometric, py::arg("lam"))
      .def_readonly("value", &BetaRule::value)
      .def_readonly("lam", &BetaRule::lambda);

  py::class_<ScheduleConfig>(m, "ScheduleConfig")
      .def(py::init<>())
      .def_readwrite("alpha", &ScheduleConfig::alpha)
      .def_readwrite("beta", &ScheduleConfig::beta)
      .def_readwrite("gamma", &ScheduleConfig::gamma)
      .def_readwrite("delta", &ScheduleConfig::delta)
      .def_readwrite("epsilon", &ScheduleConfig::epsilon)
      .def("validate", &ScheduleConfig::validate)
      .def("describe", &ScheduleConfig::describe);

  m.def("eval_alpha", &eval_alpha, py::arg("schedule"), py::arg("n"));
  m.def("eval_beta", &eval_beta, py::arg("schedule"), py::arg("n"));

  py::class_<DiagonalMatrix>(m, "DiagonalMatrix")
      .def(py::init<Vec>(), py::arg("diag"))
      .def_readonly("diag", &DiagonalMatrix::diag);

  py::class_<FeasibleSet>(m, "FeasibleSet")
      .def_static("box", &FeasibleSet::box, py::arg("lower"), py::arg("upper"))
      .def_static("ball", &FeasibleSet::ball, py::arg("center"), py::arg("radius"))
      .def("dim", &FeasibleSet::dim)
      .def("contains", &FeasibleSet::contains, py::arg("x"), py::arg("slack") = 1e-10);

  m.def("diameter_constant", &diameter_constant, py::arg("set"));

  py::class_<KnownOptimum>(m, "KnownOptimum")
      .def_readonly("x_star", &KnownOptimum::x_star)
      .def_readonly("f_star", &KnownOptimum::f_star);

  py::class_<ProblemSpec>(m, "ProblemSpec")
      .def_readonly("id", &ProblemSpec::id)
      .def_readonly("dim", &ProblemSpec::dim)
      .def_readonly("set", &ProblemSpec::set)
      .def_readonly("gradient_bound", &ProblemSpec::gradient_bound)
      .def_readonly("convex", &ProblemSpec::convex)
      .def_readonly("optimum", &ProblemSpec::optimum)
      .def("objective", [](const ProblemSpec& p, const Vec& x) { return p.objective(x); })
      .def("gradient", [](const ProblemSpec& p, const Vec& x) { return p.gradient(x); })
      .def("stochastic_gradient",
           [](const ProblemSpec& p, const Vec& x, SeedState& s) {
             return p.stochastic_gradient(x, s);
           },
           py::arg("x"), py::arg("stream"));

  m.def("make_stochastic_quadratic", &make_stochastic_quadratic, py::arg("d"), py::arg("span"),
        py::arg("sigma"), py::arg("halfwidth"), py::arg("seed"),
        py::arg("target") = std::nullopt, py::arg("ball_geometry") = false);
  m.def("make_noisy_logistic", &make_noisy_logistic, py::arg("d"), py::arg("n_samples"),
        py::arg("label_noise"), py::arg("halfwidth"), py::arg("seed"),
        py::arg("ball_geometry") = false);
  m.def("make_logistic_from_data", &make_logistic_from_data, py::arg("features"),
        py::arg("labels"), py::arg("halfwidth"), py::arg("ball_geometry") = false);
  m.def("make_nonconvex_wells", &make_nonconvex_wells, py::arg("d"), py::arg("sigma"),
        py::arg("halfwidth"), py::arg("ball_geometry") = false);
  m.def("make_adversarial_online", &make_adversarial_online, py::arg("period"), py::arg("mag"));
  m.def("parse_problem_spec", &parse_problem_spec, py::arg("spec"), py::arg("geometry") = "box");
  m.def("estimate_fstar", &estimate_fstar, py::arg("problem"), py::arg("steps"),
        py::arg("step_size"), py::arg("seed"));

  m.def("project_box", &project_box, py::arg("set"), py::arg("y"));
  m.def("project_ball_weighted", &project_ball_weighted, py::arg("set"), py::arg("h"),
        py::arg("y"), py::arg("tol"));
  m.def("project", &project, py::arg("set"), py::arg("h"), py::arg("y"));

  py::class_<OptimizerState>(m, "OptimizerState")
      .def_readonly("x", &OptimizerState::x)
      .def_readonly("n", &OptimizerState::n);

  py::class_<StepOutput>(m, "StepOutput")
      .def_readonly("x_next", &StepOutput::x_next)
      .def_readonly("direction", &StepOutput::direction)
      .def_readonly("effective_rates", &StepOutput::effective_rates)
      .def_readonly("gradient_used", &StepOutput::gradient_used);

  m.def("init", &init, py::arg("problem"), py::arg("schedule"), py::arg("estimator"),
        py::arg("seed"), py::arg("x0") = std::nullopt);
  m.def("step", &step, py::arg("state"), py::arg("problem"), py::arg("schedule"));
  m.def("run", &run, py::arg("problem"), py::arg("schedule"), py::arg("estimator"),
        py::arg("n_steps"), py::arg("seed"), py::arg("record_every"),
        py::arg("x0") = std::nullopt);

  py::class_<RecordSample>(m, "RecordSample")
      .def_readonly("n", &RecordSample::n)
      .def_readonly("x", &RecordSample::x)
      .def_readonly("f_x", &RecordSample::f_x)
      .def_readonly("gap", &RecordSample::gap)
      .def_readonly("avg_gap", &RecordSample::avg_gap)
      .def_readonly("eff_rates", &RecordSample::eff_rates)
      .def_readonly("xtilde", &RecordSample::xtilde)
      .def_readonly("f_xtilde", &RecordSample::f_xtilde)
      .def_readonly("cum_loss", &RecordSample::cum_loss)
      .def_readonly("regret", &RecordSample::regret);

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("problem_id", &RunRecord::problem_id)
      .def_readonly("schedule", &RunRecord::schedule)
      .def_readonly("estimator", &RunRecord::estimator)
      .def_readonly("seed", &RunRecord::seed)
      .def_readonly("n_steps", &RunRecord::n_steps)
      .def_readonly("record_every", &RunRecord::record_every)
      .def_readonly("online", &RunRecord::online)
      .def_readonly("x0", &RunRecord::x0)
      .def_readonly("h_first", &RunRecord::h_first)
      .def_readonly("h_last", &RunRecord::h_last)
      .def_readonly("samples", &RunRecord::samples)
      .def_readonly("wall_ms", &RunRecord::wall_ms);

  py::class_<TheoryConstants>(m, "TheoryConstants")
      .def(py::init<>())
      .def_readwrite("M", &TheoryConstants::M)
      .def_readwrite("Mtilde", &TheoryConstants::Mtilde)
      .def_readwrite("D", &TheoryConstants::D)
      .def_readwrite("Btilde", &TheoryConstants::Btilde)
      .def_readwrite("btilde", &TheoryConstants::btilde)
      .def_readwrite("gammatilde", &TheoryConstants::gammatilde)
      .def_readwrite("d", &TheoryConstants::d);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("constants", &BoundReport::constants)
      .def_readonly("B_i", &BoundReport::B_i)
      .def_readonly("theorem1_rhs", &BoundReport::theorem1_rhs);

  m.def("stationarity_gap", &stationarity_gap, py::arg("x"), py::arg("grad"), py::arg("set"));
  m.def("regret", &regret, py::arg("losses"), py::arg("optimal_share"));
  m.def("theorem1_bound", &theorem1_bound, py::arg("constants"), py::arg("alpha"),
        py::arg("beta"));
  m.def("theorem3_bound", &theorem3_bound, py::arg("constants"), py::arg("schedule"),
        py::arg("B_i"), py::arg("n"));
  m.def("theorem3_bound_terms", &theorem3_bound_terms, py::arg("constants"), py::arg("sum_Bi"),
        py::arg("alpha_n"), py::arg("sum_alpha"), py::arg("sum_beta"), py::arg("n"));
  m.def("fit_rate_exponent", &fit_rate_exponent, py::arg("ns"), py::arg("qs"));
  m.def("suboptimality", &suboptimality, py::arg("record"), py::arg("f_star"));
  m.def("bound_report", &bound_report, py::arg("gradient_bound"), py::arg("set"),
        py::arg("schedule"), py::arg("runs"));

  py::class_<Preset>(m, "Preset")
      .def_readonly("name", &Preset::name)
      .def_readonly("estimator", &Preset::estimator)
      .def_readonly("schedule", &Preset::schedule);

  m.def("resolve_preset", &resolve_preset, py::arg("name"));
  m.def("all_presets", &all_presets);
  m.def("estimator_name", &estimator_name, py::arg("kind"));
}
