#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sns/simulate.hpp"
#include "sns/diagnostics.hpp"
#include "sns/errors.hpp"
#include "sns/prediction.hpp"
#include "sns/sampler.hpp"

namespace py = pybind11;
using namespace sns;

namespace {

/// Target backed by a Python callable x -> (f, g, h).
class PyCallableTarget final : public LogDensityTarget {
 public:
  PyCallableTarget(py::function fn, Eigen::Index dim) : fn_(std::move(fn)), dim_(dim) {}

  Eigen::Index dim() const override { return dim_; }
  DiffState evaluate(const Vector& x) const override {
    py::gil_scoped_acquire gil;
    auto res = fn_(x).cast<py::tuple>();
    if (res.size() != 3) throw ContractError("target callable must return (f, g, h)");
    DiffState ds{res[0].cast<double>(), res[1].cast<Vector>(), res[2].cast<Matrix>()};
    validate(ds, dim_);
    return ds;
  }

 private:
  py::function fn_;
  Eigen::Index dim_;
};

Partition to_partition(const std::vector<std::vector<Eigen::Index>>& subsets) {
  return Partition{subsets};
}

py::dict stats_dict(const CoordinateStats& c) {
  py::dict d;
  d["mean"] = c.mean;
  d["sd"] = c.sd;
  d["ess"] = c.ess;
  d["q025"] = c.q025;
  d["q50"] = c.q50;
  d["q975"] = c.q975;
  d["p_value"] = c.p_value;
  return d;
}

SummaryWindow window_for(const ChainOutput& chain, std::optional<std::size_t> nburnin,
                         std::optional<std::size_t> end, std::size_t thin) {
  SummaryWindow w = SummaryWindow::defaults(static_cast<std::size_t>(chain.niter()));
  if (nburnin) w.nburnin = *nburnin;
  if (end) w.end = *end;
  w.thin = thin;
  return w;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stochastic Newton Sampler core";

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  auto sampler_error = py::register_exception<SamplerError>(m, "SamplerError", PyExc_RuntimeError);
  py::register_exception<NotNegativeDefinite>(m, "NotNegativeDefinite", sampler_error.ptr());
  py::register_exception<LineSearchFailure>(m, "LineSearchFailure", sampler_error.ptr());
  py::register_exception<OverflowError>(m, "BaseOverflowError", PyExc_OverflowError);

  py::class_<DiffState>(m, "DiffState")
      .def_readonly("f", &DiffState::f)
      .def_readonly("g", &DiffState::g)
      .def_readonly("h", &DiffState::h);

  py::class_<LogDensityTarget, std::shared_ptr<LogDensityTarget>>(m, "Target")
      .def_property_readonly("dim", &LogDensityTarget::dim)
      .def("evaluate", &LogDensityTarget::evaluate, py::arg("x"));

  py::class_<MvGaussianTarget, LogDensityTarget, std::shared_ptr<MvGaussianTarget>>(m, "MvGaussianTarget")
      .def(py::init<Vector, Matrix>(), py::arg("mean"), py::arg("precision"));

  py::class_<GlmTarget, LogDensityTarget, std::shared_ptr<GlmTarget>>(m, "GlmTarget");
  m.def(
      "poisson_target",
      [](Matrix x, Vector y) -> std::shared_ptr<LogDensityTarget> {
        return std::shared_ptr<GlmTarget>(make_poisson_target(GlmData{std::move(x), std::move(y)}));
      },
      py::arg("X"), py::arg("y"), "Poisson regression log-likelihood with log link.");

  py::class_<PyCallableTarget, LogDensityTarget, std::shared_ptr<PyCallableTarget>>(m, "CallableTarget")
      .def(py::init<py::function, Eigen::Index>(), py::arg("fn"), py::arg("dim"));

  m.def("poisson_base", [](double u, double y) {
    const auto d = poisson_base(u, y);
    return py::make_tuple(d.f0, d.g0, d.h0);
  });

  py::class_<GaussianFit>(m, "GaussianFit")
      .def_readonly("mean", &GaussianFit::mean)
      .def_readonly("prec_chol", &GaussianFit::prec_chol)
      .def_readonly("log_det_prec", &GaussianFit::log_det_prec);
  m.def(
      "fit_gaussian",
      [](const Vector& at, double f, const Vector& g, const Matrix& h) {
        return fit_gaussian(at, DiffState{f, g, h});
      },
      py::arg("at"), py::arg("f"), py::arg("g"), py::arg("h"));
  m.def("log_pdf", &log_pdf, py::arg("fit"), py::arg("x"));
  m.def(
      "sample_fit",
      [](const GaussianFit& fit, std::uint64_t seed) {
        Rng rng(seed);
        return sample(fit, rng);
      },
      py::arg("fit"), py::arg("seed"));

  m.def(
      "make_partition",
      [](Eigen::Index k, Eigen::Index nsubset) { return make_partition(k, nsubset).subsets; },
      py::arg("k"), py::arg("nsubset"));
  m.def(
      "check_partition",
      [](const std::vector<std::vector<Eigen::Index>>& subsets, Eigen::Index k) {
        std::vector<std::string> out;
        for (const auto& v : check_partition(to_partition(subsets), k)) out.push_back(v.describe());
        return out;
      },
      py::arg("subsets"), py::arg("k"), "Empty list means valid (zero-based indices).");

  py::class_<ChainOutput>(m, "ChainOutput")
      .def_readonly("samples", &ChainOutput::samples)
      .def_readonly("lp", &ChainOutput::lp)
      .def_readonly("nr_end_state", &ChainOutput::nr_end_state)
      .def_readonly("gfit", &ChainOutput::gfit)
      .def_property_readonly("accepted",
                             [](const ChainOutput& c) {
                               std::vector<std::vector<bool>> out;
                               for (const auto& r : c.records) out.emplace_back(r.accepted.begin(), r.accepted.end());
                               return out;
                             })
      .def_property_readonly("mh_diag", [](const ChainOutput& c) {
        py::list out;
        for (std::size_t it = 0; it < c.records.size(); ++it) {
          for (std::size_t s = 0; s < c.records[it].mh.size(); ++s) {
            const MhDiag& d = c.records[it].mh[s];
            out.append(py::make_tuple(it + 1, s, d.log_p, d.log_p_prop, d.log_q, d.log_q_prop, d.accepted));
          }
        }
        return out;
      });

  m.def(
      "run",
      [](const Vector& x_init, const LogDensityTarget& target, std::size_t niter, std::size_t nnr,
         std::optional<std::vector<std::vector<Eigen::Index>>> part, std::uint64_t seed, bool mh_diag) {
        SamplerSpec spec;
        spec.niter = niter;
        spec.nnr = nnr;
        if (part) spec.part = to_partition(*part);
        spec.seed = seed;
        spec.collect_mh_diag = mh_diag;
        return run(x_init, target, spec);
      },
      py::arg("x_init"), py::arg("target"), py::arg("niter"), py::arg("nnr") = 0,
      py::arg("part") = py::none(), py::arg("seed") = 0, py::arg("mh_diag") = true);

  m.def(
      "summarize",
      [](const ChainOutput& chain, const LogDensityTarget* target, std::optional<std::size_t> nburnin,
         std::optional<std::size_t> end, std::size_t thin) {
        const ChainSummary s = summarize(chain, window_for(chain, nburnin, end, thin), target);
        py::dict d;
        d["dim"] = s.dim;
        d["niter"] = s.niter;
        d["nnr"] = s.nnr;
        d["nburnin"] = s.window.nburnin;
        d["end"] = s.window.end;
        d["thin"] = s.window.thin;
        d["nominal_sample_size"] = s.nominal_sample_size;
        d["acceptance_rate"] = s.acceptance_rate;
        d["reldev_mean"] = s.reldev_mean;
        py::list coords;
        for (const auto& c : s.coords) coords.append(stats_dict(c));
        d["coordinates"] = coords;
        d["text"] = render(s);
        return d;
      },
      py::arg("chain"), py::arg("target") = nullptr, py::arg("nburnin") = py::none(),
      py::arg("end") = py::none(), py::arg("thin") = 1);

  m.def("ess", [](const std::vector<double>& x) { return ess(x); }, py::arg("x"));
  m.def("sample_p_value", [](const std::vector<double>& x) { return sample_p_value(x); }, py::arg("x"));

  m.def(
      "predict",
      [](const ChainOutput& chain, py::function fpred, std::optional<std::size_t> nburnin,
         std::optional<std::size_t> end, std::size_t thin) {
        Predictor p{[fpred](const Vector& beta, RandomStream*) { return fpred(beta).cast<Vector>(); },
                    PredictionKind::Deterministic};
        return predict(chain, p, window_for(chain, nburnin, end, thin)).values;
      },
      py::arg("chain"), py::arg("fpred"), py::arg("nburnin") = py::none(), py::arg("end") = py::none(),
      py::arg("thin") = 1, "Apply fpred(state) -> vector to each retained sample (M x S result).");
  m.def(
      "predict_poisson",
      [](const ChainOutput& chain, Matrix x_new, bool draw, std::uint64_t seed,
         std::optional<std::size_t> nburnin) {
        Rng rng(seed);
        const Predictor p = draw ? poisson_draw_predictor(std::move(x_new)) : poisson_mean_predictor(std::move(x_new));
        return predict(chain, p, window_for(chain, nburnin, std::nullopt, 1), &rng).values;
      },
      py::arg("chain"), py::arg("X_new"), py::arg("draw") = false, py::arg("seed") = 0,
      py::arg("nburnin") = py::none());

  m.def(
      "simulate_poisson",
      [](Eigen::Index n, Eigen::Index k, std::uint64_t seed) {
        auto sim = simulate_poisson(n, k, seed);
        return py::make_tuple(sim.data.x, sim.data.y, sim.beta);
      },
      py::arg("n"), py::arg("k"), py::arg("seed") = 0);
}
