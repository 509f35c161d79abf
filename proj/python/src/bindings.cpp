#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "framelab/error.hpp"
#include "framelab/frame_io.hpp"
#include "framelab/generators.hpp"
#include "framelab/perturbation.hpp"
#include "framelab/report.hpp"
#include "framelab/retrieval.hpp"
#include "framelab/tensor.hpp"

namespace py = pybind11;
using namespace framelab;

namespace {

// Real arrays for real frames, complex otherwise.
py::object to_numpy(const Vector& v, Field field) {
  if (field == Field::real) return py::cast(Eigen::VectorXd(v.real()));
  return py::cast(v);
}

py::object to_numpy(const Matrix& m, Field field) {
  if (field == Field::real) return py::cast(Eigen::MatrixXd(m.real()));
  return py::cast(m);
}

bool is_complex_array(const py::array& a) { return a.dtype().kind() == 'c'; }

Vector vector_arg(const Frame& frame, const py::array& a) {
  Vector v = py::cast<Vector>(py::array_t<Complex, py::array::forcecast>(a));
  require_dim(frame, v, "vector");
  return v;
}

Frame make_frame(const py::array& vectors, std::optional<std::vector<double>> weights,
                 std::optional<std::string> field, std::optional<std::vector<std::string>> labels) {
  if (vectors.ndim() != 2) throw InvalidArgument("vectors must be a 2-D array (dim x atoms)");
  const Matrix m = py::cast<Matrix>(py::array_t<Complex, py::array::forcecast>(vectors));
  const Field f = field ? field_from_string(*field) : (is_complex_array(vectors) ? Field::complex : Field::real);
  std::vector<double> w = weights.value_or(std::vector<double>(static_cast<std::size_t>(m.cols()), 1.0));
  std::vector<std::optional<std::string>> l;
  if (labels) l.assign(labels->begin(), labels->end());
  return Frame(MeasureSpace(std::move(w), std::move(l)), m, f);
}

py::dict bounds_dict(const FrameBounds& b) {
  py::dict d;
  d["lower"] = b.lower;
  d["upper"] = b.upper;
  return d;
}

py::dict perturbation_dict(const PerturbationResult& r) {
  const Field field = r.perturbed.field();
  py::dict d;
  d["perturbed"] = r.perturbed;
  d["witness_f"] = to_numpy(r.witness_f, field);
  d["witness_g"] = to_numpy(r.witness_g, field);
  d["l2_distance"] = r.l2_distance;
  d["new_bounds"] = bounds_dict(r.new_bounds);
  return d;
}

py::dict certificate_dict(const Certificate& c) {
  py::dict d;
  d["verdict"] = to_string(c.verdict);
  d["method"] = c.method;
  d["field"] = to_string(c.field);
  d["witness_subset"] = c.witness_subset ? py::cast(*c.witness_subset) : py::none();
  d["witness_pair"] = c.witness_pair ? py::object(py::make_tuple(to_numpy(c.witness_pair->f, c.field),
                                                                   to_numpy(c.witness_pair->g, c.field)))
                                     : py::none();
  d["alpha_estimate"] = c.alpha_estimate ? py::cast(*c.alpha_estimate) : py::none();
  d["violation"] = c.violation ? py::cast(*c.violation) : py::none();
  return d;
}

py::object json_result(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_framelab, m) {
  m.doc() = "Finite-atom continuous frames: phase and norm retrieval certificates";

  auto base = py::register_exception<Error>(m, "FramelabError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def_readwrite("rank", &Tolerances::rank)
      .def_readwrite("orthogonality", &Tolerances::orthogonality)
      .def_readwrite("check", &Tolerances::check)
      .def_readwrite("enumeration_cap", &Tolerances::enumeration_cap);

  py::class_<Frame>(m, "Frame")
      .def(py::init(&make_frame), py::arg("vectors"), py::arg("weights") = py::none(),
           py::arg("field") = py::none(), py::arg("labels") = py::none(),
           "Frame from a dim x atoms array; the field follows the dtype unless given.")
      .def_property_readonly("dim", &Frame::dim)
      .def_property_readonly("size", &Frame::size)
      .def_property_readonly("field", [](const Frame& f) { return std::string(to_string(f.field())); })
      .def_property_readonly("weights", [](const Frame& f) { return Eigen::VectorXd(f.weights()); })
      .def_property_readonly("vectors", [](const Frame& f) { return to_numpy(f.vectors(), f.field()); })
      .def_property_readonly("labels",
                             [](const Frame& f) {
                               std::vector<std::optional<std::string>> out;
                               for (const Atom& a : f.space().atoms()) out.push_back(a.label);
                               return out;
                             })
      .def_property_readonly("eta", [](const Frame& f) { return eta(f.space()); })
      .def("to_json", [](const Frame& f) { return canonical_dump(frame_to_json(f)); })
      .def_static("from_json", [](const std::string& s) { return frame_from_json(nlohmann::json::parse(s)).frame; })
      .def("__len__", &Frame::size)
      .def("__repr__", [](const Frame& f) {
        return "<Frame dim=" + std::to_string(f.dim()) + " atoms=" + std::to_string(f.size()) +
               " field=" + to_string(f.field()) + ">";
      });

  m.def("load_frame", [](const std::string& path) { return load_frame(path).frame; }, py::arg("path"));
  m.def("save_frame", [](const std::string& path, const Frame& f) { save_frame(path, f); }, py::arg("path"),
        py::arg("frame"));

  m.def("onb", &gen_onb, py::arg("dim"));
  m.def("mercedes", &gen_mercedes);
  m.def("harmonic",
        [](int dim, int n, const std::string& field) { return gen_harmonic(dim, n, field_from_string(field)); },
        py::arg("dim"), py::arg("n"), py::arg("field") = "real");
  m.def("random_frame",
        [](int dim, int n, std::uint64_t seed, const std::string& field) {
          return gen_random(dim, n, seed, field_from_string(field));
        },
        py::arg("dim"), py::arg("n"), py::arg("seed") = 0, py::arg("field") = "real");
  m.def("deficient_plus_tail", &gen_deficient_plus_tail, py::arg("dim"), py::arg("head_dim"), py::arg("tail_len"),
        py::arg("seed") = 0, py::arg("tail_scale") = 0.1);
  m.def("quadrature_weights",
        [](double a, double b, int cells, const std::function<double(double)>& density) {
          return Eigen::VectorXd(quadrature_discretize(a, b, cells, density).weights());
        },
        py::arg("a"), py::arg("b"), py::arg("cells"), py::arg("density"));

  m.def("analysis",
        [](const Frame& f, const py::array& v) { return to_numpy(analysis(f, vector_arg(f, v)).values, Field::complex); },
        py::arg("frame"), py::arg("f"));
  m.def("synthesis",
        [](const Frame& f, const py::array& c) {
          const Vector coeffs = py::cast<Vector>(py::array_t<Complex, py::array::forcecast>(c));
          return to_numpy(synthesis(f, CoefficientVector{coeffs, f.weights()}), f.field());
        },
        py::arg("frame"), py::arg("coefficients"));
  m.def("frame_operator", [](const Frame& f) { return to_numpy(frame_operator(f), f.field()); });
  m.def("frame_bounds", [](const Frame& f) {
    const FrameBounds b = frame_bounds(f);
    return std::make_pair(b.lower, b.upper);
  });
  m.def("is_mu_complete", &is_mu_complete, py::arg("frame"), py::arg("tol") = Tolerances{}.rank);
  m.def("bessel_check", [](const Frame& f) {
    const BesselCheck c = bessel_norm_bound_check(f);
    py::dict d;
    d["bound"] = c.bound;
    d["max_norm"] = c.max_norm;
    d["holds"] = c.holds;
    return d;
  });
  m.def("magnitudes",
        [](const Frame& f, const py::array& v) {
          return Eigen::VectorXd(magnitudes(f, vector_arg(f, v)).values.real());
        },
        py::arg("frame"), py::arg("f"));
  m.def("lipschitz_check",
        [](const Frame& fr, const py::array& f, const py::array& g) {
          const LipschitzCheck c = lipschitz_check(fr, vector_arg(fr, f), vector_arg(fr, g));
          py::dict d;
          d["lhs"] = c.lhs;
          d["rhs"] = c.rhs;
          d["holds"] = c.holds;
          return d;
        },
        py::arg("frame"), py::arg("f"), py::arg("g"));
  m.def("apply_operator",
        [](const Frame& f, const py::array& op) {
          return apply_operator(f, py::cast<Matrix>(py::array_t<Complex, py::array::forcecast>(op)));
        },
        py::arg("frame"), py::arg("operator"));
  m.def("parsevalize", &parsevalize);
  m.def("tensor_product", [](const Frame& a, const Frame& b) { return tensor_product(a, b).product; });

  m.def("complement_property",
        [](const Frame& f, const Tolerances& t) { return certificate_dict(complement_property(f, t)); },
        py::arg("frame"), py::arg("tol") = Tolerances{});
  m.def("certify_pr",
        [](const Frame& f, const Tolerances& t, std::uint64_t seed) {
          AlphaOptions a;
          a.seed = seed;
          return certificate_dict(phase_retrieval_certify(f, t, a));
        },
        py::arg("frame"), py::arg("tol") = Tolerances{}, py::arg("seed") = 0);
  m.def("certify_nr",
        [](const Frame& f, const Tolerances& t) { return certificate_dict(norm_retrieval_certify(f, t)); },
        py::arg("frame"), py::arg("tol") = Tolerances{});
  m.def("norm_retrieval_oracle",
        [](const Frame& f, const Tolerances& t) { return certificate_dict(norm_retrieval_oracle(f, t)); },
        py::arg("frame"), py::arg("tol") = Tolerances{});
  m.def("alpha",
        [](const Frame& f, int restarts, int iters, std::uint64_t seed) {
          AlphaOptions o;
          o.restarts = restarts;
          o.iters = iters;
          o.seed = seed;
          const AlphaResult r = alpha_certify(f, o);
          py::dict d;
          d["alpha"] = r.alpha;
          d["f"] = to_numpy(r.argmin_f, f.field());
          d["g"] = to_numpy(r.argmin_g, f.field());
          d["traces"] = r.traces;
          return d;
        },
        py::arg("frame"), py::arg("restarts") = 16, py::arg("iters") = 500, py::arg("seed") = 0);
  m.def("biquadratic",
        [](const Frame& fr, const py::array& f, const py::array& g) {
          return biquadratic(fr, vector_arg(fr, f), vector_arg(fr, g));
        },
        py::arg("frame"), py::arg("f"), py::arg("g"));
  m.def("near_riesz", [](const Frame& f) { return near_riesz_detect(f); });

  m.def("break_pr",
        [](const Frame& f, const std::vector<std::size_t>& head, double eps) {
          return perturbation_dict(break_phase_retrieval(f, head, eps));
        },
        py::arg("frame"), py::arg("head"), py::arg("eps"));
  m.def("break_nr",
        [](const Frame& f, const std::vector<std::size_t>& subset, double eps) {
          const NormBreakResult r = break_norm_retrieval(f, subset, eps);
          py::dict d = perturbation_dict(r.result);
          d["scaled_inner"] = r.scaled_inner;
          d["w_inner"] = r.w_inner;
          d["subset_violates"] = r.subset_violates;
          d["certificate"] = r.certificate ? py::object(certificate_dict(*r.certificate)) : py::none();
          return d;
        },
        py::arg("frame"), py::arg("subset"), py::arg("eps"));
  m.def("stability_sweep",
        [](const Frame& f, const std::vector<double>& lambdas, int trials, std::uint64_t seed) {
          py::list rows;
          for (const SweepRow& r : stability_sweep(f, lambdas, trials, seed)) {
            py::dict d;
            d["lambda"] = r.lambda;
            d["all_preserved"] = r.all_preserved;
            d["failures"] = r.failures;
            rows.append(d);
          }
          return rows;
        },
        py::arg("frame"), py::arg("lambdas"), py::arg("trials") = 50, py::arg("seed") = 0);
  m.def("tensor_pr_check", [](const Frame& a, const Frame& b) {
    return json_result(to_json(tensor_pr_check(a, b)));
  });
  m.def("tensor_nr_check", [](const Frame& a, const Frame& b) {
    return json_result(to_json(tensor_nr_check(a, b)));
  });
}
