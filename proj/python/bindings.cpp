#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conevol/cli.hpp"
#include "conevol/errors.hpp"
#include "conevol/inverse.hpp"
#include "conevol/matroid.hpp"
#include "conevol/planar.hpp"
#include "conevol/polytope.hpp"
#include "conevol/semialg.hpp"

namespace py = pybind11;
using namespace conevol;

namespace {

NormalMatrix normals_of(const Eigen::MatrixXd& u) { return NormalMatrix(u); }

py::dict polytope_info(const Eigen::MatrixXd& u, const Eigen::VectorXd& b) {
  const HPolytope p = build_polytope(normals_of(u), b);
  const auto cv = cone_volume_vector(p);
  py::dict d;
  d["vertices"] = p.vertices();
  d["facet_measures"] = p.facet_measures();
  d["volume"] = p.volume();
  d["centroid"] = p.centroid();
  d["facets"] = p.facets();
  d["gamma"] = cv.gamma;
  return d;
}

py::dict scc(const Eigen::MatrixXd& u, const Eigen::VectorXd& gamma, double tol) {
  const auto v = scc_check(normals_of(u), gamma, tol);
  py::dict d;
  d["satisfies"] = v.satisfies();
  d["kind"] = to_string(v.kind);
  d["flat"] = v.flat;
  return d;
}

py::list solve(const Eigen::MatrixXd& u, const Eigen::VectorXd& gamma, int starts,
               std::uint64_t seed) {
  SolveOptions opts;
  opts.starts = starts;
  opts.seed = seed;
  py::list out;
  for (const auto& s : solve_inverse(normals_of(u), gamma, opts).solutions) {
    py::dict d;
    d["b"] = s.b;
    d["residual"] = s.residual;
    d["rank_defect"] = s.rank_defect;
    out.append(d);
  }
  return out;
}

py::list types(const Eigen::MatrixXd& u, int trials, std::uint64_t seed) {
  py::list out;
  for (const auto& t : sample_type_cones(normals_of(u), trials, seed)) {
    py::dict d;
    d["type_id"] = t.type_id;
    d["b"] = t.b;
    d["full_facet"] = t.full_facet;
    d["hits"] = t.hits;
    out.append(d);
  }
  return out;
}

py::list suite() {
  py::list out;
  for (const auto& r : cli::example_suite())
    out.append(py::make_tuple(r.module, r.name, r.pass, r.detail));
  return out;
}

}  // namespace

PYBIND11_MODULE(_conevol, m) {
  static py::exception<Error> error(m, "ConevolError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (e.qualified_code() + ": " + e.what()).c_str());
    }
  });

  m.def("cone_volumes",
        [](const Eigen::MatrixXd& u, const Eigen::VectorXd& b) { return cone_volumes(normals_of(u), b); },
        py::arg("normals"), py::arg("b"));
  m.def("polytope_info", &polytope_info, py::arg("normals"), py::arg("b"));
  m.def("normalize_to_unit_volume",
        [](const Eigen::MatrixXd& u, const Eigen::VectorXd& b) {
          return normalize_to_unit_volume(normals_of(u), b);
        },
        py::arg("normals"), py::arg("b"));
  m.def("scc_check", &scc, py::arg("normals"), py::arg("gamma"), py::arg("tol") = 1e-9);
  m.def("pscc_vertices",
        [](const Eigen::MatrixXd& u) { return build_pscc(normals_of(u)).vertices(); },
        py::arg("normals"));
  m.def("irreducible_partition",
        [](const Eigen::MatrixXd& u) { return irreducible_partition(normals_of(u)); },
        py::arg("normals"));
  m.def("trapezoid_membership",
        [](const std::array<double, 4>& g) { return trapezoid_membership(g); }, py::arg("gamma"));
  m.def("solve_inverse", &solve, py::arg("normals"), py::arg("gamma"), py::arg("starts") = 20,
        py::arg("seed") = 0);
  m.def("sample_type_cones", &types, py::arg("normals"), py::arg("trials"), py::arg("seed") = 0);
  m.def("example_suite", &suite);
}
