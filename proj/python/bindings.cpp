#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rbd/classify.hpp"
#include "rbd/datasets.hpp"
#include "rbd/decompose.hpp"
#include "rbd/errors.hpp"
#include "rbd/io.hpp"
#include "rbd/svd.hpp"
#include "rbd/weight.hpp"

namespace py = pybind11;
using namespace rbd;

namespace {

WeightSpec weight_from_args(const py::object& diag, const py::object& sparse) {
  if (!diag.is_none() && !sparse.is_none())
    throw InvalidArgument("pass at most one of diag and sparse");
  if (!diag.is_none()) return WeightSpec::diagonal(diag.cast<Vector>());
  if (!sparse.is_none()) return WeightSpec::sparse_spd(sparse.cast<SparseMatrix>());
  return WeightSpec::identity();
}

RbdConfig config_from_args(Index d_max, double eps_r, const py::object& diag,
                           const py::object& sparse, Index start_column,
                           bool reorthogonalize) {
  RbdConfig cfg;
  cfg.d_max = d_max;
  cfg.eps_R = eps_r;
  cfg.weight = weight_from_args(diag, sparse);
  cfg.start = StartSpec::column(start_column);
  cfg.reorthogonalize = reorthogonalize;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_rbd, m) {
  m.doc() = "Greedy reduced-basis matrix compression";

  py::register_exception<Error>(m, "RbdError");

  py::class_<RbdModel>(m, "Model")
      .def_property_readonly("Y", [](const RbdModel& s) { return s.Y; })
      .def_property_readonly("T", [](const RbdModel& s) { return s.T; })
      .def_property_readonly("d", [](const RbdModel& s) { return s.d; })
      .def_property_readonly("selected",
                             [](const RbdModel& s) { return s.selected; })
      .def_property_readonly(
          "residual_history",
          [](const RbdModel& s) { return s.residual_history; })
      .def("project",
           [](const RbdModel& s, const Vector& v) { return project(s, v); },
           py::arg("v"))
      .def("reconstruct",
           [](const RbdModel& s, const Vector& c) { return reconstruct(s, c); },
           py::arg("c"))
      .def("compress", [](const RbdModel& s) { return compress_matrix(s); })
      .def(
          "save",
          [](const RbdModel& s, const std::filesystem::path& path, double eps_r) {
            write_model(s, eps_r, path);
          },
          py::arg("path"), py::arg("eps_r") = 0.0);

  m.def(
      "decompose",
      [](const Matrix& x, Index d_max, double eps_r, const py::object& diag,
         const py::object& sparse, Index start_column, bool reorthogonalize) {
        return decompose(x, config_from_args(d_max, eps_r, diag, sparse,
                                             start_column, reorthogonalize));
      },
      py::arg("x"), py::arg("d_max"), py::arg("eps_r") = 0.0,
      py::arg("diag") = py::none(), py::arg("sparse") = py::none(),
      py::arg("start_column") = 0, py::arg("reorthogonalize") = false);

  m.def(
      "load",
      [](const std::filesystem::path& path) {
        LoadedModel loaded = read_model(path);
        return py::make_tuple(std::move(loaded.model), loaded.eps_r);
      },
      py::arg("path"));

  m.def(
      "truncated_svd",
      [](const Matrix& x, Index k) {
        SvdTriple t = truncated_svd(x, k);
        return py::make_tuple(std::move(t.U), std::move(t.s), std::move(t.V));
      },
      py::arg("x"), py::arg("k"));

  m.def(
      "svd_error_history",
      [](const Matrix& x, Index k_max, const std::string& norm) {
        return svd_error_history(
            x, k_max,
            norm == "max" ? ErrorNorm::max_entry : ErrorNorm::frobenius);
      },
      py::arg("x"), py::arg("k_max"), py::arg("norm") = "frobenius");

  m.def(
      "rbd_error_history",
      [](const Matrix& x, const RbdModel& model, const std::string& norm) {
        return rbd_error_history(
            x, model,
            norm == "max" ? ErrorNorm::max_entry : ErrorNorm::frobenius);
      },
      py::arg("x"), py::arg("model"), py::arg("norm") = "frobenius");

  m.def(
      "gen_grid_matrix",
      [](const std::string& func, Index n_points, std::array<double, 2> x_range,
         std::array<double, 2> y_range) {
        FunctionId id;
        if (func == "rank1")
          id = FunctionId::rank1;
        else if (func == "rank2")
          id = FunctionId::rank2;
        else if (func == "rank3")
          id = FunctionId::rank3;
        else if (func == "composite")
          id = FunctionId::composite;
        else
          throw InvalidArgument("unknown function: " + func);
        GridSpec g;
        g.n_points = n_points;
        g.x_range = x_range;
        g.y_range = y_range;
        return gen_grid_matrix(id, g);
      },
      py::arg("func"), py::arg("n_points") = 101,
      py::arg("x_range") = std::array<double, 2>{-1.0, 1.0},
      py::arg("y_range") = std::array<double, 2>{-1.0, 1.0});

  m.def(
      "gen_labeled_blobs",
      [](int n_classes, int per_class, int dim, double spread,
         std::uint64_t seed) {
        LabeledBlobs b = gen_labeled_blobs(n_classes, per_class, dim, spread, seed);
        return py::make_tuple(std::move(b.samples), std::move(b.labels));
      },
      py::arg("n_classes"), py::arg("per_class"), py::arg("dim"),
      py::arg("spread"), py::arg("seed"));

  py::class_<Classifier>(m, "Classifier")
      .def_property_readonly("model",
                             [](const Classifier& c) { return c.model; })
      .def_property_readonly("labels",
                             [](const Classifier& c) { return c.labels; })
      .def("predict",
           [](const Classifier& c, const Vector& v) { return predict(c, v); },
           py::arg("v"))
      .def(
          "evaluate",
          [](const Classifier& c, const Matrix& test,
             const std::vector<std::string>& labels) {
            return evaluate(c, test, labels);
          },
          py::arg("test"), py::arg("labels"));

  m.def(
      "fit",
      [](const Matrix& train, const std::vector<std::string>& labels,
         Index d_max, double eps_r, const py::object& diag,
         const py::object& sparse, Index start_column, bool reorthogonalize) {
        return fit(train, labels,
                   config_from_args(d_max, eps_r, diag, sparse, start_column,
                                    reorthogonalize));
      },
      py::arg("train"), py::arg("labels"), py::arg("d_max"),
      py::arg("eps_r") = 0.0, py::arg("diag") = py::none(),
      py::arg("sparse") = py::none(), py::arg("start_column") = 0,
      py::arg("reorthogonalize") = false);
}
