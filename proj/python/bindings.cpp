#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "facdirac/dirac2.hpp"
#include "facdirac/dirac4.hpp"
#include "facdirac/geometry.hpp"
#include "facdirac/hierarchy.hpp"
#include "facdirac/scenario.hpp"

namespace py = pybind11;
using namespace facdirac;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

py::array_t<Complex> to_numpy(const GridFunction& f) {
  py::array_t<Complex> out(static_cast<py::ssize_t>(f.size()));
  auto v = f.values();
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<Complex> to_numpy(const Spinor2& s) {
  const auto n = static_cast<py::ssize_t>(s.grid().size());
  py::array_t<Complex> out({py::ssize_t{2}, n});
  for (std::size_t c = 0; c < 2; ++c) {
    auto v = s[c].values();
    std::copy(v.begin(), v.end(), out.mutable_data(static_cast<py::ssize_t>(c)));
  }
  return out;
}

GridFunction from_numpy(const Grid& grid, const ComplexArray& a) {
  if (a.ndim() != 1 || static_cast<std::size_t>(a.shape(0)) != grid.size()) {
    throw Error("expected a 1D array of " + std::to_string(grid.size()) + " samples");
  }
  return GridFunction(grid, std::vector<Complex>(a.data(), a.data() + a.shape(0)));
}

Spinor2 spinor_from_numpy(const Grid& grid, const ComplexArray& a) {
  if (a.ndim() != 2 || a.shape(0) != 2 || static_cast<std::size_t>(a.shape(1)) != grid.size()) {
    throw Error("expected a (2, " + std::to_string(grid.size()) + ") array");
  }
  const auto n = static_cast<std::size_t>(a.shape(1));
  return make_spinor(GridFunction(grid, std::vector<Complex>(a.data(0), a.data(0) + n)),
                     GridFunction(grid, std::vector<Complex>(a.data(1), a.data(1) + n)));
}

py::dict entry_dict(const SpectrumEntry& e) {
  py::dict d;
  d["n"] = e.n;
  d["k"] = e.k;
  d["sign"] = std::string(1, sign_char(e.sign));
  d["epsilon"] = e.epsilon;
  d["orbital"] = e.labels.orbital;
  d["total"] = e.labels.total;
  return d;
}

ScenarioConfig config_from(const std::string& text, std::optional<std::uint64_t> seed) {
  auto c = parse_config(text);
  if (seed) c.seed = *seed;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Shape-invariant hierarchies and their Dirac-like 2x2 and 4x4 operators.";

  // Later registrations are tried first, so the subclass goes last.
  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

  py::enum_<Sign>(m, "Sign").value("plus", Sign::plus).value("minus", Sign::minus);
  py::enum_<Boundary>(m, "Boundary")
      .value("dirichlet", Boundary::dirichlet)
      .value("decay_truncation", Boundary::decay_truncation);
  py::enum_<Surface>(m, "Surface").value("sphere", Surface::sphere).value("hyperboloid", Surface::hyperboloid);
  py::enum_<Branch>(m, "Branch").value("plus_energy", Branch::plus_energy).value("minus_energy", Branch::minus_energy);

  py::class_<Grid>(m, "Grid")
      .def(py::init<double, double, int, Boundary>(), py::arg("x_min"), py::arg("x_max"), py::arg("n_points"),
           py::arg("boundary"))
      .def_property_readonly("x_min", &Grid::x_min)
      .def_property_readonly("x_max", &Grid::x_max)
      .def_property_readonly("n_points", &Grid::n_points)
      .def_property_readonly("spacing", &Grid::spacing)
      .def("nodes", [](const Grid& g) { return py::array_t<double>(static_cast<py::ssize_t>(g.size()), g.nodes().data()); })
      .def("__repr__", [](const Grid& g) {
        std::ostringstream s;
        s << "Grid(" << g.x_min() << ", " << g.x_max() << ", " << g.n_points() << ")";
        return s.str();
      });

  py::class_<Model>(m, "Model")
      .def_static("trig_pt", &Model::trig_pt)
      .def_static("hyp_pt", &Model::hyp_pt)
      .def_static("from_id", [](const std::string& id) { return Model::from_id(id); })
      .def_property_readonly("id", &Model::id)
      .def_property_readonly("increasing", [](const Model& m) { return m.kind() == HierarchyKind::increasing; })
      .def_property_readonly("n_min", &Model::n_min)
      .def("mu", &Model::mu)
      .def("k_max", &Model::k_max)
      .def("superpotential", &Model::superpotential)
      .def("default_grid", &Model::default_grid, py::arg("n_points") = 0)
      .def("shifted", &Model::shifted)
      .def("perturbed", &Model::perturbed)
      .def("__repr__", [](const Model& m) { return "Model('" + m.id() + "')"; });

  m.def("potential", [](const Model& model, int n, py::array_t<double, py::array::forcecast> x) {
    return py::vectorize([&](double v) { return potential(model, n, v); })(x);
  });
  m.def("scalar_energy", &scalar_energy);
  m.def("ladder_coefficient", &ladder_coefficient);
  m.def("eigenfunction", [](const Model& model, int n, int k, const Grid& g) { return to_numpy(eigenfunction(model, n, k, g)); });
  m.def("ground_state", [](const Model& model, int n, const Grid& g) { return to_numpy(ground_state(model, n, g)); });
  m.def("apply_schrodinger", [](const Model& model, int n, const Grid& g, const ComplexArray& f) {
    return to_numpy(apply_schrodinger(model, n, from_numpy(g, f)));
  });
  m.def("gaussian_test_functions", [](const Model& model, const Grid& g, std::uint64_t seed, int count) {
    py::list out;
    for (const auto& f : gaussian_test_functions(model, g, seed, count)) out.append(to_numpy(f));
    return out;
  });
  m.def("oracle_eigenvalues", [](const Model& model, int n, const Grid& g, int count) {
    std::vector<double> out;
    for (const auto& p : solve_symmetric_spectrum(schrodinger_oracle(model, n, g), count)) out.push_back(p.value);
    return out;
  });

  m.def("dirac_energy", [](const Model& model, int n, int k, Sign s) { return dirac_energy(DiracOperator(model, n), k, s); });
  m.def("dirac_spectrum", [](const Model& model, int n, int k_max) {
    py::list out;
    for (const auto& e : dirac_spectrum(DiracOperator(model, n), k_max)) out.append(entry_dict(e));
    return out;
  });
  m.def("numeric_dirac_spectrum", [](const Model& model, int n, int k_max, const Grid& g) {
    py::list out;
    for (const auto& e : numeric_dirac_spectrum(DiracOperator(model, n), k_max, g)) out.append(entry_dict(e));
    return out;
  });
  m.def("eigenspinor", [](const Model& model, int n, int k, Sign s, const Grid& g) {
    return to_numpy(eigenspinor(DiracOperator(model, n), k, s, g).spinor);
  });
  m.def("dirac_apply", [](const Model& model, int n, const Grid& g, const ComplexArray& psi) {
    return to_numpy(dirac_apply(DiracOperator(model, n), spinor_from_numpy(g, psi)));
  });
  m.def("dirac_eigen_residual", [](const Model& model, int n, double eps, const Grid& g, const ComplexArray& psi) {
    return dirac_eigen_residual(DiracOperator(model, n), eps, spinor_from_numpy(g, psi));
  });
  m.def("intertwine_residual", [](const Model& model, int n, const Grid& g, const ComplexArray& psi) {
    return intertwine_residual(model, n, spinor_from_numpy(g, psi));
  });
  m.def("anti_intertwine_residual", [](const Model& model, int n, const Grid& g, const ComplexArray& psi) {
    return anti_intertwine_residual(model, n, spinor_from_numpy(g, psi));
  });
  m.def("pseudo_hermiticity_residual", [](const Model& model, int n, const Grid& g) {
    return pseudo_hermiticity_residual(DiracOperator(model, n), g);
  });
  m.def("shift_to_massless", &shift_to_massless);

  m.def("massive_energy", [](const Model& model, int n, double m0, int k, Branch b) {
    return massive_energy(MassiveOperator(DiracOperator(model, n), m0), k, b);
  });
  m.def("massive_spectrum", [](const Model& model, int n, double m0, int k_max) {
    py::list out;
    for (const auto& l : massive_spectrum(MassiveOperator(DiracOperator(model, n), m0), k_max)) {
      py::dict d;
      d["n"] = l.n;
      d["k"] = l.k;
      d["energy"] = l.energy;
      d["degeneracy"] = l.degeneracy;
      out.append(d);
    }
    return out;
  });

  m.def("surface_model", &surface_model);
  m.def("reduce_scalar", [](Surface s, int n, const Grid& g, const ComplexArray& f) {
    return reduce_scalar(s, n, from_numpy(g, f));
  });
  m.def("reduce_spinor", [](Surface s, double mode, const Grid& g, const ComplexArray& psi) {
    return reduce_spinor(s, mode, spinor_from_numpy(g, psi));
  });
  m.def("casimir_labels", [](Surface s, int n, int k, Sign sign) {
    const auto l = casimir_labels(s, n, k, sign);
    return py::make_tuple(l.orbital, l.total);
  });

  m.def(
      "run_verify",
      [](const std::string& config_json, std::optional<std::uint64_t> seed) {
        const auto config = config_from(config_json, seed);
        const auto report = run_verify(config);
        py::list checks;
        for (const auto& c : report.checks) {
          py::dict d;
          d["name"] = c.name;
          d["residual"] = c.residual;
          d["tolerance"] = c.tolerance;
          d["pass"] = c.pass;
          checks.append(d);
        }
        return checks;
      },
      py::arg("config_json"), py::arg("seed") = py::none());
  m.def(
      "verify_report_json",
      [](const std::string& config_json, std::optional<std::uint64_t> seed) {
        const auto config = config_from(config_json, seed);
        std::ostringstream out;
        write_json(out, run_verify(config), config, false);
        return out.str();
      },
      py::arg("config_json"), py::arg("seed") = py::none());
  m.def("spectrum_csv", [](const std::string& config_json) {
    std::ostringstream out;
    write_csv(out, run_spectrum(parse_config(config_json)));
    return out.str();
  });
  m.def("plotdata_csv", [](const std::string& config_json) {
    std::ostringstream out;
    write_csv(out, run_plotdata(parse_config(config_json)));
    return out.str();
  });
  m.def("known_checks", &known_checks);
}
