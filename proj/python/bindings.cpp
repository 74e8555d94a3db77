#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "asymtrunc/asymlip.hpp"
#include "asymtrunc/errors.hpp"
#include "asymtrunc/maximal.hpp"
#include "asymtrunc/report.hpp"
#include "asymtrunc/truncate.hpp"
#include "asymtrunc/verify/exponents.hpp"

namespace py = pybind11;
using namespace asymtrunc;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

GridSpec grid_of(const py::buffer_info& info, const std::vector<double>& spacing) {
  std::vector<std::size_t> sizes(info.shape.begin(), info.shape.end());
  std::vector<double> h = spacing;
  if (h.size() == 1 && sizes.size() > 1) h.assign(sizes.size(), spacing[0]);
  return GridSpec(sizes, h);
}

ScalarField to_field(const Array& a, const std::vector<double>& spacing) {
  const py::buffer_info info = a.request();
  GridSpec g = grid_of(info, spacing);
  const auto* p = static_cast<const double*>(info.ptr);
  return ScalarField(std::move(g), std::vector<double>(p, p + info.size));
}

Array to_array(const ScalarField& f) {
  std::vector<py::ssize_t> shape(f.grid.sizes.begin(), f.grid.sizes.end());
  Array out(shape);
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

py::array_t<bool> to_array(const Mask& m) {
  std::vector<py::ssize_t> shape(m.grid.sizes.begin(), m.grid.sizes.end());
  py::array_t<bool> out(shape);
  std::copy(m.cells.begin(), m.cells.end(), out.mutable_data());
  return out;
}

RadiusSet radii_from(const std::string& name, const GridSpec& g) {
  if (name == "full") return RadiusSet::full(g);
  if (name == "dyadic") return RadiusSet::dyadic(g);
  if (name == "auto") return RadiusSet::automatic(g);
  throw ValidationError("radii must be full, dyadic or auto");
}

py::dict truncation_dict(const TruncationResult& r) {
  py::dict d;
  d["field"] = to_array(r.field);
  d["kept"] = to_array(r.kept);
  d["inflation"] = r.inflation;
  d["modulus"] = r.modulus;
  d["bad_measure"] = r.bad_measure;
  d["changed_measure"] = r.changed_measure;
  d["t1"] = r.t1;
  d["t2"] = r.t2;
  d["agrees"] = r.agrees;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Asymmetric Lipschitz truncation and discrete maximal operators";
  m.attr("__version__") = library_version();

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  auto maximal = [](ScalarField (*op)(const ScalarField&, const RadiusSet&)) {
    return [op](const Array& v, std::vector<double> spacing, const std::string& radii) {
      const ScalarField f = to_field(v, spacing);
      return to_array(op(f, radii_from(radii, f.grid)));
    };
  };
  m.def("hl_maximal", maximal(&hl_maximal), py::arg("v"), py::arg("spacing") = std::vector<double>{1.0},
        py::arg("radii") = "auto", "Centered-cube maximal function of |v|.");
  m.def("composed_maximal", maximal(&composed_maximal), py::arg("v"),
        py::arg("spacing") = std::vector<double>{1.0}, py::arg("radii") = "auto",
        "Directional maximal functions applied along each axis in turn.");
  m.def(
      "aniso_maximal",
      [](const Array& v, std::vector<double> spacing, const std::string& radii) {
        const ScalarField f = to_field(v, spacing);
        return to_array(aniso_maximal(f, radii_from(radii, f.grid)));
      },
      py::arg("v"), py::arg("spacing") = std::vector<double>{1.0}, py::arg("radii") = "auto",
      "Box maximal function over all per-axis half-width combinations.");
  m.def(
      "directional_maximal",
      [](const Array& v, std::size_t axis, std::vector<double> spacing, const std::string& radii) {
        const ScalarField f = to_field(v, spacing);
        return to_array(directional_maximal(f, axis, radii_from(radii, f.grid)));
      },
      py::arg("v"), py::arg("axis"), py::arg("spacing") = std::vector<double>{1.0}, py::arg("radii") = "auto");

  m.def(
      "quasi_distance",
      [](std::vector<double> x, std::vector<double> y, double lam, double mu) {
        return d_vec(x, y, AsymMetricParams(lam, mu));
      },
      py::arg("x"), py::arg("y"), py::arg("lam"), py::arg("mu"));

  m.def(
      "extend",
      [](const Array& values, const py::array_t<bool, py::array::c_style | py::array::forcecast>& mask,
         double lam, double mu, std::vector<double> spacing, bool fast) {
        const ScalarField v = to_field(values, spacing);
        const py::buffer_info mi = mask.request();
        if (static_cast<std::size_t>(mi.size) != v.size()) throw ValidationError("mask and values differ in shape");
        Mask mk(v.grid);
        const bool* p = static_cast<const bool*>(mi.ptr);
        for (std::size_t i = 0; i < mk.size(); ++i) mk.set(i, p[i]);
        const SampleSet s(mk, v);
        const AsymMetricParams mp(lam, mu);
        const ExtensionResult r = fast ? mcshane_extend_fast(s, mp) : mcshane_extend(s, mp);
        return py::make_tuple(to_array(r.field), r.modulus, r.agrees);
      },
      py::arg("values"), py::arg("mask"), py::arg("lam"), py::arg("mu"),
      py::arg("spacing") = std::vector<double>{1.0}, py::arg("fast") = true,
      "Lower asymmetric McShane envelope; returns (field, modulus, agrees).");

  m.def(
      "asym_truncate",
      [](const Array& u, double lam, double mu, std::vector<double> spacing, double eps,
         std::optional<double> inflation, const std::string& radii) {
        const ScalarField f = to_field(u, spacing);
        const TruncationParams p{lam, mu, eps, inflation};
        return truncation_dict(asym_truncate(f, p, radii_from(radii, f.grid)));
      },
      py::arg("u"), py::arg("lam"), py::arg("mu"), py::arg("spacing") = std::vector<double>{1.0},
      py::arg("eps") = 1.0, py::arg("inflation") = py::none(), py::arg("radii") = "auto");
  m.def(
      "lipschitz_truncate",
      [](const Array& u, double lam, std::vector<double> spacing, const std::string& radii) {
        const ScalarField f = to_field(u, spacing);
        return truncation_dict(lipschitz_truncate(f, lam, radii_from(radii, f.grid)));
      },
      py::arg("u"), py::arg("lam"), py::arg("spacing") = std::vector<double>{1.0}, py::arg("radii") = "auto");

  m.def("improvement_step", &improvement_step, py::arg("r"), py::arg("q"));
  m.def("exponent_alpha", &exponent_alpha, py::arg("r"), py::arg("q"));
}
