#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdlib>
#include <memory>

#include "lcongr/checks.hpp"
#include "lcongr/dataset.hpp"
#include "lcongr/density.hpp"
#include "lcongr/errors.hpp"
#include "lcongr/kn.hpp"
#include "lcongr/matgrp.hpp"
#include "lcongr/modsym.hpp"
#include "lcongr/report.hpp"

namespace py = pybind11;
using namespace lcongr;

namespace {

// Reports cross the boundary as JSON text and come back as plain dicts.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

class Toolkit {
 public:
  Toolkit(const std::string& data, const std::string& cache) {
    data_ = ingest_dataset(data.empty() ? default_dataset_path() : std::filesystem::path(data));
    std::string dir = cache;
    if (dir.empty()) {
      if (const char* env = std::getenv("LCONGR_CACHE_DIR")) dir = env;
    }
    if (!dir.empty()) cache_ = std::make_unique<CoefficientCache>(dir);
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& c : data_.curves()) out.push_back(c.label);
    return out;
  }

  LSeries series(const std::string& label) const {
    return LSeries(data_.at(label), cache_ ? cache_->provider() : TableProvider());
  }

  py::object lvalue(const std::string& label) const {
    const LSeries L = series(label);
    const int w = L.root_number();
    Json j{{"curve", label}, {"conductor", L.curve().conductor}, {"root_number", w}, {"omega", number(L.omega())}};
    j["lratio"] = w == 1 ? to_json(L.lratio()) : Json(nullptr);
    return to_py(j);
  }

  std::string lratio(const std::string& label) const { return to_string(series(label).lratio()); }

  py::object twist(const std::string& label, const std::string& character) const {
    const LSeries L = series(label);
    const auto chi = parse_character(character);
    const bool clash = gcd(chi.conductor(), L.curve().conductor) != 1;
    const LValueReport r = clash ? L.algebraic_twisted_clash(chi) : L.algebraic_twisted(chi);
    Json j = to_json(r);
    j["integral"] = r.algebraic.is_integral();
    return to_py(j);
  }

  py::object modsym(const std::string& label, std::int64_t a, std::int64_t m) const {
    const LSeries L = series(label);
    return to_py(to_json(ModularSymbols(L).symbol(a, m, gcd(m, L.curve().conductor) != 1)));
  }

  py::object congruence(const std::string& label, const std::string& character) const {
    const LSeries L = series(label);
    return to_py(to_json(ModularSymbols(L).congruence_check(parse_character(character))));
  }

  py::object valuation(const std::string& label, std::int64_t q) const {
    return to_py(to_json(valuation_check(series(label), q)));
  }

  py::object section5() const {
    Json rows = Json::array();
    for (const Section5Row& r : run_section5(data_, default_section5_path(), cache_ ? cache_->provider() : TableProvider()))
      rows.push_back(to_json(r));
    return to_py(rows);
  }

  py::object density(const std::string& label, std::int64_t q, std::int64_t limit, bool with_prediction) const {
    const LSeries L = series(label);
    SweepResult s = sweep(L, q, limit);
    Json pred = nullptr;
    if (with_prediction && q == 3) {
      const Prediction p = predict(L, load_galois_tables(default_data_dir() / "galois_images.json"));
      attach_prediction(s, p.profile);
      pred = to_json(p);
    }
    Json j = to_json(s);
    j["prediction"] = pred;
    return to_py(j);
  }

  py::object kn_gcd(const std::string& label, std::int64_t sample) const {
    return to_py(to_json(estimate_gcd(series(label), 3, sample)));
  }

  py::object kn_record(const std::string& label, std::int64_t p, std::int64_t g) const {
    const LSeries L = series(label);
    return to_py(to_json(lcongr::kn_record(L, p, g > 0 ? g : estimate_gcd(L, 3, 20).gcd)));
  }

  py::object delta_prime(const std::string& label, std::int64_t limit) const {
    return to_py(to_json(lcongr::delta_prime(data_.at(label), limit)));
  }

 private:
  Dataset data_;
  std::unique_ptr<CoefficientCache> cache_;
};

py::object verify_tables(const std::string& which) {
  Json rows = Json::array();
  if (which == "conj") {
    for (std::int64_t q : {3, 5, 7, 11, 13}) rows.push_back(to_json(sl2_conjugacy_table(q)));
  } else if (which == "1" || which == "2") {
    const GaloisTables tables = load_galois_tables(default_data_dir() / "galois_images.json");
    for (const RowCheck& r : lcongr::verify_table(tables, std::stoi(which))) rows.push_back(to_json(r));
  } else {
    throw Error(ErrorKind::InvalidArgument, "which must be '1', '2' or 'conj'");
  }
  return to_py(rows);
}

}  // namespace

PYBIND11_MODULE(_lcongr, m) {
  m.doc() = "Congruences between twisted L-values of elliptic curves";

  py::exception<Error>(m, "LcongrError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object type = py::module_::import("lcongr._lcongr").attr("LcongrError");
      py::object exc = type(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  py::class_<Toolkit>(m, "Toolkit")
      .def(py::init<const std::string&, const std::string&>(), py::arg("data") = "", py::arg("cache") = "")
      .def("labels", &Toolkit::labels)
      .def("lvalue", &Toolkit::lvalue, py::arg("curve"))
      .def("lratio", &Toolkit::lratio, py::arg("curve"))
      .def("twist", &Toolkit::twist, py::arg("curve"), py::arg("character"))
      .def("modsym", &Toolkit::modsym, py::arg("curve"), py::arg("a"), py::arg("m"))
      .def("congruence", &Toolkit::congruence, py::arg("curve"), py::arg("character"))
      .def("valuation", &Toolkit::valuation, py::arg("curve"), py::arg("q") = 3)
      .def("section5", &Toolkit::section5)
      .def("density", &Toolkit::density, py::arg("curve"), py::arg("q") = 3, py::arg("limit") = 50000,
           py::arg("predict") = true)
      .def("kn_gcd", &Toolkit::kn_gcd, py::arg("curve"), py::arg("sample") = 20)
      .def("kn_record", &Toolkit::kn_record, py::arg("curve"), py::arg("p"), py::arg("gcd") = 0)
      .def("delta_prime", &Toolkit::delta_prime, py::arg("curve"), py::arg("limit") = 50000);

  m.def("verify_table", &verify_tables, py::arg("which"));
  m.def("sweep_residue",
        [](const std::string& lratio, std::int64_t points, std::int64_t q) {
          return sweep_residue(parse_rational(lratio), points, q);
        },
        py::arg("lratio"), py::arg("points"), py::arg("q") = 3);
}
