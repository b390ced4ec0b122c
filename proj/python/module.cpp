#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "plift/cli.hpp"
#include "plift/config.hpp"
#include "plift/error.hpp"
#include "plift/ideals.hpp"
#include "plift/io.hpp"
#include "plift/lifting.hpp"
#include "plift/verify.hpp"

namespace py = pybind11;
using namespace plift;

namespace {

// Rationals cross the boundary as fractions.Fraction.
py::object to_py(const Rat& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::str(to_string(r)));
}

Rat from_py(const py::handle& h) { return parse_rat(py::str(h).cast<std::string>()); }

QVector vec_from_py(const py::sequence& s) {
  QVector v;
  for (const auto& h : s) v.push_back(from_py(h));
  return v;
}

py::list vec_to_py(const QVector& v) {
  py::list out;
  for (const Rat& r : v) out.append(to_py(r));
  return out;
}

Config config_from_py(const py::dict& d) {
  Config c{d["points"].cast<int>(), d["lines"].cast<std::vector<std::vector<int>>>()};
  require_valid(c);
  return c;
}

py::dict config_to_py(const Config& c) {
  py::dict d;
  d["points"] = c.n;
  d["lines"] = c.lines;
  return d;
}

py::list columns_to_py(const Realisation& r) {
  py::list cols;
  for (std::size_t j = 0; j < r.cols(); ++j) cols.append(vec_to_py(r.column(j)));
  return cols;
}

Realisation columns_from_py(const py::sequence& cols) {
  QMatrix r(3, cols.size());
  std::size_t j = 0;
  for (const auto& c : cols) {
    const QVector v = vec_from_py(c.cast<py::sequence>());
    if (v.size() != 3) throw Error(ErrorKind::SizeMismatch, "each column needs 3 coordinates");
    for (std::size_t i = 0; i < 3; ++i) r(i, j) = v[i];
    ++j;
  }
  return r;
}

py::dict lift_to_py(const LiftResult& l) {
  py::dict d;
  d["kind"] = std::string(to_string(l.kind));
  d["z"] = vec_to_py(l.z);
  d["columns"] = columns_to_py(l.realisation);
  return d;
}

py::dict report_to_py(const LiftabilityReport& r) {
  py::dict d;
  d["verdict"] = std::string(to_string(r.verdict));
  d["omega"] = r.omega;
  d["generic_rank"] = r.genericRank;
  py::list comps;
  for (const auto& c : r.components) {
    py::dict e;
    e["points"] = c.points;
    e["lines"] = c.lines;
    e["rank"] = c.rank;
    e["liftable"] = c.liftable;
    comps.append(e);
  }
  d["components"] = comps;
  d["trials"] = r.trials;
  d["deterministic"] = r.deterministic;
  d["error_bound"] = r.errorBound;
  return d;
}

GeneratorSet generators(const std::string& target, std::optional<py::dict> config, std::optional<std::size_t> k) {
  if (target == "qs") return qs_generators();
  if (target == "grid34") return g34_generators();
  if (target == "radical") {
    if (!config) throw Error(ErrorKind::InvalidConfig, "radical target needs a config");
    return radical_ideal_generators(config_from_py(*config), k);
  }
  throw Error(ErrorKind::UnknownFormat, "unknown target '" + target + "'");
}

}  // namespace

PYBIND11_MODULE(_plift, m) {
  m.doc() = "Exact lifting of collinear point tuples to point-line configurations";

  py::register_exception<Error>(m, "PliftError");

  m.def("quadset_config", [] { return config_to_py(quadset_config()); });
  m.def("grid3x3_config", [] { return config_to_py(grid3x3_config()); });
  m.def("grid3x4_config", [] { return config_to_py(grid3x4_config()); });
  m.def("grid_config", [](int rows, int cols) { return config_to_py(grid_config(rows, cols)); },
        py::arg("rows"), py::arg("cols"));
  m.def("load_config", [](const std::string& path) { return config_to_py(load_config(path)); });

  m.def("validate", [](const py::dict& d) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& v : validate(Config{d["points"].cast<int>(), d["lines"].cast<std::vector<std::vector<int>>>()}))
      out.emplace_back(v.kind, v.message);
    return out;
  });

  m.def("analyze", [](const py::dict& d) {
    const ConfigAnalysis a = analyze(config_from_py(d));
    py::dict out;
    out["omega"] = a.omega;
    out["is_forest"] = a.isForest;
    out["max_lines_per_point"] = a.maxLinesPerPoint;
    out["edges"] = a.graphEdges;
    return out;
  });

  m.def("config_of_realisation", [](const py::sequence& cols) {
    return config_to_py(config_of_realisation(columns_from_py(cols)));
  });

  m.def("collin_rank", [](const py::dict& d, const py::sequence& x) {
    return rank(*build_collin(config_from_py(d), vec_from_py(x)).numeric);
  });

  m.def("lift_space_dimension", [](const py::dict& d, const py::sequence& x) {
    return lift_space(build_collin(config_from_py(d), vec_from_py(x))).dimension;
  });

  m.def("check",
        [](const py::dict& d, int trials, std::uint64_t seed, bool deterministic) {
          return report_to_py(is_liftable_generic(config_from_py(d), trials, seed, deterministic));
        },
        py::arg("config"), py::arg("trials") = 8, py::arg("seed") = 0, py::arg("deterministic") = false);

  m.def("quasi_liftable",
        [](const py::dict& d, int trials, std::uint64_t seed) {
          return std::string(to_string(is_quasi_liftable(config_from_py(d), trials, seed).verdict));
        },
        py::arg("config"), py::arg("trials") = 8, py::arg("seed") = 0);

  m.def("lift",
        [](const py::dict& d, const py::sequence& x, int attempts, std::uint64_t seed) -> py::object {
          const auto l = lift(config_from_py(d), vec_from_py(x), attempts, seed);
          if (!l) return py::none();
          return lift_to_py(*l);
        },
        py::arg("config"), py::arg("abscissas"), py::arg("attempts") = 32, py::arg("seed") = 0);

  m.def("forest_lift", [](const py::dict& d, const py::sequence& x) {
    return lift_to_py(forest_lift(config_from_py(d), vec_from_py(x)));
  });

  m.def("project",
        [](const py::sequence& cols, const py::sequence& center, const py::sequence& line) {
          return vec_to_py(project(columns_from_py(cols), vec_from_py(center), vec_from_py(line)).abscissas);
        },
        py::arg("columns"), py::arg("center"), py::arg("target_line"));

  m.def("sample",
        [](const std::string& kind, std::uint64_t seed, int rows, int cols, int n) {
          SampleSpec s;
          s.seed = seed;
          s.rows = rows;
          s.cols = cols;
          s.n = n;
          if (kind == "quadset") s.kind = SampleSpec::Kind::Quadset;
          else if (kind == "grid") s.kind = SampleSpec::Kind::Grid;
          else if (kind == "collinear") s.kind = SampleSpec::Kind::Collinear;
          else throw Error(ErrorKind::UnknownFormat, "unknown sample kind '" + kind + "'");
          return columns_to_py(sample(s));
        },
        py::arg("kind"), py::arg("seed") = 0, py::arg("rows") = 3, py::arg("cols") = 4, py::arg("n") = 6);

  m.def("generators",
        [](const std::string& target, std::optional<py::dict> config, std::optional<std::size_t> k) {
          std::vector<std::tuple<std::string, std::uint32_t, std::string>> out;
          for (const auto& g : generators(target, config, k).entries)
            out.emplace_back(g.label, g.degree, to_plain(g.poly));
          return out;
        },
        py::arg("target"), py::arg("config") = py::none(), py::arg("k") = py::none());

  m.def("emit",
        [](const std::string& target, const std::string& format, std::optional<py::dict> config,
           std::optional<std::size_t> k) { return emit(generators(target, config, k), format); },
        py::arg("target"), py::arg("format") = "plain", py::arg("config") = py::none(), py::arg("k") = py::none());

  m.def("table1", [] {
    std::vector<bool> out;
    for (const auto& r : table1_verify()) out.push_back(r.pass);
    return out;
  });

  m.def("verify",
        [](const std::string& suite, int trials, std::uint64_t seed) {
          if (suite == "tfae-qs") return to_json(probe_tfae_qs(trials, seed));
          if (suite == "tfae-grid") return to_json(probe_tfae_grid(trials, seed));
          if (suite == "decomposition-qs") return to_json(probe_decomposition(Matroid::QS, trials, seed));
          if (suite == "decomposition-grid") return to_json(probe_decomposition(Matroid::G34, trials, seed));
          throw Error(ErrorKind::UnknownFormat, "unknown suite '" + suite + "'");
        },
        py::arg("suite"), py::arg("trials") = 8, py::arg("seed") = 0);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = run(args, out, err);
    return std::make_tuple(status, out.str(), err.str());
  });
}
