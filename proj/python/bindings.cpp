#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tsub/complete_finder.hpp"
#include "tsub/experiments.hpp"
#include "tsub/oracle.hpp"
#include "tsub/subdivision.hpp"
#include "tsub/transitive_finder.hpp"

namespace py = pybind11;
using namespace tsub;

namespace {

// Results cross the boundary as plain dicts via the JSON forms the CLI uses.
py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_py(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::dict verify_dict(const VerifyReport& report) { return to_py(to_json(report)).cast<py::dict>(); }

py::dict finder_dict(const Tournament& t, const std::optional<Subdivision>& witness,
                     const std::optional<FailureTrace>& failure) {
  py::dict d;
  d["witness"] = witness ? to_py(witness_to_json(*witness, tournament_hash(t))) : py::none();
  d["failure"] = failure ? to_py(to_json(*failure)) : py::none();
  return d;
}

py::dict finder_dict(const Tournament& t, const FinderResult& r) {
  py::dict d = finder_dict(t, r.witness, r.failure);
  d["terminal_case"] = r.terminal_case;
  d["stages"] = r.chain.stages.size();
  d["iterations"] = r.iterations;
  d["swaps"] = r.swaps;
  return d;
}

py::dict finder_dict(const Tournament& t, const TransitiveResult& r) {
  py::dict d = finder_dict(t, r.witness, r.failure);
  d["depth"] = r.depth;
  d["splits"] = r.splits;
  d["cross_pairs"] = r.cross_pairs;
  return d;
}

Subdivision witness_arg(const py::object& o) { return witness_from_json(from_py(o)); }

}  // namespace

PYBIND11_MODULE(_tsub, m) {
  m.doc() = "Short subdivisions in tournaments: generators, verifier, finders and exact oracle.";

  static py::exception<Error> error(m, "TsubError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = to_string(e.code());
      exc.attr("values") = py::cast(e.values());
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<Tournament>(m, "Tournament")
      .def(py::init<int>(), py::arg("n"), "Transitive tournament with i -> j for i < j.")
      .def_property_readonly("n", &Tournament::size)
      .def("__len__", &Tournament::size)
      .def("edge", &Tournament::edge, py::arg("u"), py::arg("v"))
      .def("orient", &Tournament::orient, py::arg("u"), py::arg("v"))
      .def("out_degree", &Tournament::out_degree)
      .def("in_degree", &Tournament::in_degree)
      .def("out_neighbours", [](const Tournament& t, int v) { return t.out(v).members(); })
      .def("to_text", &format_tournament)
      .def_static("from_text", &parse_tournament, py::arg("text"))
      .def("hash", &tournament_hash)
      .def("__eq__", [](const Tournament& a, const Tournament& b) { return a == b; })
      .def("__repr__", [](const Tournament& t) { return "<Tournament n=" + std::to_string(t.size()) + ">"; });

  m.def("random_tournament", &random_tournament, py::arg("n"), py::arg("seed"));
  m.def("transitive_tournament", &transitive_tournament, py::arg("n"));
  m.def("rotational_tournament", &rotational_tournament, py::arg("n"));
  m.def("blowup_cyclic_triangle", &blowup_cyclic_triangle, py::arg("class_size"));
  m.def("layered_tournament", py::overload_cast<const std::vector<int>&, std::uint64_t>(&layered_tournament),
        py::arg("block_sizes"), py::arg("seed"));
  m.def("mix_seed", &mix_seed, py::arg("seed"), py::arg("index"));

  m.def("min_out_degree", [](const Tournament& t) { return degree_profile(t).min_out; });
  m.def("min_in_degree", [](const Tournament& t) { return degree_profile(t).min_in; });

  m.def(
      "parse_pattern", [](const std::string& spec) { return to_py(to_json(parse_pattern(spec))); },
      py::arg("spec"), "complete:K, transitive:K, or edges:a>b,... as a dict.");

  m.def(
      "verify",
      [](const Tournament& t, const py::object& witness, int max_len, std::optional<int> exact_len) {
        return verify_dict(verify(t, witness_arg(witness), max_len, exact_len));
      },
      py::arg("host"), py::arg("witness"), py::arg("max_len") = 3, py::arg("exact_len") = py::none());

  m.def(
      "find_complete",
      [](const Tournament& t, int k, double scale) {
        py::gil_scoped_release release;
        auto r = find_complete_subdivision(t, k, FinderParams::for_k(k, scale));
        py::gil_scoped_acquire acquire;
        return finder_dict(t, r);
      },
      py::arg("host"), py::arg("k"), py::arg("scale") = 1.0);

  m.def(
      "find_digraph",
      [](const Tournament& t, const std::string& pattern, double scale) {
        const auto p = parse_pattern(pattern);
        py::gil_scoped_release release;
        auto r = find_digraph_subdivision(t, p, FinderParams::for_k(p.k, scale));
        py::gil_scoped_acquire acquire;
        return finder_dict(t, r);
      },
      py::arg("host"), py::arg("pattern"), py::arg("scale") = 1.0);

  m.def(
      "find_tt3",
      [](const Tournament& t, int k, double scale) {
        TransitiveParams params;
        params.scale = scale;
        py::gil_scoped_release release;
        auto r = find_tt_len3(t, k, params);
        py::gil_scoped_acquire acquire;
        return finder_dict(t, r);
      },
      py::arg("host"), py::arg("k"), py::arg("scale") = 1.0);

  m.def(
      "find_one_subdivision",
      [](const Tournament& t, int k, double scale) {
        TransitiveParams params;
        params.scale = scale;
        py::gil_scoped_release release;
        auto r = find_one_subdivision(t, k, params);
        py::gil_scoped_acquire acquire;
        return finder_dict(t, r);
      },
      py::arg("host"), py::arg("k"), py::arg("scale") = 1.0);

  m.def(
      "oracle",
      [](const Tournament& t, const std::string& pattern, int max_len, std::optional<int> exact_len,
         long long node_budget) {
        OracleQuery q{parse_pattern(pattern), max_len, exact_len, node_budget};
        OracleResult r;
        {
          py::gil_scoped_release release;
          r = oracle_subdivision(t, q);
        }
        py::dict d;
        d["status"] = to_string(r.status);
        d["nodes"] = r.nodes;
        d["witness"] = r.witness ? to_py(witness_to_json(*r.witness, tournament_hash(t))) : py::none();
        return d;
      },
      py::arg("host"), py::arg("pattern"), py::arg("max_len") = 3, py::arg("exact_len") = py::none(),
      py::arg("node_budget") = 100'000'000LL);

  m.def(
      "scan_d_lower",
      [](int k, int n_lo, int n_hi, int trials, std::uint64_t seed, int workers) {
        DkScan scan;
        {
          py::gil_scoped_release release;
          scan = scan_d_lower(k, n_lo, n_hi, trials, seed, workers);
        }
        py::list rows;
        for (const auto& r : scan.rows) {
          py::dict row;
          row["n"] = r.n;
          row["seed"] = r.seed;
          row["delta_plus"] = r.delta_plus;
          row["contains"] = r.contains;
          row["status"] = to_string(r.status);
          row["nodes"] = r.nodes;
          rows.append(row);
        }
        py::dict d;
        d["k"] = scan.k;
        d["max_delta_without"] = scan.max_delta_without;
        d["rows"] = rows;
        return d;
      },
      py::arg("k"), py::arg("n_lo"), py::arg("n_hi"), py::arg("trials") = 20, py::arg("seed") = 1,
      py::arg("workers") = 1);

  m.def(
      "soundness_sweep",
      [](const std::string& finder, int k, int n, int trials, double scale, std::uint64_t seed,
         const std::string& host, int workers) {
        SweepConfig cfg;
        cfg.finder = parse_sweep_finder(finder);
        cfg.k = k;
        cfg.n = n;
        cfg.trials = trials;
        cfg.scale = scale;
        cfg.seed = seed;
        cfg.host = host;
        cfg.workers = workers;
        SweepResult result;
        {
          py::gil_scoped_release release;
          result = soundness_sweep(cfg);
        }
        const auto columns = sweep_columns();
        py::list rows;
        for (const auto& cells : sweep_table(result)) {
          py::dict row;
          for (std::size_t i = 0; i < columns.size(); ++i) row[py::str(columns[i])] = cells[i];
          rows.append(row);
        }
        return rows;
      },
      py::arg("finder"), py::arg("k"), py::arg("n") = 300, py::arg("trials") = 100, py::arg("scale") = 0.125,
      py::arg("seed") = 1, py::arg("host") = "mixed", py::arg("workers") = 1);
}
