#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "morphshop/api.hpp"

namespace py = pybind11;
using namespace morphshop;

namespace {

synthesis::Mode parseMode(const std::string& mode) {
  if (mode == "leaf") return synthesis::Mode::Leaf;
  if (mode == "level") return synthesis::Mode::Level;
  throw ValidationError("mode must be \"leaf\" or \"level\"", "mode");
}

}  // namespace

PYBIND11_MODULE(_morphshop, m) {
  m.doc() = "Morphological product configuration engine";

  static py::exception<Error> baseError(m, "MorphshopError", PyExc_ValueError);
  static py::exception<ExplosionError> explosionError(m, "ExplosionError", baseError.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ExplosionError& e) {
      py::set_error(explosionError, e.what());
    } catch (const Error& e) {
      const std::string msg = e.code() + ": " + e.what() + (e.path().empty() ? "" : " (at " + e.path() + ")");
      py::set_error(baseError, msg.c_str());
    }
  });

  py::class_<MorphModel>(m, "Model")
      .def_static("from_json", [](const std::string& text) { return io::loadModelText(text); }, py::arg("text"))
      .def("to_json", [](const MorphModel& model) { return io::saveModel(model); })
      .def_property_readonly("root_id", [](const MorphModel& model) { return model.root().id; })
      .def_property_readonly("component_ids",
                             [](const MorphModel& model) {
                               std::vector<std::string> ids;
                               for (const auto& c : model.components()) ids.push_back(c.id);
                               return ids;
                             })
      .def("compat", [](const MorphModel& model, const std::string& a, const std::string& b) { return model.compat(a, b); });

  m.def(
      "compose",
      [](const MorphModel& model, const std::string& node, bool paretoOnly, std::size_t maxSolutions,
         const std::string& mode) {
        synthesis::ComposeOptions opts;
        opts.paretoOnly = paretoOnly;
        opts.maxSolutions = maxSolutions;
        opts.mode = parseMode(mode);
        return io::dump(api::compose(model, node.empty() ? model.root().id : node, opts));
      },
      py::arg("model"), py::arg("node") = "", py::arg("pareto_only") = true, py::arg("max_solutions") = 1'000'000,
      py::arg("mode") = "leaf");

  m.def(
      "evaluate",
      [](const MorphModel& model, const Selection& selection) { return io::dump(api::evaluate(model, selection)); },
      py::arg("model"), py::arg("selection"));

  m.def(
      "rank",
      [](const std::string& text, const std::string& method, double threshold) {
        const auto table = io::parseCriteriaTable(io::parseText(text));
        if (method == "layers") return io::dump(io::toJson(ranking::dominanceLayers(table)));
        if (method == "outrank") return io::dump(io::toJson(ranking::outrankLayers(table, threshold)));
        throw ValidationError("method must be \"layers\" or \"outrank\"", "method");
      },
      py::arg("table"), py::arg("method") = "layers", py::arg("threshold") = ranking::kDefaultConcordanceThreshold);

  m.def(
      "solve_knapsack",
      [](const std::string& text, const std::string& solver, std::optional<double> budget) {
        auto inst = io::parseKnapsack(io::parseText(text));
        if (budget) inst.budget = *budget;
        return io::dump(io::toJson(solver == "exact" ? solvers::knapsackExact(inst) : solvers::knapsackGreedy(inst)));
      },
      py::arg("instance"), py::arg("solver") = "greedy", py::arg("budget") = std::nullopt);

  m.def(
      "solve_mckp",
      [](const std::string& text, const std::string& solver, std::optional<double> budget) {
        auto inst = io::parseMultiChoice(io::parseText(text));
        if (budget) inst.budget = *budget;
        return io::dump(
            io::toJson(solver == "exact" ? solvers::multiChoiceExact(inst) : solvers::multiChoiceGreedy(inst)));
      },
      py::arg("instance"), py::arg("solver") = "greedy", py::arg("budget") = std::nullopt);

  m.def(
      "aggregate",
      [](const std::string& text, const MorphModel* model) {
        return io::dump(api::aggregate(io::parseAggregationRequest(io::parseText(text)), model));
      },
      py::arg("request"), py::arg("model") = nullptr);

  m.def(
      "trajectory", [](const std::string& text) { return io::dump(api::trajectory(io::parseStageCatalog(io::parseText(text)))); },
      py::arg("request"));
}
