#include "morphshop/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "morphshop/api.hpp"
#include "morphshop/service.hpp"

namespace morphshop::cli {

namespace {

using io::Json;

std::string scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v == static_cast<double>(static_cast<long long>(v))) return std::to_string(static_cast<long long>(v));
    std::ostringstream s;
    s << v;
    return s.str();
  }
  return j.dump();
}

std::string vectorText(const Json& w, const Json& n) {
  std::string s = "(" + scalar(w) + ";";
  for (std::size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + scalar(n[i]);
  return s + ")";
}

std::string selectionText(const Json& sel) {
  std::string s;
  for (const auto& [c, da] : sel.items()) s += (s.empty() ? "" : "*") + da.get<std::string>();
  return s.empty() ? "-" : s;
}

std::string joinText(const Json& arr, const char* sep) {
  std::string s;
  for (const auto& x : arr) s += (s.empty() ? "" : sep) + scalar(x);
  return s.empty() ? "-" : s;
}

std::string table(const std::vector<std::string>& headers, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) width[c] = headers[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      s += cells[c];
      if (c + 1 < cells.size()) s += std::string(width[c] - cells[c].size() + 2, ' ');
    }
    return s + "\n";
  };
  std::string out = line(headers);
  for (const auto& row : rows) out += line(row);
  return out;
}

std::string keyValues(const Json& obj) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [k, v] : obj.items()) {
    std::string text;
    if (v.is_object() && k != "counts" && !v.empty() && v.begin()->is_string())
      text = selectionText(v);
    else if (v.is_array() && (v.empty() || !v.front().is_array()))
      text = joinText(v, ",");
    else if (v.is_object() || v.is_array())
      text = v.dump();
    else
      text = scalar(v);
    rows.push_back({k, text});
  }
  return table({"field", "value"}, rows);
}

std::string renderTable(const std::string& command, const Json& j) {
  std::vector<std::vector<std::string>> rows;
  if (command == "rank") {
    for (std::size_t l = 0; l < j["layers"].size(); ++l)
      for (const auto& id : j["layers"][l]) rows.push_back({id.get<std::string>(), std::to_string(l + 1)});
    return table({"item", "layer"}, rows);
  }
  if (command == "compose") {
    std::size_t i = 0;
    for (const auto& s : j) rows.push_back({std::to_string(++i), vectorText(s["w"], s["n"]), selectionText(s["selection"])});
    return table({"#", "N(S)", "selection"}, rows);
  }
  if (command == "trajectory") {
    std::size_t i = 0;
    for (const auto& t : j)
      rows.push_back({std::to_string(++i), vectorText(t["w"], t["n"]), scalar(t["totalXi"]), joinText(t["picks"], " -> ")});
    return table({"#", "N", "totalXi", "picks"}, rows);
  }
  if (command == "validate" && j.contains("violations")) {
    for (const auto& v : j["violations"]) rows.push_back({v["kind"].get<std::string>(), v["message"].get<std::string>()});
    return "kind: " + scalar(j["kind"]) + "\nvalid: " + scalar(j["valid"]) + "\n" +
           (rows.empty() ? std::string() : table({"violation", "message"}, rows));
  }
  return keyValues(j);
}

std::string detectKind(const Json& j) {
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  if (j.contains("tree")) return "model";
  if (j.contains("criteria")) return "criteria";
  if (j.contains("groups")) return "mckp";
  if (j.contains("stages")) return "trajectory";
  if (j.contains("prototypes")) return "aggregation";
  if (j.contains("items")) return "knapsack";
  throw ParseError("cannot tell which kind of document this is");
}

Json readJsonArg(const std::string& arg) {
  // Inline JSON or a path.
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return io::parseText(arg);
  return io::readFile(arg);
}

struct Emitter {
  std::ostream& out;
  std::string format;
  std::string outputPath;

  void operator()(const std::string& command, const Json& j) const {
    const std::string text = format == "table" ? renderTable(command, j) : io::dump(j);
    if (outputPath.empty() || outputPath == "-") {
      out << text;
      return;
    }
    std::ofstream file(outputPath, std::ios::binary);
    if (!file) throw ParseError("cannot write '" + outputPath + "'");
    file << text;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Morphological product configuration engine", "morphshop"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::string outputPath;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("-o,--output", outputPath, "Write the result to a file instead of stdout");

  // validate
  std::string validateInput, validateKind = "auto", selectionArg;
  auto* validateCmd = app.add_subcommand("validate", "Check a document (and optionally a selection against a model)");
  validateCmd->add_option("input", validateInput, "Document to check")->required()->check(CLI::ExistingFile);
  validateCmd->add_option("--kind", validateKind, "Document kind")
      ->check(CLI::IsMember({"auto", "model", "criteria", "knapsack", "mckp", "aggregation", "trajectory"}));
  validateCmd->add_option("--selection", selectionArg, "Selection file or inline JSON (model documents only)");

  // rank
  std::string rankInput, method = "layers";
  double threshold = ranking::kDefaultConcordanceThreshold;
  auto* rankCmd = app.add_subcommand("rank", "Partition items of a criteria table into quality layers");
  rankCmd->add_option("input", rankInput, "Criteria table")->required()->check(CLI::ExistingFile);
  rankCmd->add_option("--method", method, "Ranking method")->check(CLI::IsMember({"layers", "outrank"}));
  rankCmd->add_option("--threshold", threshold, "Concordance threshold for outranking");

  // compose
  std::string composeInput, node, mode = "leaf";
  std::size_t maxSolutions = 1'000'000;
  bool paretoOnly = true;
  auto* composeCmd = app.add_subcommand("compose", "Compose the Pareto-efficient solutions of a model node");
  composeCmd->add_option("input", composeInput, "Model file")->required()->check(CLI::ExistingFile);
  composeCmd->add_option("--node", node, "Tree node (default: root)");
  composeCmd->add_option("--mode", mode, "Excellence over all leaves or over the node's parts")
      ->check(CLI::IsMember({"leaf", "level"}));
  composeCmd->add_option("--max-solutions", maxSolutions, "Enumeration cap")->envname("MORPHSHOP_MAX_SOLUTIONS");
  composeCmd->add_option("--pareto-only", paretoOnly, "Keep only nondominated solutions (true|false)");

  // aggregate
  std::string aggregateInput, aggregateModel, aggregateStrategy, aggregateSolver;
  std::optional<int> lambda;
  std::optional<double> aggregateBudget;
  auto* aggregateCmd = app.add_subcommand("aggregate", "Aggregate prototype solutions");
  aggregateCmd->add_option("input", aggregateInput, "Aggregation request")->required()->check(CLI::ExistingFile);
  aggregateCmd->add_option("--model", aggregateModel, "Model the prototypes belong to")->check(CLI::ExistingFile);
  aggregateCmd->add_option("--strategy", aggregateStrategy, "Override the request strategy")
      ->check(CLI::IsMember({"extend", "compress", "newdesign", "median"}));
  aggregateCmd->add_option("--solver", aggregateSolver, "Override the request solver")
      ->check(CLI::IsMember({"greedy", "exact"}));
  aggregateCmd->add_option("--lambda", lambda, "Override the kernel threshold");
  aggregateCmd->add_option("--budget", aggregateBudget, "Override the budget");

  // trajectory
  std::string trajectoryInput;
  std::size_t trajectoryCap = 1'000'000;
  auto* trajectoryCmd = app.add_subcommand("trajectory", "Synthesize Pareto trajectories over stages");
  trajectoryCmd->add_option("input", trajectoryInput, "Trajectory request")->required()->check(CLI::ExistingFile);
  trajectoryCmd->add_option("--max-solutions", trajectoryCap, "Enumeration cap")->envname("MORPHSHOP_MAX_SOLUTIONS");

  // solve
  std::string solveInput, solver = "greedy";
  std::optional<double> solveBudget;
  auto* solveCmd = app.add_subcommand("solve", "Run a knapsack solver");
  solveCmd->require_subcommand(1);
  auto* knapsackCmd = solveCmd->add_subcommand("knapsack", "0-1 knapsack");
  auto* mckpCmd = solveCmd->add_subcommand("mckp", "Multiple-choice knapsack");
  for (auto* sub : {knapsackCmd, mckpCmd}) {
    sub->add_option("input", solveInput, "Instance file")->required()->check(CLI::ExistingFile);
    sub->add_option("--solver", solver, "Solver")->check(CLI::IsMember({"greedy", "exact"}));
    sub->add_option("--budget", solveBudget, "Override the instance budget");
  }

  // serve
  int port = 8080;
  std::string host = "0.0.0.0", storeDir, uiDir;
  std::size_t serveCap = 1'000'000;
  auto* serveCmd = app.add_subcommand("serve", "Start the HTTP service");
  serveCmd->add_option("--port", port, "Port")->check(CLI::Range(0, 65535));
  serveCmd->add_option("--host", host, "Bind address");
  serveCmd->add_option("--store-dir", storeDir, "Persist uploaded models here");
  serveCmd->add_option("--ui-dir", uiDir, "Static files served at /")->check(CLI::ExistingDirectory);
  serveCmd->add_option("--max-solutions", serveCap, "Enumeration cap")->envname("MORPHSHOP_MAX_SOLUTIONS");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }

  const Emitter emit{out, format, outputPath};
  try {
    if (*validateCmd) {
      const Json doc = io::readFile(validateInput);
      const std::string kind = validateKind == "auto" ? detectKind(doc) : validateKind;
      Json result = {{"kind", kind}, {"valid", true}};
      if (kind == "model") {
        const auto model = io::loadModel(doc);
        if (!selectionArg.empty()) {
          const auto violations = morphshop::validateSelection(model, io::parseSelection(readJsonArg(selectionArg)));
          result["violations"] = io::toJson(violations);
          result["valid"] = violations.empty();
        }
      } else if (!selectionArg.empty()) {
        err << "usage error: --selection applies to model documents only\n";
        return kUsageError;
      } else if (kind == "criteria") {
        ranking::validate(io::parseCriteriaTable(doc));
      } else if (kind == "knapsack") {
        solvers::validate(io::parseKnapsack(doc));
      } else if (kind == "mckp") {
        solvers::validate(io::parseMultiChoice(doc));
      } else if (kind == "trajectory") {
        trajectory::validate(io::parseStageCatalog(doc));
      } else {
        const auto req = io::parseAggregationRequest(doc);
        aggregation::PrototypeSet protos;
        protos.components = req.components;
        if (protos.components.empty() && !req.prototypes.empty())
          for (const auto& [c, da] : req.prototypes.front()) protos.components.push_back(c);
        protos.prototypes = req.prototypes;
        aggregation::validate(protos);
      }
      emit("validate", result);
      return result["valid"].get<bool>() ? kOk : kValidationFailure;
    }
    if (*rankCmd) {
      const auto table = io::parseCriteriaTable(io::readFile(rankInput));
      const auto layers = method == "layers" ? ranking::dominanceLayers(table) : ranking::outrankLayers(table, threshold);
      emit("rank", io::toJson(layers));
      return kOk;
    }
    if (*composeCmd) {
      const auto model = io::loadModelFile(composeInput);
      synthesis::ComposeOptions opts;
      opts.maxSolutions = maxSolutions;
      opts.paretoOnly = paretoOnly;
      opts.mode = mode == "level" ? synthesis::Mode::Level : synthesis::Mode::Leaf;
      emit("compose", api::compose(model, node.empty() ? model.root().id : node, opts));
      return kOk;
    }
    if (*aggregateCmd) {
      auto req = io::parseAggregationRequest(io::readFile(aggregateInput));
      if (!aggregateStrategy.empty()) req.strategy = aggregateStrategy;
      if (!aggregateSolver.empty())
        req.solver = aggregateSolver == "exact" ? aggregation::SolverKind::Exact : aggregation::SolverKind::Greedy;
      if (lambda) req.lambda = *lambda;
      if (aggregateBudget) req.budget = *aggregateBudget;
      std::optional<MorphModel> model;
      if (!aggregateModel.empty()) model = io::loadModelFile(aggregateModel);
      emit("aggregate", api::aggregate(req, model ? &*model : nullptr));
      return kOk;
    }
    if (*trajectoryCmd) {
      const auto catalog = io::parseStageCatalog(io::readFile(trajectoryInput));
      emit("trajectory", io::toJson(trajectory::synthesizeTrajectory(catalog, trajectoryCap)));
      return kOk;
    }
    if (*solveCmd) {
      const Json doc = io::readFile(solveInput);
      solvers::SolverResult result;
      if (*knapsackCmd) {
        auto inst = io::parseKnapsack(doc);
        if (solveBudget) inst.budget = *solveBudget;
        result = solver == "exact" ? solvers::knapsackExact(inst) : solvers::knapsackGreedy(inst);
      } else {
        auto inst = io::parseMultiChoice(doc);
        if (solveBudget) inst.budget = *solveBudget;
        result = solver == "exact" ? solvers::multiChoiceExact(inst) : solvers::multiChoiceGreedy(inst);
      }
      emit("solve", io::toJson(result));
      return kOk;
    }
    if (*serveCmd) {
      service::ServiceOptions opts;
      if (!storeDir.empty()) opts.storeDir = storeDir;
      opts.maxSolutions = serveCap;
      service::Service svc(opts);
      std::optional<std::filesystem::path> ui;
      if (!uiDir.empty()) ui = uiDir;
      err << "listening on " << host << ":" << port << "\n";
      if (!service::serve(svc, host, port, ui)) {
        err << "error: cannot listen on " << host << ":" << port << "\n";
        return kUsageError;
      }
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.code() << ": " << e.what();
    if (!e.path().empty()) err << " (at " << e.path() << ")";
    err << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
  return kUsageError;
}

}  // namespace morphshop::cli
