#include "morphshop/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace morphshop::io {

namespace {

std::string typeName(const Json& j) { return j.type_name(); }

// Strict view of one JSON object: rejects unknown keys up front.
class Obj {
 public:
  Obj(const Json& j, std::string path, std::initializer_list<std::string_view> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ParseError("expected an object, got " + typeName(j), path_);
    for (const auto& [key, value] : j.items())
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw ParseError("unknown field '" + key + "'", sub(key));
  }

  std::string sub(std::string_view key) const { return path_.empty() ? std::string(key) : path_ + "." + std::string(key); }
  bool has(std::string_view key) const { return j_.contains(key); }

  const Json& req(std::string_view key) const {
    auto it = j_.find(key);
    if (it == j_.end()) throw ParseError("missing field '" + std::string(key) + "'", sub(key));
    return *it;
  }

  std::string str(std::string_view key) const { return asString(req(key), sub(key)); }
  std::string str(std::string_view key, std::string fallback) const {
    return has(key) ? str(key) : std::move(fallback);
  }
  int integer(std::string_view key) const { return asInt(req(key), sub(key)); }
  int integer(std::string_view key, int fallback) const { return has(key) ? integer(key) : fallback; }
  double number(std::string_view key) const { return asNumber(req(key), sub(key)); }
  double number(std::string_view key, double fallback) const { return has(key) ? number(key) : fallback; }
  const Json& array(std::string_view key) const {
    const Json& a = req(key);
    if (!a.is_array()) throw ParseError("expected an array, got " + typeName(a), sub(key));
    return a;
  }
  static const Json& emptyArray() {
    static const Json empty = Json::array();
    return empty;
  }
  const Json& array(std::string_view key, bool) const { return has(key) ? array(key) : emptyArray(); }

  static std::string asString(const Json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError("expected a string, got " + typeName(j), path);
    return j.get<std::string>();
  }
  static int asInt(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ParseError("expected an integer, got " + typeName(j), path);
    const auto v = j.get<long long>();
    if (v < -1'000'000'000LL || v > 1'000'000'000LL) throw ParseError("integer out of range", path);
    return static_cast<int>(v);
  }
  static double asNumber(const Json& j, const std::string& path) {
    if (!j.is_number()) throw ParseError("expected a number, got " + typeName(j), path);
    return j.get<double>();
  }

 private:
  const Json& j_;
  std::string path_;
};

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

TreeNode parseTree(const Json& j, const std::string& path) {
  Obj o(j, path, {"id", "label", "children", "component", "composites"});
  TreeNode node;
  node.id = o.str("id");
  node.label = o.str("label", "");
  if (o.has("component")) node.component = o.str("component");
  if (o.has("children")) {
    if (node.component) throw ValidationError("node '" + node.id + "' has both children and a component", path);
    const Json& children = o.array("children");
    for (std::size_t i = 0; i < children.size(); ++i)
      node.children.push_back(parseTree(children[i], idx(o.sub("children"), i)));
  }
  const Json& composites = o.array("composites", true);
  for (std::size_t i = 0; i < composites.size(); ++i) {
    const std::string cpath = idx(o.sub("composites"), i);
    Obj c(composites[i], cpath, {"id", "label", "selection"});
    node.composites.push_back({c.str("id"), c.str("label", ""), parseSelection(c.req("selection"), c.sub("selection"))});
  }
  return node;
}

Json treeToJson(const TreeNode& node) {
  Json j = {{"id", node.id}, {"label", node.label}};
  if (node.component) {
    j["component"] = *node.component;
  } else {
    Json children = Json::array();
    for (const auto& c : node.children) children.push_back(treeToJson(c));
    j["children"] = std::move(children);
  }
  if (!node.composites.empty()) {
    Json cs = Json::array();
    for (const auto& c : node.composites) cs.push_back({{"id", c.id}, {"label", c.label}, {"selection", toJson(c.selection)}});
    j["composites"] = std::move(cs);
  }
  return j;
}

std::vector<std::string> parseIdList(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError("expected an array, got " + typeName(j), path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(Obj::asString(j[i], idx(path, i)));
  return out;
}

solvers::KnapsackItem parseItem(const Json& j, const std::string& path) {
  Obj o(j, path, {"id", "cost", "profit"});
  return {o.str("id"), o.number("cost"), o.number("profit")};
}

aggregation::SolverKind parseSolverKind(const std::string& s, const std::string& path) {
  if (s == "greedy") return aggregation::SolverKind::Greedy;
  if (s == "exact") return aggregation::SolverKind::Exact;
  throw ParseError("solver must be \"greedy\" or \"exact\"", path);
}

}  // namespace

Json parseText(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json readFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseText(buf.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

ModelSpec parseModelSpec(const Json& j) {
  Obj o(j, "", {"priorityScaleMax", "compatScaleMax", "defaultCompat", "tree", "components", "compatibility"});
  ModelSpec spec;
  spec.priorityScaleMax = o.integer("priorityScaleMax", 3);
  spec.compatScaleMax = o.integer("compatScaleMax", 3);
  if (o.has("defaultCompat")) spec.defaultCompat = o.integer("defaultCompat");
  spec.root = parseTree(o.req("tree"), "tree");
  const Json& comps = o.array("components");
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const std::string cpath = idx("components", c);
    Obj co(comps[c], cpath, {"id", "label", "alternatives"});
    Component comp{co.str("id"), co.str("label", ""), {}};
    const Json& alts = co.array("alternatives");
    for (std::size_t a = 0; a < alts.size(); ++a) {
      Obj ao(alts[a], idx(co.sub("alternatives"), a), {"id", "label", "priority"});
      comp.alternatives.push_back({ao.str("id"), ao.str("label", ""), ao.integer("priority", 1), comp.id});
    }
    spec.components.push_back(std::move(comp));
  }
  const Json& compat = o.array("compatibility", true);
  for (std::size_t i = 0; i < compat.size(); ++i) {
    Obj e(compat[i], idx("compatibility", i), {"a", "b", "value"});
    spec.compatibility.push_back({e.str("a"), e.str("b"), e.integer("value")});
  }
  return spec;
}

MorphModel loadModel(const Json& j) { return MorphModel::create(parseModelSpec(j)); }
MorphModel loadModelText(std::string_view text) { return loadModel(parseText(text)); }
MorphModel loadModelFile(const std::filesystem::path& path) { return loadModel(readFile(path)); }

Json modelToJson(const MorphModel& model) {
  const ModelSpec spec = model.toSpec();
  Json j;
  j["priorityScaleMax"] = spec.priorityScaleMax;
  j["compatScaleMax"] = spec.compatScaleMax;
  j["defaultCompat"] = spec.defaultCompat.value_or(spec.compatScaleMax);
  j["tree"] = treeToJson(spec.root);
  Json comps = Json::array();
  for (const auto& c : spec.components) {
    Json alts = Json::array();
    for (const auto& a : c.alternatives) alts.push_back({{"id", a.id}, {"label", a.label}, {"priority", a.priority}});
    comps.push_back({{"id", c.id}, {"label", c.label}, {"alternatives", std::move(alts)}});
  }
  j["components"] = std::move(comps);
  Json compat = Json::array();
  for (const auto& e : spec.compatibility) compat.push_back({{"a", e.a}, {"b", e.b}, {"value", e.value}});
  j["compatibility"] = std::move(compat);
  return j;
}

std::string saveModel(const MorphModel& model) { return dump(modelToJson(model)); }

Selection parseSelection(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError("expected an object mapping component id to DA id", path);
  Selection s;
  for (const auto& [key, value] : j.items()) s[key] = Obj::asString(value, path + "." + key);
  return s;
}

ranking::CriteriaTable parseCriteriaTable(const Json& j) {
  Obj o(j, "", {"criteria", "items"});
  ranking::CriteriaTable t;
  const Json& criteria = o.array("criteria");
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const std::string path = idx("criteria", i);
    Obj c(criteria[i], path, {"id", "direction", "weight"});
    ranking::Criterion crit;
    crit.id = c.str("id");
    const std::string dir = c.str("direction", "max");
    if (dir == "max")
      crit.direction = ranking::Direction::Maximize;
    else if (dir == "min")
      crit.direction = ranking::Direction::Minimize;
    else
      throw ParseError("direction must be \"max\" or \"min\"", c.sub("direction"));
    crit.weight = c.number("weight", 1.0);
    t.criteria.push_back(std::move(crit));
  }
  const Json& items = o.array("items");
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string path = idx("items", i);
    Obj it(items[i], path, {"id", "estimates"});
    ranking::Item item{it.str("id"), {}};
    const Json& est = it.array("estimates");
    for (std::size_t e = 0; e < est.size(); ++e) item.estimates.push_back(Obj::asNumber(est[e], idx(it.sub("estimates"), e)));
    t.items.push_back(std::move(item));
  }
  return t;
}

solvers::KnapsackInstance parseKnapsack(const Json& j) {
  Obj o(j, "", {"budget", "items"});
  solvers::KnapsackInstance inst;
  inst.budget = o.number("budget", 0.0);
  const Json& items = o.array("items");
  for (std::size_t i = 0; i < items.size(); ++i) inst.items.push_back(parseItem(items[i], idx("items", i)));
  return inst;
}

solvers::MultiChoiceInstance parseMultiChoice(const Json& j) {
  Obj o(j, "", {"budget", "groups"});
  solvers::MultiChoiceInstance inst;
  inst.budget = o.number("budget", 0.0);
  const Json& groups = o.array("groups");
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const std::string path = idx("groups", g);
    Obj go(groups[g], path, {"id", "items"});
    solvers::ItemGroup group{go.str("id"), {}};
    const Json& items = go.array("items");
    for (std::size_t i = 0; i < items.size(); ++i) group.items.push_back(parseItem(items[i], idx(go.sub("items"), i)));
    inst.groups.push_back(std::move(group));
  }
  return inst;
}

trajectory::StageCatalog parseStageCatalog(const Json& j) {
  Obj o(j, "", {"components", "stages"});
  trajectory::StageCatalog cat;
  cat.components = parseIdList(o.req("components"), "components");
  const Json& stages = o.array("stages");
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const std::string path = idx("stages", s);
    Obj so(stages[s], path, {"id", "solutions"});
    trajectory::Stage stage{so.str("id"), {}};
    const Json& sols = so.array("solutions");
    for (std::size_t i = 0; i < sols.size(); ++i) {
      const std::string spath = idx(so.sub("solutions"), i);
      Obj sol(sols[i], spath, {"id", "selection", "priority"});
      stage.solutions.push_back({sol.str("id"), parseSelection(sol.req("selection"), sol.sub("selection")),
                                 sol.integer("priority", 1)});
    }
    cat.stages.push_back(std::move(stage));
  }
  return cat;
}

AggregationRequest parseAggregationRequest(const Json& j) {
  Obj o(j, "", {"components", "prototypes", "priorities", "lambda", "additionOps", "budget", "strategy", "solver",
                "deletionCandidates", "requiredGain", "designAlternatives"});
  AggregationRequest r;
  if (o.has("components")) r.components = parseIdList(o.req("components"), "components");
  const Json& protos = o.array("prototypes");
  for (std::size_t i = 0; i < protos.size(); ++i) r.prototypes.push_back(parseSelection(protos[i], idx("prototypes", i)));
  if (o.has("priorities")) {
    const Json& p = o.req("priorities");
    if (!p.is_object()) throw ParseError("expected an object mapping DA id to priority", "priorities");
    for (const auto& [key, value] : p.items()) r.priorities[key] = Obj::asInt(value, "priorities." + key);
  }
  r.lambda = o.integer("lambda", 1);
  const Json& ops = o.array("additionOps", true);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    Obj op(ops[i], idx("additionOps", i), {"id", "component", "from", "to", "cost", "profit"});
    r.additionOps.push_back(
        {op.str("id"), op.str("component"), op.str("from"), op.str("to"), op.number("cost"), op.number("profit")});
  }
  r.budget = o.number("budget", 0.0);
  r.strategy = o.str("strategy", "extend");
  if (r.strategy != "extend" && r.strategy != "compress" && r.strategy != "newdesign" && r.strategy != "median")
    throw ParseError("strategy must be one of extend, compress, newdesign, median", "strategy");
  r.solver = parseSolverKind(o.str("solver", "greedy"), "solver");
  const Json& dels = o.array("deletionCandidates", true);
  for (std::size_t i = 0; i < dels.size(); ++i) {
    Obj d(dels[i], idx("deletionCandidates", i), {"id", "component", "da", "cost", "profit"});
    r.deletionCandidates.push_back({d.str("id"), d.str("component"), d.str("da"), d.number("cost"), d.number("profit")});
  }
  r.requiredGain = o.number("requiredGain", 0.0);
  const Json& das = o.array("designAlternatives", true);
  for (std::size_t i = 0; i < das.size(); ++i) {
    Obj d(das[i], idx("designAlternatives", i), {"da", "cost", "profit"});
    r.designAlternatives.push_back({d.str("da"), d.number("cost"), d.number("profit")});
  }
  return r;
}

Json toJson(const Selection& s) {
  Json j = Json::object();
  for (const auto& [c, da] : s) j[c] = da;
  return j;
}

Json toJson(const synthesis::ExcellenceVector& v) { return {{"w", v.w}, {"n", v.n}}; }

Json toJson(const synthesis::CompositeSolution& s) {
  Json j = {{"selection", toJson(s.selection)}, {"w", s.excellence.w}, {"n", s.excellence.n}};
  if (!s.parts.empty()) j["parts"] = s.parts;
  return j;
}

Json toJson(const std::vector<synthesis::CompositeSolution>& s) {
  Json j = Json::array();
  for (const auto& x : s) j.push_back(toJson(x));
  return j;
}

Json toJson(const ranking::LayerPartition& p) { return {{"layers", p.layers}, {"priorityOf", p.priorityOf}}; }

Json toJson(const solvers::SolverResult& r) {
  return {{"chosen", r.chosen}, {"totalCost", r.totalCost}, {"totalProfit", r.totalProfit}};
}

Json toJson(const SelectionViolation& v) {
  Json j = {{"kind", std::string(toString(v.kind))}, {"message", v.message}};
  if (!v.component.empty()) j["component"] = v.component;
  if (!v.alternative.empty()) j["alternative"] = v.alternative;
  if (v.kind == SelectionViolation::Kind::ZeroCompat) j["pair"] = {v.pair.first, v.pair.second};
  return j;
}

Json toJson(const std::vector<SelectionViolation>& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(toJson(x));
  return j;
}

Json toJson(const aggregation::KernelResult& k) {
  return {{"kernel", toJson(k.kernel)}, {"counts", k.counts}, {"lambda", k.lambda}};
}

Json toJson(const aggregation::Superstructure& s) {
  Json j = Json::object();
  for (const auto& [c, das] : s.perComponent) j[c] = std::vector<std::string>(das.begin(), das.end());
  return j;
}

Json toJson(const trajectory::Trajectory& t) {
  return {{"picks", t.picks}, {"w", t.w}, {"n", t.n}, {"totalXi", t.totalXi}};
}

Json toJson(const std::vector<trajectory::Trajectory>& t) {
  Json j = Json::array();
  for (const auto& x : t) j.push_back(toJson(x));
  return j;
}

Json errorBody(const Error& e) {
  Json j = {{"error", e.code()}, {"detail", e.what()}, {"path", e.path()}};
  if (const auto* ex = dynamic_cast<const ExplosionError*>(&e)) j["cap"] = ex->cap();
  return j;
}

}  // namespace morphshop::io
