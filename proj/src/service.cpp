#include "morphshop/service.hpp"

#include <fstream>
#include <vector>

#include "httplib.h"
#include "morphshop/api.hpp"

namespace morphshop::service {

namespace {

using io::Json;

Response json(int status, const Json& j) { return {status, io::dump(j), "application/json"}; }

Response error(int status, const std::string& code, const std::string& detail, const std::string& path = {}) {
  return json(status, {{"error", code}, {"detail", detail}, {"path", path}});
}

int statusFor(const Error& e) {
  if (dynamic_cast<const ExplosionError*>(&e)) return 409;
  return 400;
}

std::vector<std::string> splitPath(const std::string& path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : path) {
    if (c == '/') {
      if (!cur.empty()) parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(std::move(cur));
  return parts;
}

std::optional<std::size_t> idNumber(const std::string& id) {
  if (id.size() < 2 || id[0] != 'm') return std::nullopt;
  std::size_t n = 0;
  for (std::size_t i = 1; i < id.size(); ++i) {
    if (id[i] < '0' || id[i] > '9') return std::nullopt;
    n = n * 10 + static_cast<std::size_t>(id[i] - '0');
  }
  return n;
}

}  // namespace

ModelStore::ModelStore(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {
  if (!dir_) return;
  std::filesystem::create_directories(*dir_);
  for (const auto& entry : std::filesystem::directory_iterator(*dir_)) {
    if (entry.path().extension() != ".json") continue;
    const std::string id = entry.path().stem().string();
    const auto n = idNumber(id);
    if (!n) continue;
    models_[id] = std::make_shared<const MorphModel>(io::loadModelFile(entry.path()));
    next_ = std::max(next_, *n + 1);
  }
}

std::string ModelStore::add(MorphModel model) {
  std::unique_lock lock(mutex_);
  const std::string id = "m" + std::to_string(next_++);
  if (dir_) {
    const auto target = *dir_ / (id + ".json");
    const auto tmp = *dir_ / (id + ".json.tmp");
    {
      std::ofstream out(tmp, std::ios::binary);
      out << io::saveModel(model);
    }
    std::filesystem::rename(tmp, target);
  }
  models_.emplace(id, std::make_shared<const MorphModel>(std::move(model)));
  return id;
}

std::shared_ptr<const MorphModel> ModelStore::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = models_.find(id);
  return it == models_.end() ? nullptr : it->second;
}

std::size_t ModelStore::size() const {
  std::shared_lock lock(mutex_);
  return models_.size();
}

Service::Service(ServiceOptions options) : options_(std::move(options)), store_(options_.storeDir) {}

Response Service::pareto(const std::string& modelId, const MorphModel& model, const std::string& node,
                         const std::string& mode) {
  const auto key = std::make_tuple(modelId, node, mode);
  std::promise<Response> promise;
  std::shared_future<Response> future;
  bool owner = false;
  {
    std::lock_guard lock(cacheMutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      future = it->second;
    } else {
      future = promise.get_future().share();
      cache_.emplace(key, future);
      owner = true;
    }
  }
  if (owner) {
    Response r;
    try {
      synthesis::ComposeOptions opts;
      opts.maxSolutions = options_.maxSolutions;
      opts.mode = mode == "level" ? synthesis::Mode::Level : synthesis::Mode::Leaf;
      r = json(200, api::compose(model, node, opts));
    } catch (const Error& e) {
      r = json(statusFor(e), io::errorBody(e));
    } catch (const std::exception& e) {
      r = error(500, "InternalError", e.what());
    }
    promise.set_value(std::move(r));
  }
  return future.get();
}

Response Service::handle(const std::string& method, const std::string& path,
                         const std::map<std::string, std::string>& query, const std::string& body) {
  const auto parts = splitPath(path);
  try {
    if (parts.size() == 1 && parts[0] == "models") {
      if (method != "POST") return error(405, "MethodNotAllowed", "use POST", path);
      const std::string id = store_.add(io::loadModelText(body));
      return json(201, {{"modelId", id}});
    }
    if (parts.size() == 1 && parts[0] == "trajectory") {
      if (method != "POST") return error(405, "MethodNotAllowed", "use POST", path);
      return json(200, api::trajectory(io::parseStageCatalog(io::parseText(body))));
    }
    if (parts.size() == 3 && parts[0] == "models") {
      const std::string& action = parts[2];
      const bool known = action == "evaluate" || action == "pareto" || action == "aggregate";
      if (!known) return error(404, "NotFound", "no such endpoint", path);
      if ((action == "pareto") != (method == "GET") || (method != "GET" && method != "POST"))
        return error(405, "MethodNotAllowed", action == "pareto" ? "use GET" : "use POST", path);
      const auto model = store_.find(parts[1]);
      if (!model) return error(404, "NotFound", "unknown model '" + parts[1] + "'", "modelId");

      if (action == "evaluate") {
        synthesis::ComposeOptions opts;
        opts.maxSolutions = options_.maxSolutions;
        return json(200, api::evaluate(*model, io::parseSelection(io::parseText(body)), opts));
      }
      if (action == "pareto") {
        auto node = query.find("node");
        const std::string nodeId = node == query.end() || node->second.empty() ? model->root().id : node->second;
        if (!model->hasNode(nodeId)) return error(404, "NotFound", "unknown node '" + nodeId + "'", "node");
        auto modeIt = query.find("mode");
        const std::string mode = modeIt == query.end() ? "leaf" : modeIt->second;
        if (mode != "leaf" && mode != "level")
          return error(400, "ValidationError", "mode must be leaf or level", "mode");
        return pareto(parts[1], *model, nodeId, mode);
      }
      return json(200, api::aggregate(io::parseAggregationRequest(io::parseText(body)), model.get()));
    }
    return error(404, "NotFound", "no such endpoint", path);
  } catch (const Error& e) {
    return json(statusFor(e), io::errorBody(e));
  } catch (const std::exception& e) {
    return error(500, "InternalError", e.what());
  }
}

bool serve(Service& service, const std::string& host, int port, const std::optional<std::filesystem::path>& uiDir) {
  httplib::Server server;
  auto dispatch = [&service](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const auto r = service.handle(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_content(r.body, r.contentType);
  };
  server.Post(R"(/models)", dispatch);
  server.Post(R"(/models/([^/]+)/(evaluate|aggregate))", dispatch);
  server.Get(R"(/models/([^/]+)/pareto)", dispatch);
  server.Post(R"(/trajectory)", dispatch);
  if (uiDir && !server.set_mount_point("/", uiDir->string())) return false;
  return server.listen(host, port);
}

}  // namespace morphshop::service
