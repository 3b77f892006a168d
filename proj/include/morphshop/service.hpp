#pragma once

#include <cstddef>
#include <filesystem>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>

#include "morphshop/model.hpp"

namespace morphshop::service {

struct Response {
  int status = 200;
  std::string body;
  std::string contentType = "application/json";
};

// Append-only store of immutable models. Ids are "m1", "m2", ...
class ModelStore {
 public:
  explicit ModelStore(std::optional<std::filesystem::path> dir = std::nullopt);

  std::string add(MorphModel model);
  std::shared_ptr<const MorphModel> find(const std::string& id) const;
  std::size_t size() const;

 private:
  std::optional<std::filesystem::path> dir_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const MorphModel>> models_;
  std::size_t next_ = 1;
};

struct ServiceOptions {
  std::optional<std::filesystem::path> storeDir;
  std::size_t maxSolutions = 1'000'000;
};

// Transport-independent request handler. Safe to call concurrently.
class Service {
 public:
  explicit Service(ServiceOptions options = {});

  // `query` holds decoded query parameters.
  Response handle(const std::string& method, const std::string& path, const std::map<std::string, std::string>& query,
                  const std::string& body);

  ModelStore& store() { return store_; }

 private:
  Response pareto(const std::string& modelId, const MorphModel& model, const std::string& node,
                  const std::string& mode);

  ServiceOptions options_;
  ModelStore store_;
  std::mutex cacheMutex_;
  std::map<std::tuple<std::string, std::string, std::string>, std::shared_future<Response>> cache_;
};

// Blocks serving HTTP until stopped. `uiDir`, when set, is mounted at "/".
// Returns false when the port cannot be bound.
bool serve(Service& service, const std::string& host, int port, const std::optional<std::filesystem::path>& uiDir);

}  // namespace morphshop::service
