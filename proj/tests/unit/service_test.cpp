#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "morphshop/service.hpp"
#include "unit/test_support.hpp"

using namespace morphshop;
using io::Json;
using service::Service;

namespace {

std::string fileText(const std::string& name) {
  std::ifstream in(fixturePath(name));
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string upload(Service& svc, const std::string& fixture) {
  const auto r = svc.handle("POST", "/models", {}, fileText(fixture));
  EXPECT_EQ(r.status, 201) << r.body;
  return Json::parse(r.body)["modelId"].get<std::string>();
}

}  // namespace

TEST(Service, UploadAssignsSequentialIds) {
  Service svc;
  EXPECT_EQ(upload(svc, "motor-vehicle.json"), "m1");
  EXPECT_EQ(upload(svc, "motor-vehicle.json"), "m2");
  EXPECT_EQ(svc.store().size(), 2u);
}

TEST(Service, UploadRejectsBadModels) {
  Service svc;
  auto r = svc.handle("POST", "/models", {}, "{not json");
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(Json::parse(r.body)["error"], "ParseError");
  auto doc = fixtureJson("motor-vehicle.json");
  doc["components"][0]["alternatives"][0]["priority"] = 9;
  r = svc.handle("POST", "/models", {}, doc.dump());
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(Json::parse(r.body)["error"], "ValidationError");
  EXPECT_FALSE(Json::parse(r.body)["path"].get<std::string>().empty());
  EXPECT_EQ(svc.store().size(), 0u);
}

TEST(Service, Evaluate) {
  Service svc;
  const auto id = upload(svc, "motor-vehicle.json");
  auto r = svc.handle("POST", "/models/" + id + "/evaluate", {}, R"({"A":"A1","B":"B1","C":"C2"})");
  ASSERT_EQ(r.status, 200) << r.body;
  Json j = Json::parse(r.body);
  EXPECT_EQ(j["w"], 3);
  EXPECT_EQ(j["n"], Json({2, 1, 0}));
  EXPECT_TRUE(j["violations"].empty());

  r = svc.handle("POST", "/models/" + id + "/evaluate", {}, R"({"A":"A1"})");
  ASSERT_EQ(r.status, 200) << r.body;
  j = Json::parse(r.body);
  EXPECT_EQ(j["bestCompletion"]["selection"]["A"], "A1");

  r = svc.handle("POST", "/models/" + id + "/evaluate", {}, "{}");
  EXPECT_EQ(Json::parse(r.body)["w"], 3);

  r = svc.handle("POST", "/models/" + id + "/evaluate", {}, R"({"A":"Q9"})");
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(Json::parse(r.body)["error"], "UnknownIdError");
}

TEST(Service, Pareto) {
  Service svc;
  const auto id = upload(svc, "repair-plan.json");
  auto r = svc.handle("GET", "/models/" + id + "/pareto", {{"mode", "level"}}, "");
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(Json::parse(r.body).size(), 8u);
  r = svc.handle("GET", "/models/" + id + "/pareto", {{"node", "B"}, {"mode", "level"}}, "");
  ASSERT_EQ(r.status, 200) << r.body;
  const Json b = Json::parse(r.body);
  ASSERT_EQ(b.size(), 4u);
  for (const auto& s : b) {
    EXPECT_EQ(s["w"], 3);
    EXPECT_EQ(s["n"], Json({3, 0, 0}));
  }
  r = svc.handle("GET", "/models/" + id + "/pareto", {{"node", "Z"}}, "");
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_FALSE(Json::parse(r.body).empty());
  EXPECT_EQ(svc.handle("GET", "/models/" + id + "/pareto", {{"mode", "x"}}, "").status, 400);
}

TEST(Service, ParetoCapGives409) {
  service::ServiceOptions opts;
  opts.maxSolutions = 2;
  Service svc(opts);
  const auto id = upload(svc, "motor-vehicle.json");
  const auto r = svc.handle("GET", "/models/" + id + "/pareto", {}, "");
  EXPECT_EQ(r.status, 409);
  const Json j = Json::parse(r.body);
  EXPECT_EQ(j["error"], "ExplosionError");
  EXPECT_EQ(j["cap"], 2);
}

TEST(Service, NotFoundAndMethods) {
  Service svc;
  const auto id = upload(svc, "motor-vehicle.json");
  EXPECT_EQ(svc.handle("GET", "/models/m99/pareto", {}, "").status, 404);
  EXPECT_EQ(svc.handle("POST", "/models/m99/evaluate", {}, "{}").status, 404);
  EXPECT_EQ(svc.handle("GET", "/models/" + id + "/pareto", {{"node", "nope"}}, "").status, 404);
  EXPECT_EQ(svc.handle("GET", "/elsewhere", {}, "").status, 404);
  EXPECT_EQ(svc.handle("GET", "/models", {}, "").status, 405);
  EXPECT_EQ(svc.handle("POST", "/models/" + id + "/pareto", {}, "").status, 405);
  EXPECT_EQ(svc.handle("GET", "/models/" + id + "/evaluate", {}, "").status, 405);
}

TEST(Service, Aggregate) {
  Service svc;
  const auto id = upload(svc, "car-model.json");
  auto r = svc.handle("POST", "/models/" + id + "/aggregate", {}, fileText("car-extend.json"));
  ASSERT_EQ(r.status, 200) << r.body;
  const Json j = Json::parse(r.body);
  EXPECT_EQ(j["selection"], Json({{"D", "D1"}, {"E", "E5"}, {"G", "G2"}, {"O", "O1"}, {"X", "X1"}, {"Y", "Y3"}, {"Z", "Z1"}}));
  EXPECT_TRUE(j.contains("excellence"));
  r = svc.handle("POST", "/models/" + id + "/aggregate", {}, fileText("car-compress.json"));
  ASSERT_EQ(r.status, 200) << r.body;
  r = svc.handle("POST", "/models/" + id + "/aggregate", {}, R"({"prototypes":[{"E":"D1"}]})");
  EXPECT_EQ(r.status, 400);
}

TEST(Service, Trajectory) {
  Service svc;
  auto r = svc.handle("POST", "/trajectory", {}, fileText("pc-trajectory.json"));
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(Json::parse(r.body)[0]["picks"], Json({"S2", "S2_2", "S3_1"}));

  auto doc = fixtureJson("pc-trajectory.json");
  doc["stages"][1]["solutions"] = Json::array();
  r = svc.handle("POST", "/trajectory", {}, doc.dump());
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(Json::parse(r.body)["error"], "EmptyStageError");

  doc = fixtureJson("pc-trajectory.json");
  doc["stages"].erase(1);
  doc["stages"].erase(1);
  EXPECT_EQ(svc.handle("POST", "/trajectory", {}, doc.dump()).status, 400);

  doc = fixtureJson("pc-trajectory.json");
  doc["stages"][2]["solutions"][0]["selection"].erase("G");
  r = svc.handle("POST", "/trajectory", {}, doc.dump());
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(Json::parse(r.body)["error"], "ComponentMismatchError");
}

TEST(Service, RepeatedCallsAreByteIdentical) {
  const std::vector<std::string> models{"motor-vehicle.json", "extended-product.json", "repair-plan.json",
                                        "car-model.json"};
  Service svc;
  for (const auto& name : models) {
    SCOPED_TRACE(name);
    const auto id = upload(svc, name);
    const auto model = loadFixture(name);
    Selection first;
    for (const auto& c : model.components()) first[c.id] = c.alternatives.front().id;
    const std::string body = io::toJson(first).dump();
    const auto e1 = svc.handle("POST", "/models/" + id + "/evaluate", {}, body);
    const auto e2 = svc.handle("POST", "/models/" + id + "/evaluate", {}, body);
    EXPECT_EQ(e1.status, 200);
    EXPECT_EQ(e1.body, e2.body);
    for (const std::string mode : {"leaf", "level"}) {
      const auto p1 = svc.handle("GET", "/models/" + id + "/pareto", {{"mode", mode}}, "");
      const auto p2 = svc.handle("GET", "/models/" + id + "/pareto", {{"mode", mode}}, "");
      EXPECT_EQ(p1.status, 200);
      EXPECT_EQ(p1.body, p2.body);
    }
  }
}

TEST(Service, ConcurrentPareto) {
  Service svc;
  const auto id = upload(svc, "repair-plan.json");
  const auto expected = svc.handle("GET", "/models/" + id + "/pareto", {{"node", "B"}}, "").body;
  std::vector<std::string> bodies(8);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < bodies.size(); ++i)
    threads.emplace_back([&, i] { bodies[i] = svc.handle("GET", "/models/" + id + "/pareto", {}, "").body; });
  for (auto& t : threads) t.join();
  for (const auto& b : bodies) EXPECT_EQ(b, bodies[0]);
  EXPECT_NE(bodies[0], expected);
}

TEST(Service, StoreDirPersistence) {
  const auto dir = std::filesystem::temp_directory_path() / "morphshop_store_test";
  std::filesystem::remove_all(dir);
  std::string body;
  {
    service::ServiceOptions opts;
    opts.storeDir = dir;
    Service svc(opts);
    EXPECT_EQ(upload(svc, "motor-vehicle.json"), "m1");
    body = svc.handle("GET", "/models/m1/pareto", {}, "").body;
  }
  service::ServiceOptions opts;
  opts.storeDir = dir;
  Service again(opts);
  EXPECT_EQ(again.store().size(), 1u);
  EXPECT_EQ(again.handle("GET", "/models/m1/pareto", {}, "").body, body);
  EXPECT_EQ(upload(again, "repair-plan.json"), "m2");
  std::filesystem::remove_all(dir);
}

TEST(Service, HttpRoundTrip) {
  Service svc;
  httplib::Server server;
  auto dispatch = [&svc](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const auto r = svc.handle(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_content(r.body, r.contentType);
  };
  server.Post("/models", dispatch);
  server.Get(R"(/models/([^/]+)/pareto)", dispatch);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);
  auto up = client.Post("/models", fileText("motor-vehicle.json"), "application/json");
  ASSERT_TRUE(up);
  EXPECT_EQ(up->status, 201);
  auto p = client.Get("/models/m1/pareto?mode=leaf");
  ASSERT_TRUE(p);
  EXPECT_EQ(p->status, 200);
  EXPECT_EQ(Json::parse(p->body).size(), 4u);
  server.stop();
  t.join();
}
