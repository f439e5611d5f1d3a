#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <vector>
#include <memory>
#include <functional>
#include <string>
#include <thread>

#include <httplib.h>

#include "uisdial/catalog/catalog.h"
#include "uisdial/engine/engine.h"
#include "uisdial/estimator/estimator.h"

namespace uisdial::testing {

// Returns fixed scores per user text; unknown texts score 0 on every kind.
class ScriptedEstimator final : public estimator::Estimator {
 public:
  using Scores = std::array<double, 3>;  // knowledge, interest, engagement

  ScriptedEstimator() = default;
  explicit ScriptedEstimator(std::map<std::string, Scores> script) : script_(std::move(script)) {}

  void set(const std::string& text, Scores scores) { script_[text] = scores; }

  UisScore estimate(const estimator::EstimationRequest& request) const override;
  std::string name() const override { return "scripted"; }

 private:
  std::map<std::string, Scores> script_;
};

class FailingEstimator final : public estimator::Estimator {
 public:
  UisScore estimate(const estimator::EstimationRequest& request) const override;
  std::string name() const override { return "failing"; }
};

std::filesystem::path data_dir();
std::shared_ptr<const catalog::CatalogFile> bundled_catalog();

// Copy of the catalog holding only one scenario and its movie.
std::shared_ptr<const catalog::CatalogFile> single_scenario_catalog(const std::string& scenario_id);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// httplib server on an ephemeral loopback port, served from a background
// thread for the lifetime of the object.
class LocalServer {
 public:
  explicit LocalServer(const std::function<void(httplib::Server&)>& setup);
  ~LocalServer();
  LocalServer(const LocalServer&) = delete;
  LocalServer& operator=(const LocalServer&) = delete;

  int port() const { return port_; }
  std::string origin() const { return "http://127.0.0.1:" + std::to_string(port_); }
  httplib::Server& server() { return server_; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

// Reference computations written independently of the library.
namespace oracle {

// Krippendorff's ordinal alpha by direct enumeration of value pairs inside
// units (observed) and across all pairable values (expected). Units are
// rows of per-coder ratings.
double alpha_ordinal(const std::vector<std::vector<std::optional<int>>>& units,
                     const std::vector<int>& domain = {-1, 0, 1});

// Mann-Whitney U for x by counting pairs: 1 per x_i > y_j, 0.5 per tie.
double pair_count_u(const std::vector<double>& x, const std::vector<double>& y);

// Two-sided exact p: share of all C(n+m, n) relabelings of the pooled data
// whose pair-count U is at least as far from nm/2 as the observed one.
double enumeration_p(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace oracle

// Smallest seed whose opening picks the given scenario on the random branch.
std::uint64_t seed_opening_scenario(const engine::DialogueEngine& engine,
                                    const std::string& scenario_id);

}  // namespace uisdial::testing
