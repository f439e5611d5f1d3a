#include "test_support.h"

#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>

namespace uisdial::testing {

UisScore ScriptedEstimator::estimate(const estimator::EstimationRequest& request) const {
  auto it = script_.find(request.target);
  const double v = it == script_.end() ? 0.0 : it->second[index_of(request.kind)];
  return UisScore(request.kind, v);
}

UisScore FailingEstimator::estimate(const estimator::EstimationRequest&) const {
  throw estimator::EstimatorError("backend unavailable");
}

std::filesystem::path data_dir() { return UISDIAL_DATA_DIR; }

std::shared_ptr<const catalog::CatalogFile> bundled_catalog() {
  static const auto catalog =
      std::make_shared<const catalog::CatalogFile>(catalog::load_catalog(data_dir() / "catalog.json"));
  return catalog;
}

std::shared_ptr<const catalog::CatalogFile> single_scenario_catalog(const std::string& scenario_id) {
  const auto& full = *bundled_catalog();
  const auto* sc = full.find_scenario(scenario_id);
  if (!sc) throw std::invalid_argument("no scenario " + scenario_id);
  catalog::CatalogFile out;
  out.scenarios = {*sc};
  out.movies = {*full.find_movie(sc->movie_id)};
  return std::make_shared<const catalog::CatalogFile>(std::move(out));
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("uisdial-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

LocalServer::LocalServer(const std::function<void(httplib::Server&)>& setup) {
  setup(server_);
  port_ = server_.bind_to_any_port("127.0.0.1");
  if (port_ <= 0) throw std::runtime_error("cannot bind a loopback port");
  thread_ = std::thread([this] { server_.listen_after_bind(); });
  server_.wait_until_ready();
}

LocalServer::~LocalServer() {
  server_.stop();
  if (thread_.joinable()) thread_.join();
}

namespace oracle {

double alpha_ordinal(const std::vector<std::vector<std::optional<int>>>& units,
                     const std::vector<int>& domain) {
  std::vector<std::vector<int>> pairable;
  for (const auto& u : units) {
    std::vector<int> vals;
    for (const auto& r : u) {
      if (r) vals.push_back(*r);
    }
    if (vals.size() >= 2) pairable.push_back(vals);
  }
  std::map<int, double> n_g;
  double n = 0.0;
  for (const auto& u : pairable) {
    for (int v : u) {
      n_g[v] += 1.0;
      n += 1.0;
    }
  }
  auto position = [&](int v) {
    for (std::size_t i = 0; i < domain.size(); ++i) {
      if (domain[i] == v) return i;
    }
    throw std::invalid_argument("value outside domain");
  };
  auto delta2 = [&](int a, int b) {
    std::size_t lo = position(a), hi = position(b);
    if (lo > hi) std::swap(lo, hi);
    double s = 0.0;
    for (std::size_t g = lo; g <= hi; ++g) s += n_g[domain[g]];
    s -= (n_g[a] + n_g[b]) / 2.0;
    return s * s;
  };
  double observed = 0.0;
  for (const auto& u : pairable) {
    const double m = static_cast<double>(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < u.size(); ++j)
        if (i != j) observed += delta2(u[i], u[j]) / (m - 1.0);
  }
  observed /= n;
  std::vector<int> all;
  for (const auto& u : pairable) all.insert(all.end(), u.begin(), u.end());
  double expected = 0.0;
  for (std::size_t p = 0; p < all.size(); ++p)
    for (std::size_t q = 0; q < all.size(); ++q)
      if (p != q) expected += delta2(all[p], all[q]);
  expected /= n * (n - 1.0);
  if (expected == 0.0) throw std::domain_error("no expected disagreement");
  if (observed == 0.0) return 1.0;
  return 1.0 - observed / expected;
}

double pair_count_u(const std::vector<double>& x, const std::vector<double>& y) {
  double u = 0.0;
  for (double a : x)
    for (double b : y) u += a > b ? 1.0 : (a == b ? 0.5 : 0.0);
  return u;
}

double enumeration_p(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> pooled = x;
  pooled.insert(pooled.end(), y.begin(), y.end());
  const std::size_t total = pooled.size();
  const double half = static_cast<double>(x.size() * y.size()) / 2.0;
  const double observed = std::abs(pair_count_u(x, y) - half);
  std::size_t extreme = 0, labelings = 0;
  for (std::uint32_t mask = 0; mask < (1u << total); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != x.size()) continue;
    std::vector<double> a, b;
    for (std::size_t i = 0; i < total; ++i) ((mask >> i) & 1u ? a : b).push_back(pooled[i]);
    ++labelings;
    if (std::abs(pair_count_u(a, b) - half) >= observed - 1e-9) ++extreme;
  }
  return static_cast<double>(extreme) / static_cast<double>(labelings);
}

}  // namespace oracle

std::uint64_t seed_opening_scenario(const engine::DialogueEngine& engine,
                                    const std::string& scenario_id) {
  for (std::uint64_t seed = 0; seed < 100000; ++seed) {
    auto [state, reply] = engine.start_session(seed);
    if (reply.slot == Slot::S1 && reply.scenario_id == scenario_id) return seed;
  }
  throw std::runtime_error("no seed opens " + scenario_id);
}

}  // namespace uisdial::testing
