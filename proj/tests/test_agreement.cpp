#include "catch_amalgamated.hpp"

#include "test_support.h"
#include "uisdial/agreement/krippendorff.h"
#include "uisdial/agreement/report.h"
#include "uisdial/corpus/corpus.h"

using namespace uisdial;
using namespace uisdial::agreement;
namespace oracle = uisdial::testing::oracle;

namespace {

using Rows = std::vector<std::vector<std::optional<int>>>;

ReliabilityMatrix to_matrix(const Rows& rows) {
  ReliabilityMatrix m;
  for (std::size_t i = 0; i < rows.size(); ++i) m.units.push_back({std::to_string(i), rows[i]});
  return m;
}

}  // namespace

TEST_CASE("alpha matches a pairwise brute-force oracle", "[agreement][oracle]") {
  Rng rng(2024);
  int compared = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Rows rows(1 + rng.uniform_index(10));
    for (auto& r : rows) {
      for (int c = 0; c < 3; ++c) {
        if (rng.bernoulli(0.1)) {
          r.push_back(std::nullopt);
        } else {
          r.push_back(static_cast<int>(rng.uniform_index(3)) - 1);
        }
      }
    }
    double expected = 0.0;
    bool oracle_defined = true;
    try {
      expected = oracle::alpha_ordinal(rows);
      oracle_defined = std::isfinite(expected);
    } catch (...) {
      oracle_defined = false;
    }
    try {
      const auto got = krippendorff_alpha_ordinal(to_matrix(rows));
      REQUIRE(oracle_defined);
      CHECK(std::abs(got.alpha - expected) <= 1e-9);
      ++compared;
    } catch (const DegenerateDataError&) {
      // Only legitimate when the oracle has nothing to divide by.
      CHECK_FALSE(oracle_defined);
    }
  }
  CHECK(compared >= 50);
}

TEST_CASE("perfect agreement gives exactly one", "[agreement]") {
  Rows rows = {{1, 1, 1}, {0, 0, 0}, {-1, -1, -1}, {1, 1, std::nullopt}};
  CHECK(krippendorff_alpha_ordinal(to_matrix(rows)).alpha == 1.0);
}

TEST_CASE("textbook-style hand example", "[agreement]") {
  // Two units, systematic disagreement, computed by hand:
  // n = 6, n_-1 = 2, n_0 = 2, n_1 = 2.
  Rows rows = {{-1, 0, 1}, {-1, 0, 1}};
  const auto r = krippendorff_alpha_ordinal(to_matrix(rows));
  CHECK(r.n_pairable == 6);
  CHECK(r.alpha == Catch::Approx(oracle::alpha_ordinal(rows)).margin(1e-12));
  CHECK(r.alpha < 0.0);
}

TEST_CASE("degenerate inputs", "[agreement]") {
  CHECK_THROWS_AS(krippendorff_alpha_ordinal(to_matrix({{1, std::nullopt, std::nullopt}})),
                  DegenerateDataError);
  CHECK_THROWS_AS(krippendorff_alpha_ordinal(to_matrix({})), ValidationError);
  // One category everywhere leaves nothing to compare against.
  CHECK_THROWS_AS(krippendorff_alpha_ordinal(to_matrix({{0, 0, 0}, {0, 0, 0}})),
                  DegenerateDataError);
  CHECK_THROWS_AS(krippendorff_alpha_ordinal(to_matrix({{2, 0, 0}})), ValidationError);
}

TEST_CASE("ordinal delta follows the marginals", "[agreement]") {
  const std::vector<double> marg = {2.0, 4.0, 6.0};
  CHECK(ordinal_delta2(0, 0, marg) == 0.0);
  // (2 + 4 - (2 + 4) / 2)^2 = 9
  CHECK(ordinal_delta2(0, 1, marg) == Catch::Approx(9.0));
  CHECK(ordinal_delta2(1, 0, marg) == Catch::Approx(9.0));
  // (2 + 4 + 6 - 4)^2 = 64
  CHECK(ordinal_delta2(0, 2, marg) == Catch::Approx(64.0));
}

TEST_CASE("agreement report over the fixture", "[agreement]") {
  const auto records = corpus::load_corpus(uisdial::testing::data_dir() / "corpus" / "fixture.jsonl");
  const auto report = agreement_report(records, {kAllKinds.begin(), kAllKinds.end()});
  REQUIRE(report.cells.size() == 6);
  for (UisKind k : kAllKinds) {
    const auto& full = report.cell(k, false);
    const auto& filtered = report.cell(k, true);
    REQUIRE(full.result);
    REQUIRE(filtered.result);
    CHECK(full.result->alpha == Catch::Approx(oracle::alpha_ordinal([&] {
            Rows rows;
            for (const auto& r : records) {
              const auto& t = r.label(k);
              rows.push_back({t.a1, t.a2, t.a3});
            }
            return rows;
          }())).margin(1e-9));
    // Conflicts are the strongest disagreements; dropping them helps.
    CHECK(filtered.result->alpha >= full.result->alpha);
  }
  const auto text = render_agreement(report);
  CHECK(text.find("Engagement") != std::string::npos);
}

TEST_CASE("one degenerate cell does not sink the report", "[agreement]") {
  auto records = corpus::load_corpus(uisdial::testing::data_dir() / "corpus" / "fixture.jsonl");
  records.resize(1);
  records[0].labels[index_of(UisKind::Knowledge)] = LabelTriplet{1, -1, 0};
  const auto report = agreement_report(records, {kAllKinds.begin(), kAllKinds.end()});
  const auto& filtered = report.cell(UisKind::Knowledge, true);
  CHECK_FALSE(filtered.result);
  CHECK_FALSE(filtered.error.empty());
  CHECK(render_agreement(report).find("n/a") != std::string::npos);
}
