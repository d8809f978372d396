#include <doctest.h>

#include <nlohmann/json.hpp>

#include "fairlens/metrics.hpp"
#include "fairlens/rng.hpp"

using namespace fairlens;

namespace {

Eigen::VectorXi vec(const std::vector<int>& v) {
  Eigen::VectorXi out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

GroupedConfusion from_rates(double tpr0, double fpr0, double tpr1, double fpr1, long scale = 1000) {
  GroupedConfusion gc;
  gc.side0.tp = static_cast<long>(tpr0 * scale);
  gc.side0.fn = scale - gc.side0.tp;
  gc.side0.fp = static_cast<long>(fpr0 * scale);
  gc.side0.tn = scale - gc.side0.fp;
  gc.side1.tp = static_cast<long>(tpr1 * scale);
  gc.side1.fn = scale - gc.side1.tp;
  gc.side1.fp = static_cast<long>(fpr1 * scale);
  gc.side1.tn = scale - gc.side1.fp;
  return gc;
}

}  // namespace

TEST_CASE("grouped confusion: direct count example") {
  auto gc = grouped_confusion(vec({1, 1, 0, 0}), vec({1, 0, 1, 0}), vec({0, 0, 1, 1}));
  CHECK(gc.side0.tp == 1);
  CHECK(gc.side0.fn == 1);
  CHECK(gc.side0.fp == 0);
  CHECK(gc.side0.tn == 0);
  CHECK(gc.side1.fp == 1);
  CHECK(gc.side1.tn == 1);
  CHECK(gc.side1.tp == 0);
  CHECK(gc.side1.fn == 0);
  CHECK(gc.side0.total() + gc.side1.total() == 4);
}

TEST_CASE("perfect predictions have zero fp and fn") {
  auto y = vec({1, 0, 1, 0, 1});
  auto gc = grouped_confusion(y, y, vec({0, 1, 0, 1, 0}));
  CHECK(gc.side0.fp == 0);
  CHECK(gc.side0.fn == 0);
  CHECK(gc.side1.fp == 0);
  CHECK(gc.side1.fn == 0);
}

TEST_CASE("grouped confusion matches per-row loop oracle on random data") {
  Rng rng(31);
  std::vector<int> yt, yp, a;
  for (int i = 0; i < 1000; ++i) {
    yt.push_back(rng.bernoulli(0.5));
    yp.push_back(rng.bernoulli(0.5));
    a.push_back(rng.bernoulli(0.5));
  }
  auto gc = grouped_confusion(vec(yt), vec(yp), vec(a));
  long counts[2][4] = {};
  for (int i = 0; i < 1000; ++i) {
    int idx = yt[i] ? (yp[i] ? 0 : 3) : (yp[i] ? 1 : 2);  // tp fp tn fn
    ++counts[a[i]][idx];
  }
  CHECK(gc.side0.tp == counts[0][0]);
  CHECK(gc.side0.fp == counts[0][1]);
  CHECK(gc.side0.tn == counts[0][2]);
  CHECK(gc.side0.fn == counts[0][3]);
  CHECK(gc.side1.tp == counts[1][0]);
  CHECK(gc.side1.fp == counts[1][1]);
  CHECK(gc.side1.tn == counts[1][2]);
  CHECK(gc.side1.fn == counts[1][3]);
}

TEST_CASE("length mismatch rejected") {
  CHECK_THROWS_AS(grouped_confusion(vec({1, 0}), vec({1}), vec({0, 1})), std::invalid_argument);
}

TEST_CASE("tpr and fpr arithmetic") {
  CHECK(tpr({.tp = 8, .fp = 0, .tn = 0, .fn = 2}) == doctest::Approx(0.8));
  CHECK(tpr({.tp = 3, .fp = 0, .tn = 0, .fn = 3}) == doctest::Approx(0.5));
  CHECK(fpr({.tp = 0, .fp = 0, .tn = 9, .fn = 0}) == doctest::Approx(0.0));
}

TEST_CASE("zero denominators raise undefined-metric errors") {
  CHECK_THROWS_AS(tpr({.tp = 0, .fp = 3, .tn = 2, .fn = 0}), UndefinedMetricError);
  CHECK_THROWS_AS(fpr({.tp = 3, .fp = 0, .tn = 0, .fn = 2}), UndefinedMetricError);
}

TEST_CASE("eod: side 1 minus side 0") {
  auto gc = from_rates(0.8, 0.1, 0.5, 0.5);
  CHECK(eod(gc) == doctest::Approx(-0.3));
  auto same = from_rates(0.6, 0.2, 0.6, 0.2);
  CHECK(eod(same) == doctest::Approx(0.0));
}

TEST_CASE("aod: hand arithmetic") {
  auto gc = from_rates(0.8, 0.1, 0.5, 0.5);
  CHECK(aod(gc) == doctest::Approx(0.05));
}

TEST_CASE("aod is half of eod when fprs match") {
  auto gc = from_rates(0.7, 0.25, 0.4, 0.25);
  CHECK(aod(gc) == doctest::Approx(0.5 * eod(gc)));
}

TEST_CASE("aod equals eod when tpr and fpr gaps match") {
  auto gc = from_rates(0.7, 0.35, 0.5, 0.15);
  CHECK(aod(gc) == doctest::Approx(eod(gc)));
}

TEST_CASE("perfect classifier has eod = aod = 0") {
  Rng rng(32);
  std::vector<int> y, a;
  for (int i = 0; i < 200; ++i) {
    y.push_back(rng.bernoulli(0.4));
    a.push_back(rng.bernoulli(0.5));
  }
  y[0] = 1; y[1] = 0;  // both classes on both sides
  a[0] = 0; a[1] = 0;
  y[2] = 1; y[3] = 0;
  a[2] = 1; a[3] = 1;
  auto gc = grouped_confusion(vec(y), vec(y), vec(a));
  CHECK(eod(gc) == 0.0);
  CHECK(aod(gc) == 0.0);
}

TEST_CASE("spd examples") {
  CHECK(spd(vec({1, 1, 0, 0}), vec({1, 0, 1, 0})) == doctest::Approx(0.0));
  // side1 rate 0.6, side0 rate 0.2
  std::vector<int> pred, a;
  for (int i = 0; i < 5; ++i) { pred.push_back(i < 3); a.push_back(1); }
  for (int i = 0; i < 5; ++i) { pred.push_back(i < 1); a.push_back(0); }
  CHECK(spd(vec(pred), vec(a)) == doctest::Approx(0.4));
  CHECK_THROWS_AS(spd(vec({1, 0}), vec({1, 1})), UndefinedMetricError);
}

TEST_CASE("accuracy and f1") {
  auto y = vec({1, 0, 1, 1, 0});
  CHECK(accuracy(y, y) == doctest::Approx(1.0));
  CHECK(f1(y, y) == doctest::Approx(1.0));
  CHECK(f1(y, vec({0, 0, 0, 0, 0})) == doctest::Approx(0.0));
  // tp=1 fp=1 fn=1 -> f1 = 0.5
  CHECK(f1(vec({1, 0, 1}), vec({1, 1, 0})) == doctest::Approx(0.5));
  CHECK_THROWS_AS(accuracy(vec({1}), vec({1, 0})), std::invalid_argument);
}

TEST_CASE("property: side swap negates eod, aod, spd") {
  Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> yt, yp, a;
    auto n = 20 + rng.below(180);
    for (std::size_t i = 0; i < n; ++i) {
      yt.push_back(rng.bernoulli(0.5));
      yp.push_back(rng.bernoulli(0.5));
      a.push_back(rng.bernoulli(0.5));
    }
    std::vector<int> flipped;
    for (int v : a) flipped.push_back(1 - v);
    try {
      auto gc = grouped_confusion(vec(yt), vec(yp), vec(a));
      auto gs = grouped_confusion(vec(yt), vec(yp), vec(flipped));
      CHECK(eod(gc) == doctest::Approx(-eod(gs)).epsilon(1e-12));
      CHECK(aod(gc) == doctest::Approx(-aod(gs)).epsilon(1e-12));
      CHECK(spd(vec(yp), vec(a)) == doctest::Approx(-spd(vec(yp), vec(flipped))).epsilon(1e-12));
    } catch (const UndefinedMetricError&) {
      // small random draws can empty a denominator; not the property under test
    }
  }
}

TEST_CASE("property: metric bounds") {
  Rng rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> yt, yp, a;
    for (int i = 0; i < 60; ++i) {
      yt.push_back(rng.bernoulli(0.3));
      yp.push_back(rng.bernoulli(0.7));
      a.push_back(rng.bernoulli(0.5));
    }
    try {
      auto gc = grouped_confusion(vec(yt), vec(yp), vec(a));
      CHECK(std::abs(eod(gc)) <= 1.0);
      CHECK(std::abs(aod(gc)) <= 1.0);
      CHECK(std::abs(spd(vec(yp), vec(a))) <= 1.0);
      CHECK(accuracy(vec(yt), vec(yp)) >= 0.0);
      CHECK(accuracy(vec(yt), vec(yp)) <= 1.0);
      CHECK(f1(vec(yt), vec(yp)) >= 0.0);
      CHECK(f1(vec(yt), vec(yp)) <= 1.0);
    } catch (const UndefinedMetricError&) {
    }
  }
}

TEST_CASE("evaluate marks undefined attributes instead of failing") {
  // side 1 has no actual positives -> TPR undefined there
  auto yt = vec({1, 0, 0, 0});
  auto yp = vec({1, 0, 1, 0});
  Eigen::MatrixXi sens(4, 1);
  sens << 0, 0, 1, 1;
  auto report = evaluate(yt, yp, sens, {"attr"});
  REQUIRE(report.attributes.size() == 1);
  CHECK_FALSE(report.attributes[0].eod.has_value());
  CHECK_FALSE(report.attributes[0].undefined_reason.empty());
  CHECK(report.accuracy == doctest::Approx(0.75));
}

TEST_CASE("report JSON carries full precision and x100 presentation") {
  auto yt = vec({1, 0, 1, 0});
  auto yp = vec({1, 0, 0, 1});
  Eigen::MatrixXi sens(4, 1);
  sens << 0, 0, 1, 1;
  auto report = evaluate(yt, yp, sens, {"sex"});
  auto j = report_to_json(report);
  CHECK(j["attributes"][0]["name"] == "sex");
  CHECK(j["attributes"][0].contains("eod"));
  CHECK(j["attributes"][0].contains("eod_x100"));
  CHECK(j["accuracy"] == doctest::Approx(0.5));
}

TEST_CASE("presentation rounding") {
  CHECK(presentation_value(-0.034) == -3);
  CHECK(presentation_value(0.05) == 5);
  CHECK(presentation_value(-0.456) == -46);
  CHECK(presentation_value(0.0) == 0);
}
