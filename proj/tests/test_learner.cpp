#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "fairlens/learner.hpp"
#include "fairlens/rng.hpp"

using namespace fairlens;

namespace {

DatasetTable make_table(const Eigen::MatrixXd& x, const Eigen::VectorXi& y) {
  DatasetTable t;
  t.features = x;
  t.labels = y;
  t.sensitive.resize(x.rows(), 1);
  t.sensitive.setZero();
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    t.feature_names.push_back("x" + std::to_string(c));
    t.standardizable.push_back(true);
  }
  t.sensitive_names = {"a"};
  return t;
}

DatasetTable random_instance(Rng& rng, Eigen::Index n, Eigen::Index d) {
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXi y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = rng.normal();
    y(i) = rng.bernoulli(0.5) ? 1 : 0;
  }
  // force both classes
  y(0) = 0;
  y(n - 1) = 1;
  return make_table(x, y);
}

SampleWeights random_weights(Rng& rng, Eigen::Index n) {
  SampleWeights w;
  w.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) w.weights(i) = 0.1 + rng.uniform() * 2.0;
  return w;
}

// plain fixed-step gradient descent, the independent second optimizer
std::pair<Eigen::VectorXd, double> fixed_step_fit(const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                                                  const Eigen::VectorXd& w_mean1, double l2,
                                                  int iters) {
  double lipschitz = 0.25 * (x.array().square().rowwise().sum() * w_mean1.array()).sum() +
                     0.25 * w_mean1.sum() + l2;
  double step = 1.0 / lipschitz;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(x.cols());
  double b = 0.0;
  Eigen::VectorXd g(x.cols());
  double gb = 0.0;
  for (int i = 0; i < iters; ++i) {
    gradient(x, y, w_mean1, l2, beta, b, g, gb);
    beta -= step * g;
    b -= step * gb;
  }
  return {beta, b};
}

}  // namespace

TEST_CASE("separable 2-point dataset converges to gradient tolerance") {
  Eigen::MatrixXd x(2, 1);
  x << -1.0, 1.0;
  Eigen::VectorXi y(2);
  y << 0, 1;
  auto t = make_table(x, y);
  auto model = fit(t, uniform_weights(t));
  Eigen::VectorXd w = Eigen::VectorXd::Ones(2);
  Eigen::VectorXd g(1);
  double gb = 0.0;
  gradient(x, y, w, 1.0, model.coefficients, model.intercept, g, gb);
  CHECK(std::max(std::abs(g(0)), std::abs(gb)) <= 1e-6);
  CHECK(model.coefficients(0) > 0.0);
}

TEST_CASE("duplicating rows with halved weights matches halved regularization") {
  // Mean-1 normalization restores the halved weights, so duplication doubles
  // the data term; the duplicated fit equals the original with l2/2.
  Rng rng(21);
  auto t = random_instance(rng, 30, 3);
  auto w = random_weights(rng, 30);
  Hyperparams half;
  half.l2_strength = 0.5;
  auto base = fit(t, w, half);

  std::vector<Eigen::Index> doubled;
  for (Eigen::Index i = 0; i < 30; ++i) { doubled.push_back(i); doubled.push_back(i); }
  auto t2 = t.subset(doubled);
  SampleWeights w2;
  w2.weights.resize(60);
  for (Eigen::Index i = 0; i < 30; ++i) {
    w2.weights(2 * i) = w.weights(i) / 2.0;
    w2.weights(2 * i + 1) = w.weights(i) / 2.0;
  }
  auto dup = fit(t2, w2);
  CHECK((dup.coefficients - base.coefficients).lpNorm<Eigen::Infinity>() <= 1e-6);
  CHECK(dup.intercept == doctest::Approx(base.intercept).epsilon(1e-6));
}

TEST_CASE("1-D fit matches a scalar brute-force minimizer") {
  Eigen::MatrixXd x(2, 1);
  x << -1.0, 1.0;
  Eigen::VectorXi y(2);
  y << 0, 1;
  auto t = make_table(x, y);
  auto model = fit(t, uniform_weights(t));

  // golden-section search over beta with intercept 0 (symmetric data)
  Eigen::VectorXd w = Eigen::VectorXd::Ones(2);
  auto loss1d = [&](double beta) {
    Eigen::VectorXd b(1);
    b << beta;
    return objective(x, y, w, 1.0, b, 0.0);
  };
  double lo = 0.0, hi = 5.0;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  while (hi - lo > 1e-10) {
    double m1 = hi - phi * (hi - lo);
    double m2 = lo + phi * (hi - lo);
    if (loss1d(m1) < loss1d(m2)) hi = m2; else lo = m1;
  }
  double oracle_beta = 0.5 * (lo + hi);
  CHECK(std::abs(model.intercept) <= 1e-4);
  CHECK(model.coefficients(0) == doctest::Approx(oracle_beta).epsilon(1e-4));
}

TEST_CASE("property: analytic gradient matches central differences") {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    auto t = random_instance(rng, 8 + static_cast<Eigen::Index>(rng.below(20)), 3);
    Eigen::VectorXd w = random_weights(rng, t.rows()).weights;
    Eigen::VectorXd beta(3);
    for (int j = 0; j < 3; ++j) beta(j) = rng.normal();
    double b = rng.normal();
    double l2 = 0.5 + rng.uniform();

    Eigen::VectorXd g(3);
    double gb = 0.0;
    gradient(t.features, t.labels, w, l2, beta, b, g, gb);

    const double h = 1e-6;
    for (int j = 0; j < 3; ++j) {
      Eigen::VectorXd bp = beta, bm = beta;
      bp(j) += h;
      bm(j) -= h;
      double fd = (objective(t.features, t.labels, w, l2, bp, b) -
                   objective(t.features, t.labels, w, l2, bm, b)) / (2.0 * h);
      CHECK(g(j) == doctest::Approx(fd).epsilon(1e-5));
    }
    double fdb = (objective(t.features, t.labels, w, l2, beta, b + h) -
                  objective(t.features, t.labels, w, l2, beta, b - h)) / (2.0 * h);
    CHECK(gb == doctest::Approx(fdb).epsilon(1e-5));
  }
}

TEST_CASE("two optimizers agree on the convex objective") {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    auto t = random_instance(rng, 25, 2);
    auto raw = random_weights(rng, 25);
    Eigen::VectorXd w = raw.weights * (25.0 / raw.weights.sum());
    auto model = fit(t, raw);
    auto [beta2, b2] = fixed_step_fit(t.features, t.labels, w, 1.0, 200000);
    double l1 = objective(t.features, t.labels, w, 1.0, model.coefficients, model.intercept);
    double l2 = objective(t.features, t.labels, w, 1.0, beta2, b2);
    CHECK(l1 == doctest::Approx(l2).epsilon(1e-8));
  }
}

TEST_CASE("weight scaling invariance") {
  Rng rng(24);
  auto t = random_instance(rng, 40, 3);
  auto w = random_weights(rng, 40);
  auto base = fit(t, w);

  // a binary-representable scale cancels bit for bit in the normalization
  SampleWeights pow2;
  pow2.weights = w.weights * 512.0;
  auto exact = fit(t, pow2);
  CHECK(base.coefficients == exact.coefficients);
  CHECK(base.intercept == exact.intercept);

  // arbitrary scales agree to rounding error
  SampleWeights scaled;
  scaled.weights = w.weights * 37.5;
  auto again = fit(t, scaled);
  CHECK((base.coefficients - again.coefficients).lpNorm<Eigen::Infinity>() <= 1e-10);
  CHECK(base.intercept == doctest::Approx(again.intercept).epsilon(1e-10));
}

TEST_CASE("single-class training data rejected") {
  Eigen::MatrixXd x(3, 1);
  x << 1, 2, 3;
  Eigen::VectorXi y(3);
  y << 1, 1, 1;
  auto t = make_table(x, y);
  CHECK_THROWS_AS(fit(t, uniform_weights(t)), std::runtime_error);
}

TEST_CASE("predict_proba basics") {
  Model m;
  m.coefficients = Eigen::VectorXd::Zero(2);
  m.intercept = 0.0;
  m.feature_names = {"x0", "x1"};
  Eigen::MatrixXd x(3, 2);
  x << 1, 2, -3, 4, 0, 0;
  auto p = predict_proba(m, x);
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(p(i) == doctest::Approx(0.5));

  m.intercept = 50.0;
  p = predict_proba(m, x);
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(p(i) == doctest::Approx(1.0));

  m.intercept = 0.0;
  m.coefficients.resize(1);
  m.coefficients << 1.0;
  Eigen::MatrixXd x1(1, 1);
  x1 << 0.0;
  CHECK(predict_proba(m, x1)(0) == doctest::Approx(0.5));
}

TEST_CASE("predict boundary: probability equal to threshold is positive") {
  Model m;
  m.coefficients = Eigen::VectorXd::Zero(1);
  m.intercept = 0.0;
  m.feature_names = {"x0"};
  Eigen::MatrixXd x(2, 1);
  x << -10, 10;
  auto labels = predict(m, x, 0.5);  // sigma(0) = 0.5 exactly
  CHECK(labels(0) == 1);
  CHECK(labels(1) == 1);

  m.coefficients << 1.0;
  auto l2 = predict(m, x, 0.5);
  CHECK(l2(0) == 0);
  CHECK(l2(1) == 1);
}

TEST_CASE("feature width mismatch rejected") {
  Model m;
  m.coefficients = Eigen::VectorXd::Zero(2);
  m.feature_names = {"x0", "x1"};
  Eigen::MatrixXd x(1, 3);
  x.setZero();
  CHECK_THROWS_AS(predict_proba(m, x), std::invalid_argument);
}

TEST_CASE("prediction monotone in a positive-coefficient feature") {
  Rng rng(25);
  auto t = random_instance(rng, 50, 2);
  auto model = fit(t, uniform_weights(t));
  Eigen::Index j = model.coefficients(0) > 0 ? 0 : 1;
  if (model.coefficients(j) <= 0) return;  // both negative, nothing to check
  Eigen::MatrixXd probe(2, 2);
  probe << 0.0, 0.0, 0.0, 0.0;
  probe(1, j) = 1.0;
  auto p = predict_proba(model, probe);
  CHECK(p(1) >= p(0));
}

TEST_CASE("model JSON round trip") {
  Rng rng(26);
  auto t = random_instance(rng, 30, 3);
  auto model = fit(t, uniform_weights(t));
  auto back = model_from_json(model_to_json(model));
  CHECK(back.intercept == model.intercept);
  CHECK(back.coefficients == model.coefficients);
  CHECK(back.feature_names == model.feature_names);
}
