#include "fairlens/learner.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fairlens {

namespace {

// log(1 + exp(z)) without overflow
inline double log1pexp(double z) {
  if (z > 0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

inline double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double objective(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, const Eigen::VectorXd& w,
                 double l2, const Eigen::VectorXd& beta, double intercept) {
  Eigen::VectorXd z = x * beta;
  z.array() += intercept;
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    loss += w(i) * (log1pexp(z(i)) - static_cast<double>(y(i)) * z(i));
  }
  return loss + 0.5 * l2 * beta.squaredNorm();
}

void gradient(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, const Eigen::VectorXd& w,
              double l2, const Eigen::VectorXd& beta, double intercept,
              Eigen::VectorXd& grad_beta, double& grad_intercept) {
  Eigen::VectorXd z = x * beta;
  z.array() += intercept;
  Eigen::VectorXd residual(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    residual(i) = w(i) * (sigmoid(z(i)) - static_cast<double>(y(i)));
  }
  grad_beta = x.transpose() * residual + l2 * beta;
  grad_intercept = residual.sum();
}

Model fit(const DatasetTable& train, const SampleWeights& weights, const Hyperparams& hp) {
  const auto n = train.rows();
  if (weights.weights.size() != n) throw std::invalid_argument("weights length != training rows");
  if (n == 0) throw std::invalid_argument("empty training data");
  const int positives = train.labels.sum();
  if (positives == 0 || positives == n) {
    throw std::runtime_error("training data contains a single class");
  }

  // normalize weights to mean 1 so regularization strength is comparable
  // across strategies
  Eigen::VectorXd w = weights.weights * (static_cast<double>(n) / weights.weights.sum());

  const auto& x = train.features;
  const auto& y = train.labels;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(x.cols());
  double intercept = 0.0;

  Eigen::VectorXd grad(x.cols()), prev_grad(x.cols());
  double grad_b = 0.0, prev_grad_b = 0.0;
  Eigen::VectorXd prev_beta = beta;
  double prev_intercept = intercept;

  double loss = objective(x, y, w, hp.l2_strength, beta, intercept);
  double step = 1.0 / (0.25 * w.sum() + hp.l2_strength);  // crude Lipschitz guess

  for (int iter = 0; iter < hp.max_iterations; ++iter) {
    gradient(x, y, w, hp.l2_strength, beta, intercept, grad, grad_b);
    double grad_norm = std::max(grad.lpNorm<Eigen::Infinity>(), std::abs(grad_b));
    if (!std::isfinite(grad_norm)) throw std::runtime_error("non-finite gradient during fit");
    if (grad_norm <= hp.gradient_tolerance) break;

    if (iter > 0) {
      // Barzilai-Borwein spectral step
      Eigen::VectorXd ds = beta - prev_beta;
      Eigen::VectorXd dg = grad - prev_grad;
      double sb = intercept - prev_intercept;
      double gb = grad_b - prev_grad_b;
      double sy = ds.dot(dg) + sb * gb;
      double ss = ds.squaredNorm() + sb * sb;
      if (sy > 0) step = ss / sy;
    }

    prev_beta = beta;
    prev_intercept = intercept;
    prev_grad = grad;
    prev_grad_b = grad_b;

    // Armijo backtracking
    double g2 = grad.squaredNorm() + grad_b * grad_b;
    double t = step;
    for (int bt = 0; bt < 60; ++bt) {
      Eigen::VectorXd cand = prev_beta - t * grad;
      double cand_b = prev_intercept - t * grad_b;
      double cand_loss = objective(x, y, w, hp.l2_strength, cand, cand_b);
      if (std::isfinite(cand_loss) && cand_loss <= loss - 1e-4 * t * g2) {
        beta = std::move(cand);
        intercept = cand_b;
        loss = cand_loss;
        break;
      }
      t *= 0.5;
    }
    if (beta == prev_beta && intercept == prev_intercept) break;  // line search stalled
  }

  if (!beta.allFinite() || !std::isfinite(intercept)) {
    throw std::runtime_error("fit produced non-finite coefficients");
  }
  Model model;
  model.coefficients = std::move(beta);
  model.intercept = intercept;
  model.feature_names = train.feature_names;
  return model;
}

Eigen::VectorXd predict_proba(const Model& model, const Eigen::MatrixXd& features) {
  if (features.cols() != model.coefficients.size()) {
    throw std::invalid_argument("feature width does not match model");
  }
  Eigen::VectorXd z = features * model.coefficients;
  z.array() += model.intercept;
  Eigen::VectorXd p(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) p(i) = sigmoid(z(i));
  return p;
}

Eigen::VectorXi predict(const Model& model, const Eigen::MatrixXd& features, double threshold) {
  Eigen::VectorXd p = predict_proba(model, features);
  Eigen::VectorXi out(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) out(i) = p(i) >= threshold ? 1 : 0;
  return out;
}

nlohmann::json model_to_json(const Model& model) {
  nlohmann::json j;
  j["intercept"] = model.intercept;
  j["coefficients"] = std::vector<double>(model.coefficients.data(),
                                          model.coefficients.data() + model.coefficients.size());
  j["feature_names"] = model.feature_names;
  return j;
}

Model model_from_json(const nlohmann::json& j) {
  Model model;
  model.intercept = j.at("intercept").get<double>();
  auto coeffs = j.at("coefficients").get<std::vector<double>>();
  model.coefficients = Eigen::Map<Eigen::VectorXd>(coeffs.data(),
                                                   static_cast<Eigen::Index>(coeffs.size()));
  model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  if (model.feature_names.size() != static_cast<std::size_t>(model.coefficients.size())) {
    throw std::runtime_error("model JSON: feature_names/coefficients length mismatch");
  }
  return model;
}

}  // namespace fairlens
