#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json_fwd.hpp>

#include "fairlens/dataset.hpp"
#include "fairlens/reweigh.hpp"

namespace fairlens {

struct Hyperparams {
  double l2_strength = 1.0;
  int max_iterations = 1000;
  double gradient_tolerance = 1e-6;
  double decision_threshold = 0.5;
};

// Weighted L2-regularized logistic regression.
struct Model {
  Eigen::VectorXd coefficients;
  double intercept = 0.0;
  std::vector<std::string> feature_names;
};

// Minimizes  sum_i w_i * ce(y_i, sigmoid(x_i . b + b0)) + l2/2 * |b|^2
// with weights normalized to mean 1 and the intercept unpenalized.
// Deterministic: zero initialization, spectral-step gradient descent with
// Armijo backtracking.
Model fit(const DatasetTable& train, const SampleWeights& weights, const Hyperparams& hp = {});

// Loss and gradient of the fit objective at (coefficients, intercept).
// Exposed for convergence diagnostics and finite-difference checks.
double objective(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, const Eigen::VectorXd& w,
                 double l2, const Eigen::VectorXd& beta, double intercept);
void gradient(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, const Eigen::VectorXd& w,
              double l2, const Eigen::VectorXd& beta, double intercept,
              Eigen::VectorXd& grad_beta, double& grad_intercept);

Eigen::VectorXd predict_proba(const Model& model, const Eigen::MatrixXd& features);
Eigen::VectorXi predict(const Model& model, const Eigen::MatrixXd& features,
                        double threshold = 0.5);

nlohmann::json model_to_json(const Model& model);
Model model_from_json(const nlohmann::json& j);

}  // namespace fairlens
