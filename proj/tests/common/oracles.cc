// tests/common/oracles.cc

// Copyright 2026  zrsw authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>

namespace zrsw::testing {

namespace {

void Enumerate(const Matrix &d, Index i, Index j, double sum, int len, double *best,
               int *best_len) {
  sum += d(i, j);
  ++len;
  if (i == d.rows() - 1 && j == d.cols() - 1) {
    if (sum < *best) {
      *best = sum;
      *best_len = len;
    }
    return;
  }
  if (i + 1 < d.rows() && j + 1 < d.cols()) Enumerate(d, i + 1, j + 1, sum, len, best, best_len);
  if (i + 1 < d.rows()) Enumerate(d, i + 1, j, sum, len, best, best_len);
  if (j + 1 < d.cols()) Enumerate(d, i, j + 1, sum, len, best, best_len);
}

}  // namespace

double EnumerateDtwCost(const Matrix &d, int *length) {
  double best = std::numeric_limits<double>::infinity();
  int best_len = 0;
  Enumerate(d, 0, 0, 0.0, 0, &best, &best_len);
  if (length) *length = best_len;
  return best;
}

long long CountDtwPaths(int rows, int cols) {
  std::vector<std::vector<long long>> n(rows, std::vector<long long>(cols, 0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      if (i == 0 || j == 0) {
        n[i][j] = 1;
        continue;
      }
      n[i][j] = n[i - 1][j] + n[i][j - 1] + n[i - 1][j - 1];
    }
  return n[rows - 1][cols - 1];
}

double SweepAveragePrecision(const std::vector<double> &costs, const std::vector<bool> &same_word,
                             const std::vector<bool> &swdp) {
  std::set<double> thresholds(costs.begin(), costs.end());
  double total_swdp = 0;
  for (bool b : swdp) total_swdp += b;
  double ap = 0.0, previous_recall = 0.0;
  for (double c : thresholds) {
    double retrieved = 0, correct = 0, found = 0;
    for (std::size_t k = 0; k < costs.size(); ++k) {
      if (costs[k] > c) continue;
      ++retrieved;
      correct += same_word[k];
      found += swdp[k];
    }
    double recall = found / total_swdp;
    ap += (correct / retrieved) * (recall - previous_recall);
    previous_recall = recall;
  }
  return ap;
}

std::vector<double> NaiveDftPower(const std::vector<double> &frame, int fft_size) {
  std::vector<double> power(fft_size / 2 + 1);
  for (int k = 0; k <= fft_size / 2; ++k) {
    long double re = 0, im = 0;
    for (std::size_t n = 0; n < frame.size(); ++n) {
      long double angle = -2.0L * std::numbers::pi_v<long double> * k * n / fft_size;
      re += frame[n] * std::cos(angle);
      im += frame[n] * std::sin(angle);
    }
    power[k] = static_cast<double>(re * re + im * im);
  }
  return power;
}

double NaiveGmmLogDensity(const Vector &x, const Vector &weights, const Matrix &means,
                          const Matrix &variances) {
  // Log-sum-exp over components, each a product of 1-D Gaussians.
  std::vector<long double> logs;
  for (Index k = 0; k < means.rows(); ++k) {
    long double l = std::log(static_cast<long double>(weights(k)));
    for (Index d = 0; d < x.size(); ++d) {
      long double v = variances(k, d), diff = x(d) - means(k, d);
      l += -0.5L * std::log(2.0L * std::numbers::pi_v<long double> * v) - diff * diff / (2.0L * v);
    }
    logs.push_back(l);
  }
  long double m = *std::max_element(logs.begin(), logs.end());
  long double s = 0;
  for (long double l : logs) s += std::exp(l - m);
  return static_cast<double>(m + std::log(s));
}

double NaiveCosineDtw(const Matrix &x, const Matrix &y) {
  Matrix d(x.rows(), y.rows());
  for (Index i = 0; i < x.rows(); ++i)
    for (Index j = 0; j < y.rows(); ++j) {
      double dot = 0, nx = 0, ny = 0;
      for (Index k = 0; k < x.cols(); ++k) {
        dot += x(i, k) * y(j, k);
        nx += x(i, k) * x(i, k);
        ny += y(j, k) * y(j, k);
      }
      d(i, j) = (nx == 0 || ny == 0) ? 1.0 : 1.0 - std::clamp(dot / std::sqrt(nx * ny), -1.0, 1.0);
    }
  // Plain DP carrying (cost, length), ties broken toward the diagonal.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> c(x.rows(), std::vector<double>(y.rows(), inf));
  std::vector<std::vector<int>> len(x.rows(), std::vector<int>(y.rows(), 0));
  for (Index i = 0; i < x.rows(); ++i)
    for (Index j = 0; j < y.rows(); ++j) {
      if (i == 0 && j == 0) {
        c[0][0] = d(0, 0);
        len[0][0] = 1;
        continue;
      }
      double best = inf;
      int l = 0;
      if (i > 0 && j > 0 && c[i - 1][j - 1] < best) best = c[i - 1][j - 1], l = len[i - 1][j - 1];
      if (i > 0 && c[i - 1][j] < best) best = c[i - 1][j], l = len[i - 1][j];
      if (j > 0 && c[i][j - 1] < best) best = c[i][j - 1], l = len[i][j - 1];
      c[i][j] = best + d(i, j);
      len[i][j] = l + 1;
    }
  return c.back().back() / len.back().back();
}

namespace {

// Visits every parameter tensor of the trunk and the given heads.
void ForEachTensor(DenseNetwork &net, NetworkGradient *grad,
                   const std::vector<std::string> &heads,
                   const std::function<void(const std::string &, Eigen::Map<Vector>,
                                            const Eigen::Map<Vector> *)> &visit) {
  auto visit_layers = [&](const std::string &prefix, std::vector<DenseLayer> &layers,
                          std::vector<LayerGradient> *g) {
    for (std::size_t l = 0; l < layers.size(); ++l) {
      Eigen::Map<Vector> w(layers[l].weights.data(), layers[l].weights.size());
      Eigen::Map<Vector> b(layers[l].bias.data(), layers[l].bias.size());
      if (g) {
        Eigen::Map<Vector> gw((*g)[l].weights.data(), (*g)[l].weights.size());
        Eigen::Map<Vector> gb((*g)[l].bias.data(), (*g)[l].bias.size());
        visit(prefix + std::to_string(l) + ".weights", w, &gw);
        visit(prefix + std::to_string(l) + ".bias", b, &gb);
      } else {
        visit(prefix + std::to_string(l) + ".weights", w, nullptr);
        visit(prefix + std::to_string(l) + ".bias", b, nullptr);
      }
    }
  };
  visit_layers("trunk.", net.layers, grad ? &grad->trunk : nullptr);
  for (const std::string &h : heads)
    visit_layers(h + ".", net.Head(h).layers, grad ? &grad->heads.at(h) : nullptr);
}

}  // namespace

std::vector<TensorCheck> CheckGradients(const DenseNetwork &net, const NetworkLoss &loss,
                                        const std::vector<std::string> &heads, double h) {
  NetworkGradient analytic;
  loss(net, &analytic);
  DenseNetwork work = net;
  std::vector<TensorCheck> out;
  ForEachTensor(work, &analytic, heads,
                [&](const std::string &name, Eigen::Map<Vector> param,
                    const Eigen::Map<Vector> *grad) {
                  Vector numeric(param.size());
                  for (Index k = 0; k < param.size(); ++k) {
                    double saved = param(k);
                    param(k) = saved + h;
                    double up = loss(work, nullptr);
                    param(k) = saved - h;
                    double down = loss(work, nullptr);
                    param(k) = saved;
                    numeric(k) = (up - down) / (2 * h);
                  }
                  TensorCheck c;
                  c.name = name;
                  c.analytic_norm = grad->norm();
                  c.numeric_norm = numeric.norm();
                  // Parameters the loss is invariant to (a bias cancelled by
                  // batch norm) leave only rounding noise on both sides.
                  c.vanishing = c.analytic_norm < kVanishingGradient &&
                                c.numeric_norm < kVanishingGradient;
                  double scale = std::max({c.analytic_norm, c.numeric_norm, 1e-12});
                  c.relative_error = c.vanishing ? 0.0 : (*grad - numeric).norm() / scale;
                  out.push_back(c);
                });
  return out;
}

NetworkLoss ProjectionLoss(const Batch &batch, const Matrix &projection, const std::string *head) {
  std::string head_name = head ? *head : std::string();
  bool has_head = head != nullptr;
  return [batch, projection, head_name, has_head](const DenseNetwork &net, NetworkGradient *grad) {
    ForwardState s = Forward(net, batch, Mode::kTrain, has_head ? &head_name : nullptr);
    double value = (s.Output().array() * projection.array()).sum();
    if (grad) *grad = Backward(net, s, projection);
    return value;
  };
}

NetworkLoss HeadCrossEntropyLoss(const Batch &batch, const std::string &head,
                                 const std::vector<int> &labels) {
  return [batch, head, labels](const DenseNetwork &net, NetworkGradient *grad) {
    ForwardState s = Forward(net, batch, Mode::kTrain, &head);
    Matrix d;
    double value = CrossEntropyLoss(s.Output(), labels, grad ? &d : nullptr);
    if (grad) *grad = Backward(net, s, d);
    return value;
  };
}

Matrix RandomMatrix(Index rows, Index cols, std::mt19937_64 &rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = n(rng);
  return m;
}

}  // namespace zrsw::testing
