#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "mbounds/basket.hpp"

namespace mbounds::testing {

using Points = std::vector<std::vector<double>>;

// Every pair (n = 2) or triple (n = 3) of hyperplanes solved densely.
inline Points brute_vertices(const BasketInstance& inst) {
  const int n = inst.n;
  std::vector<std::pair<Eigen::VectorXd, double>> planes;
  for (const auto& c : inst.constraints) {
    planes.emplace_back(Eigen::Map<const Eigen::VectorXd>(c.weights.data(), n), c.strike);
  }
  for (int h = 0; h < n; ++h) planes.emplace_back(Eigen::VectorXd::Unit(n, h), 0.0);
  for (int h = 0; h < n; ++h) planes.emplace_back(Eigen::VectorXd::Unit(n, h), inst.L);
  const int total = static_cast<int>(planes.size());
  Points out;
  std::vector<int> idx(n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      Eigen::MatrixXd a(n, n);
      Eigen::VectorXd b(n);
      for (int r = 0; r < n; ++r) {
        a.row(r) = planes[idx[r]].first.transpose();
        b[r] = planes[idx[r]].second;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (lu.rank() < n) return;
      const Eigen::VectorXd x = lu.solve(b);
      for (int h = 0; h < n; ++h) {
        if (x[h] < -1e-9 || x[h] > inst.L + 1e-9) return;
      }
      std::vector<double> p(x.data(), x.data() + n);
      for (double& v : p) v = std::clamp(v, 0.0, inst.L);
      for (const auto& q : out) {
        double d = 0;
        for (int h = 0; h < n; ++h) d = std::max(d, std::abs(q[h] - p[h]));
        if (d <= 1e-9 * std::max(1.0, inst.L)) return;
      }
      out.push_back(p);
      return;
    }
    for (int i = start; i < total; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool same_points(const Points& a, const Points& b) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a) {
    bool found = false;
    for (const auto& q : b) {
      double d = 0;
      for (std::size_t h = 0; h < p.size(); ++h) d = std::max(d, std::abs(p[h] - q[h]));
      if (d <= 1e-8) found = true;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace mbounds::testing
