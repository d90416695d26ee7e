#pragma once

// Spectral-relation checks over one graph. Each returns the worst violation (positive means
// the inequality fails by that much) so callers can compare against a tolerance.

#include <adiagraph/graph.hpp>
#include <adiagraph/random.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"

namespace checks {

using namespace adiagraph;

struct Spectra {
  RVector lambda;  // normalized Laplacian, ascending
  RVector mu;      // combinatorial Laplacian T - A, ascending
  RVector alpha;   // adjacency, descending
  double d_min = 0, d_max = 0;
};

inline Spectra spectra(const WeightedGraph& g) {
  Spectra s;
  const RMatrix a = oracle::adjacency(g);
  const RVector d = oracle::degrees(a);
  s.lambda = oracle::eigenvalues(normalized_laplacian(g));
  s.mu = oracle::eigenvalues(RMatrix(RMatrix(d.asDiagonal()) - a));
  s.alpha = oracle::eigenvalues(a).reverse();
  s.d_min = d.minCoeff();
  s.d_max = d.maxCoeff();
  return s;
}

struct SpectraReport {
  double range = 0;         // distance of eigenvalues outside [0, 2]
  int zero_multiplicity = 0;
  double null_residual = 0;  // |L T^{1/2} 1|
};

inline SpectraReport spectrum_basics(const WeightedGraph& g) {
  SpectraReport r;
  const RMatrix l = normalized_laplacian(g);
  const RVector ev = oracle::eigenvalues(l);
  for (double x : ev) {
    r.range = std::max({r.range, -x, x - 2});
    if (std::abs(x) < 1e-9) ++r.zero_multiplicity;
  }
  RVector s(g.size());
  for (int v = 0; v < g.size(); ++v) s[v] = std::sqrt(g.degree(v));
  r.null_residual = (l * s).norm();
  return r;
}

/// |<f|L|f> - sum_{u~v} (f_v - f_u)^2 w(u,v)| over random vectors; loops contribute nothing.
inline double expectation_defect(const WeightedGraph& g, Rng& rng, int vectors) {
  std::normal_distribution<double> nd;
  const RMatrix lap = RMatrix(oracle::degrees(oracle::adjacency(g)).asDiagonal()) - oracle::adjacency(g);
  double worst = 0;
  for (int k = 0; k < vectors; ++k) {
    RVector f(g.size());
    for (auto& x : f) x = nd(rng);
    double sum = 0;
    for (int u = 0; u < g.size(); ++u)
      for (const auto& [v, w] : g.neighbors(u))
        if (u < v) sum += (f[v] - f[u]) * (f[v] - f[u]) * w;
    worst = std::max(worst, std::abs(f.dot(lap * f) - sum) / std::max(1.0, sum));
  }
  return worst;
}

/// mu_i/d_max <= lambda_i <= mu_i/d_min.
inline double relationship_mu(const Spectra& s) {
  double worst = 0;
  for (Eigen::Index i = 0; i < s.lambda.size(); ++i)
    worst = std::max({worst, s.mu[i] / s.d_max - s.lambda[i], s.lambda[i] - s.mu[i] / s.d_min});
  return worst;
}

/// lambda_i lies between 1 - alpha_i/d_min and 1 - alpha_i/d_max, whichever order they come in.
inline double relationship_alpha(const Spectra& s) {
  double worst = 0;
  for (Eigen::Index i = 0; i < s.lambda.size(); ++i) {
    const double p = 1 - s.alpha[i] / s.d_min, q = 1 - s.alpha[i] / s.d_max;
    worst = std::max({worst, std::min(p, q) - s.lambda[i], s.lambda[i] - std::max(p, q)});
  }
  return worst;
}

/// The literal ordering 1 - alpha_i/d_min <= lambda_i <= 1 - alpha_i/d_max.
inline double relationship_alpha_literal(const Spectra& s) {
  double worst = 0;
  for (Eigen::Index i = 0; i < s.lambda.size(); ++i)
    worst = std::max({worst, 1 - s.alpha[i] / s.d_min - s.lambda[i], s.lambda[i] - (1 - s.alpha[i] / s.d_max)});
  return worst;
}

/// On d-regular graphs lambda_i = mu_i/d = 1 - alpha_i/d.
inline double regular_identity(const Spectra& s) {
  const double d = s.d_max;
  double worst = 0;
  for (Eigen::Index i = 0; i < s.lambda.size(); ++i)
    worst = std::max({worst, std::abs(s.lambda[i] - s.mu[i] / d), std::abs(s.lambda[i] - (1 - s.alpha[i] / d))});
  return worst;
}

inline bool is_regular(const WeightedGraph& g) {
  const auto d = g.degrees();
  return std::all_of(d.begin(), d.end(), [&](double x) { return std::abs(x - d.front()) < 1e-12; });
}

/// g >= h >= lambda/2.
inline double vertex_expansion(const WeightedGraph& g, double lambda) {
  const auto e = cheeger_and_vertex_expansion(g);
  return std::max(e.cheeger - e.vertex_expansion, lambda / 2 - e.cheeger);
}

/// diam <= 2 sqrt(2 (d_max/d_min)/lambda) log2 N.
inline double diameter_bound(const WeightedGraph& g, const Spectra& s) {
  const double bound = 2 * std::sqrt(2 * (s.d_max / s.d_min) / s.lambda[1]) * std::log2(double(g.size()));
  return diameter(g) - bound;
}

/// For every W whose hop ball of radius floor(L/2)+1 has at most half the volume:
/// vol(V)/vol(W) >= 2 (1 + lambda/2)^{L/2}, L the diameter. Exhaustive for up to 14 vertices,
/// sampled otherwise.
inline double exp_vertex_expansion(const WeightedGraph& g, double lambda, Rng& rng, int samples = 4000) {
  const int n = g.size();
  const int L = diameter(g);
  const int radius = L / 2 + 1;
  const double vol = g.volume();
  const double rhs = 2 * std::pow(1 + lambda / 2, L / 2.0);
  double worst = -1e300;
  auto test = [&](const std::vector<int>& w) {
    const auto dist = hop_distances(g, w);
    double ball = 0;
    for (int v = 0; v < n; ++v)
      if (dist[v] <= radius) ball += g.degree(v);
    if (ball > vol / 2) return;
    worst = std::max(worst, rhs - vol / g.volume(w));
  };
  if (n <= 14) {
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> w;
      for (int v = 0; v < n; ++v)
        if (mask >> v & 1u) w.push_back(v);
      test(w);
    }
  } else {
    std::bernoulli_distribution coin(0.1);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int k = 0; k < samples; ++k) {
      std::vector<int> w;
      for (int v = 0; v < n; ++v)
        if (coin(rng)) w.push_back(v);
      if (w.empty()) w.push_back(pick(rng));
      test(w);
    }
  }
  return worst;
}

/// Sorted distinct adjacency eigenvalues of h that are missing from g's spectrum.
inline double covering_spectrum_defect(const WeightedGraph& g, const WeightedGraph& h) {
  const RVector ag = oracle::eigenvalues(oracle::adjacency(g));
  const RVector ah = oracle::eigenvalues(oracle::adjacency(h));
  double worst = 0;
  for (double x : ah) {
    double best = 1e300;
    for (double y : ag) best = std::min(best, std::abs(x - y));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace checks
