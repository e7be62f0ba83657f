#pragma once

// Shared bits for the unit tests: hand-rolled random generators (fixed
// seeds, so failures replay) and a few closed forms of the worked examples.

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "vpw/core_model.hpp"

namespace vt {

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
};

// 1..max_boxes disjoint boxes inside [lo, hi]
inline vpw::Marginal random_boxes(Gen& g, double lo, double hi, int max_boxes = 4) {
  int n = g.integer(1, max_boxes);
  std::vector<double> cuts;
  for (int i = 0; i < 2 * n; ++i) cuts.push_back(g.uniform(lo, hi));
  std::sort(cuts.begin(), cuts.end());
  std::vector<vpw::Piece> p;
  for (int i = 0; i < n; ++i)
    if (cuts[2 * i + 1] > cuts[2 * i]) p.push_back({cuts[2 * i], cuts[2 * i + 1], g.uniform(0.1, 2.0)});
  return vpw::Marginal::piecewise(p);
}

// even about alpha: boxes in [alpha + lo, alpha + hi] and their mirror images
inline vpw::Marginal random_even_boxes(Gen& g, double alpha, double lo, double hi, int max_boxes = 3) {
  auto half = random_boxes(g, lo, hi, max_boxes);
  std::vector<vpw::Piece> p;
  for (const auto& b : half.pieces()) {
    p.push_back({alpha + b.lo, alpha + b.hi, b.height});
    p.push_back({alpha - b.hi, alpha - b.lo, b.height});
  }
  return vpw::Marginal::piecewise(p);
}

inline double sum_of_boxes(const vpw::Marginal& g) {
  double s = 0;
  for (const auto& b : g.pieces()) s += (b.hi - b.lo) * b.height;
  return s;
}

// worked solitary example (alpha = 0, e = q = 1)
inline double example_rho_inf(double phi) {
  auto sq = [](double x) { return x > 0 ? std::sqrt(x) : 0.0; };
  double plus = std::sqrt(4 + phi) - std::sqrt(1 + phi);
  double minus = sq(3.61 - phi) - sq(1 - phi) + sq(0.01 - phi);
  return plus - minus;
}

inline double example_v_inf_upper(double phi) {  // 1/100 <= Phi <= 1
  auto p15 = [](double x) { return x * std::sqrt(x); };
  return (2.0 / 3.0) * (p15(4 + phi) - p15(1 + phi) + p15(3.61 - phi) - p15(1 - phi) - 12.86);
}

}  // namespace vt
