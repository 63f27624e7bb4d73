// Copyright 2026 The qmonty Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Closed-form payoff expansions for the two standard initial states, kept
// free of any operator code from game.hpp so they can cross-check the
// state-vector engine.
//
// The expansions are written in the "row acts" convention: a strategy X
// with coefficients x_ij sends |i> to sum_j x_ij |j>. An Op3 uses the
// column convention, so x_ij == X(j, i).

#include <cmath>
#include <complex>
#include <string>

#include "qmonty/linalg.hpp"

namespace qmonty {

enum class ClosedFormRegime { Unentangled, Entangled };

struct ClosedFormInput {
  Op3 alice;
  Op3 bob;
  double gamma = 0.0;
  ClosedFormRegime regime = ClosedFormRegime::Unentangled;
};

namespace detail {
// x_ij in the row-acts convention.
inline Complex coeff(const Op3& x, int i, int j) {
  return x(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
}
}  // namespace detail

/// (1/9) cos^2 g sum_{j!=k} |sum_i b_ij|^2 |sum_i a_ik|^2
///   + (1/9) sin^2 g sum_j |sum_i b_ij|^2 |sum_i a_ij|^2
inline double payoff_unentangled_closed(const ClosedFormInput& in) {
  double bsum[3], asum[3];
  for (int j = 0; j < 3; ++j) {
    Complex b = 0.0, a = 0.0;
    for (int i = 0; i < 3; ++i) {
      b += detail::coeff(in.bob, i, j);
      a += detail::coeff(in.alice, i, j);
    }
    bsum[j] = std::norm(b);
    asum[j] = std::norm(a);
  }
  double off = 0.0, diag = 0.0;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      if (j == k)
        diag += bsum[j] * asum[k];
      else
        off += bsum[j] * asum[k];
    }
  const double c = std::cos(in.gamma), s = std::sin(in.gamma);
  return (c * c * off + s * s * diag) / 9.0;
}

/// (1/3) sin^2 g sum_j |sum_l b_lj a_lj|^2
///   + (1/3) cos^2 g sum_{j!=k} |sum_l b_lj a_lk|^2
inline double payoff_entangled_closed(const ClosedFormInput& in) {
  double off = 0.0, diag = 0.0;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      Complex corr = 0.0;
      for (int l = 0; l < 3; ++l)
        corr += detail::coeff(in.bob, l, j) * detail::coeff(in.alice, l, k);
      if (j == k)
        diag += std::norm(corr);
      else
        off += std::norm(corr);
    }
  const double c = std::cos(in.gamma), s = std::sin(in.gamma);
  return (s * s * diag + c * c * off) / 3.0;
}

inline double payoff_closed(const ClosedFormInput& in) {
  return in.regime == ClosedFormRegime::Unentangled ? payoff_unentangled_closed(in)
                                                    : payoff_entangled_closed(in);
}

}  // namespace qmonty
