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

// Fixed-dimension complex linear algebra for the three-qutrit game.
//
// Basis convention (used everywhere in qmonty): a three-qutrit ket
// |o b a> with o = opened box, b = Bob's choice, a = Alice's choice has
// linear index 9*o + 3*b + a. The opened-box qutrit is most significant.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "qmonty/error.hpp"
#include "qmonty/rng.hpp"

namespace qmonty {

using Complex = std::complex<double>;

/// Acceptance tolerance for user-supplied matrices.
inline constexpr double kUnitaryTol = 1e-9;
/// Tolerance for internally constructed states.
inline constexpr double kInternalTol = 1e-12;

/// 3x3 complex operator, row-major. Entry (i, j) maps input |j> to output |i>.
class Op3 {
 public:
  Op3() = default;
  explicit Op3(const std::array<Complex, 9>& entries) : m_(entries) {}
  Op3(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      std::size_t j = 0;
      for (const auto& v : row) m_[3 * i + j++] = v;
      ++i;
    }
  }

  static Op3 identity() { return Op3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}; }

  Complex& operator()(std::size_t i, std::size_t j) { return m_[3 * i + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return m_[3 * i + j];
  }

  const std::array<Complex, 9>& entries() const { return m_; }

  friend Op3 operator*(const Op3& x, const Op3& y) {
    Op3 r;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < 3; ++k) s += x(i, k) * y(k, j);
        r(i, j) = s;
      }
    return r;
  }
  friend Op3 operator+(Op3 x, const Op3& y) {
    for (std::size_t k = 0; k < 9; ++k) x.m_[k] += y.m_[k];
    return x;
  }
  friend Op3 operator-(Op3 x, const Op3& y) {
    for (std::size_t k = 0; k < 9; ++k) x.m_[k] -= y.m_[k];
    return x;
  }
  friend Op3 operator*(Complex c, Op3 x) {
    for (auto& v : x.m_) v *= c;
    return x;
  }
  friend bool operator==(const Op3&, const Op3&) = default;

 private:
  std::array<Complex, 9> m_{};
};

inline Op3 adjoint(const Op3& x) {
  Op3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = std::conj(x(j, i));
  return r;
}

inline Op3 transpose(const Op3& x) {
  Op3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = x(j, i);
  return r;
}

/// Entrywise complex conjugate (not the adjoint).
inline Op3 conjugate(const Op3& x) {
  Op3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = std::conj(x(i, j));
  return r;
}

inline Complex trace(const Op3& x) { return x(0, 0) + x(1, 1) + x(2, 2); }

inline Complex det(const Op3& x) {
  return x(0, 0) * (x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1)) -
         x(0, 1) * (x(1, 0) * x(2, 2) - x(1, 2) * x(2, 0)) +
         x(0, 2) * (x(1, 0) * x(2, 1) - x(1, 1) * x(2, 0));
}

inline double max_abs_diff(const Op3& x, const Op3& y) {
  double d = 0.0;
  for (std::size_t k = 0; k < 9; ++k)
    d = std::max(d, std::abs(x.entries()[k] - y.entries()[k]));
  return d;
}

/// Max row-sum norm.
inline double inf_norm(const Op3& x) {
  double n = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    n = std::max(n, std::abs(x(i, 0)) + std::abs(x(i, 1)) + std::abs(x(i, 2)));
  return n;
}

inline bool is_finite(const Op3& x) {
  for (const auto& v : x.entries())
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

/// max |(U^dagger U - I)_ij|
inline double unitarity_defect(const Op3& u) {
  return max_abs_diff(adjoint(u) * u, Op3::identity());
}

inline bool is_unitary(const Op3& u, double tol = kUnitaryTol) {
  return is_finite(u) && unitarity_defect(u) <= tol;
}

inline bool is_special_unitary(const Op3& u, double tol = kUnitaryTol) {
  return is_unitary(u, tol) && std::abs(det(u) - 1.0) <= tol;
}

/// Coordinates on SU(3): one angle per Gell-Mann generator.
using Su3Params = std::array<double, 8>;

/// The eight Gell-Mann matrices, normalized so tr(l_a l_b) = 2 delta_ab.
inline const std::array<Op3, 8>& gellmann_generators() {
  static const std::array<Op3, 8> g = [] {
    const Complex i{0.0, 1.0};
    const double r3 = 1.0 / std::sqrt(3.0);
    return std::array<Op3, 8>{
        Op3{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}},
        Op3{{0, -i, 0}, {i, 0, 0}, {0, 0, 0}},
        Op3{{1, 0, 0}, {0, -1, 0}, {0, 0, 0}},
        Op3{{0, 0, 1}, {0, 0, 0}, {1, 0, 0}},
        Op3{{0, 0, -i}, {0, 0, 0}, {i, 0, 0}},
        Op3{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}},
        Op3{{0, 0, 0}, {0, 0, -i}, {0, i, 0}},
        Op3{{r3, 0, 0}, {0, r3, 0}, {0, 0, -2.0 * r3}},
    };
  }();
  return g;
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
///
/// The argument is scaled by 2^-s until its row-sum norm is at most 1/4; the
/// series is then summed until the next term falls below 1e-18 relative to
/// the partial sum (at most 30 terms, which that bound never needs for a
/// finite input) and the result is squared s times.
inline Op3 matexp3(const Op3& m) {
  if (!is_finite(m))
    throw Error(ErrorCode::ExpNotConverged, "matexp3: non-finite input");
  const double norm = inf_norm(m);
  int squarings = 0;
  if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  const Op3 x = Complex(std::ldexp(1.0, -squarings), 0.0) * m;

  Op3 sum = Op3::identity();
  Op3 term = Op3::identity();
  bool converged = false;
  for (int k = 1; k <= 30; ++k) {
    term = Complex(1.0 / k, 0.0) * (term * x);
    sum = sum + term;
    if (inf_norm(term) <= 1e-18 * inf_norm(sum)) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw Error(ErrorCode::ExpNotConverged, "matexp3: series did not converge");
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// exp(i * sum_a theta_a * lambda_a). Always special unitary up to round-off.
inline Op3 su3_from_params(const Su3Params& theta) {
  const auto& g = gellmann_generators();
  Op3 h;
  for (std::size_t a = 0; a < 8; ++a) h = h + Complex(0.0, theta[a]) * g[a];
  return matexp3(h);
}

/// Seeded random SU(3) element: Gram-Schmidt on a complex Gaussian matrix,
/// then a global phase that brings the determinant to 1.
inline Op3 random_su3(std::uint64_t seed) {
  constexpr int kAttempts = 16;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(attempt));
    Op3 z;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        z(i, j) = Complex(rng.normal(), rng.normal()) / std::numbers::sqrt2;

    bool degenerate = false;
    for (std::size_t c = 0; c < 3 && !degenerate; ++c) {
      for (std::size_t p = 0; p < c; ++p) {
        Complex proj = 0.0;
        for (std::size_t r = 0; r < 3; ++r) proj += std::conj(z(r, p)) * z(r, c);
        for (std::size_t r = 0; r < 3; ++r) z(r, c) -= proj * z(r, p);
      }
      double n = 0.0;
      for (std::size_t r = 0; r < 3; ++r) n += std::norm(z(r, c));
      n = std::sqrt(n);
      if (n < 1e-8) {
        degenerate = true;
        break;
      }
      for (std::size_t r = 0; r < 3; ++r) z(r, c) /= n;
    }
    if (degenerate) continue;
    const Complex phase = std::polar(1.0, -std::arg(det(z)) / 3.0);
    return phase * z;
  }
  throw Error(ErrorCode::DegenerateSample,
              "random_su3: orthonormalization kept degenerating");
}

struct BasisTriple {
  int o = 0;
  int b = 0;
  int a = 0;
  friend bool operator==(const BasisTriple&, const BasisTriple&) = default;
};

constexpr std::size_t basis_index(int o, int b, int a) {
  return static_cast<std::size_t>(9 * o + 3 * b + a);
}

constexpr BasisTriple decode_index(std::size_t index) {
  const int i = static_cast<int>(index);
  return {i / 9, (i / 3) % 3, i % 3};
}

/// Amplitudes of a three-qutrit state, indexed by basis_index(o, b, a).
class StateVector27 {
 public:
  static constexpr std::size_t kSize = 27;

  StateVector27() = default;
  explicit StateVector27(const std::array<Complex, kSize>& amps) : amps_(amps) {}

  static StateVector27 basis(int o, int b, int a) {
    StateVector27 s;
    s.amps_[basis_index(o, b, a)] = 1.0;
    return s;
  }

  Complex& operator[](std::size_t i) { return amps_[i]; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  const std::array<Complex, kSize>& amplitudes() const { return amps_; }

  double norm2() const {
    double n = 0.0;
    for (const auto& v : amps_) n += std::norm(v);
    return n;
  }

  friend StateVector27 operator+(StateVector27 x, const StateVector27& y) {
    for (std::size_t i = 0; i < kSize; ++i) x.amps_[i] += y.amps_[i];
    return x;
  }
  friend StateVector27 operator*(Complex c, StateVector27 x) {
    for (auto& v : x.amps_) v *= c;
    return x;
  }
  friend bool operator==(const StateVector27&, const StateVector27&) = default;

 private:
  std::array<Complex, kSize> amps_{};
};

/// <x|y>, antilinear in x.
inline Complex inner(const StateVector27& x, const StateVector27& y) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < StateVector27::kSize; ++i)
    s += std::conj(x[i]) * y[i];
  return s;
}

/// Sparse 27x27 operator stored by input column.
class Op27 {
 public:
  struct Term {
    std::size_t out;
    Complex weight;
  };

  static Op27 identity() {
    Op27 r;
    for (std::size_t i = 0; i < 27; ++i) r.add(i, i, 1.0);
    return r;
  }

  void add(std::size_t in, std::size_t out, Complex weight) {
    for (auto& t : cols_[in])
      if (t.out == out) {
        t.weight += weight;
        return;
      }
    cols_[in].push_back({out, weight});
  }

  const std::vector<Term>& column(std::size_t in) const { return cols_[in]; }

  Complex element(std::size_t out, std::size_t in) const {
    for (const auto& t : cols_[in])
      if (t.out == out) return t.weight;
    return 0.0;
  }

  /// Exactly one unit-weight output per input, bijective on the basis.
  bool is_permutation() const {
    std::array<bool, 27> hit{};
    for (std::size_t in = 0; in < 27; ++in) {
      if (cols_[in].size() != 1) return false;
      const Term& t = cols_[in].front();
      if (t.weight != Complex(1.0, 0.0) || t.out >= 27 || hit[t.out])
        return false;
      hit[t.out] = true;
    }
    return true;
  }

  /// Output index of basis ket `in`; only meaningful for permutations.
  std::size_t image(std::size_t in) const { return cols_[in].front().out; }

 private:
  std::array<std::vector<Term>, 27> cols_;
};

inline StateVector27 apply(const Op27& op, const StateVector27& s) {
  StateVector27 r;
  for (std::size_t in = 0; in < 27; ++in) {
    if (s[in] == Complex(0.0, 0.0)) continue;
    for (const auto& t : op.column(in)) r[t.out] += t.weight * s[in];
  }
  return r;
}

/// x * y (y acts first).
inline Op27 compose(const Op27& x, const Op27& y) {
  Op27 r;
  for (std::size_t in = 0; in < 27; ++in)
    for (const auto& ty : y.column(in))
      for (const auto& tx : x.column(ty.out)) r.add(in, tx.out, tx.weight * ty.weight);
  return r;
}

/// max |(x - y)_ij| over the dense 27x27 representation.
inline double max_abs_diff(const Op27& x, const Op27& y) {
  double d = 0.0;
  for (std::size_t in = 0; in < 27; ++in)
    for (std::size_t out = 0; out < 27; ++out)
      d = std::max(d, std::abs(x.element(out, in) - y.element(out, in)));
  return d;
}

namespace detail {
// Kronecker embedding of `op` on one qutrit, identity on the other two.
// `stride` is 3 for Bob's qutrit and 1 for Alice's.
inline Op27 embed(const Op3& op, std::size_t stride) {
  Op27 r;
  for (std::size_t in = 0; in < 27; ++in) {
    const std::size_t digit = (in / stride) % 3;
    const std::size_t base = in - digit * stride;
    for (std::size_t row = 0; row < 3; ++row) {
      const Complex w = op(row, digit);
      if (w != Complex(0.0, 0.0)) r.add(in, base + row * stride, w);
    }
  }
  return r;
}
}  // namespace detail

/// I (x) op (x) I, acting on Bob's qutrit.
inline Op27 embed_bob(const Op3& op) { return detail::embed(op, 3); }

/// I (x) I (x) op, acting on Alice's qutrit.
inline Op27 embed_alice(const Op3& op) { return detail::embed(op, 1); }

}  // namespace qmonty
