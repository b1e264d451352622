#pragma once

// Independent reference computations used only by the tests.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "stils/types.hpp"

namespace oracle {

/// Gauss-Legendre nodes by Newton iteration on P_n (no eigensolver).
inline void gauss_legendre_newton(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (n == 1) ? z : p1;
      const double pnm1 = (n == 1) ? 1.0 : p0;
      const double dp = n * (z * pn - pnm1) / (z * z - 1.0);
      const double dz = pn / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (z * p1 - p0) / (z * z - 1.0);
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

/// Q1 blocks of the time-integrated kernels on the axis-aligned rectangle
/// [x0,x1]x[y0,y1], node order (x0,y0),(x1,y0),(x1,y1),(x0,y1), with the
/// shape functions written directly as products of 1-D hats.
struct RectBlocks {
  Eigen::Matrix4d lhs;
  Eigen::Matrix4d rhs;
};

inline RectBlocks rectangle_q1_blocks(double x0, double x1, double y0, double y1,
                                      const std::function<Eigen::Vector2d(double, double)>& u,
                                      double tau, int n = 10) {
  std::vector<double> gx, gw;
  gauss_legendre_newton(n, gx, gw);
  const double hx = x1 - x0, hy = y1 - y0;
  RectBlocks b;
  b.lhs.setZero();
  b.rhs.setZero();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = x0 + 0.5 * hx * (gx[i] + 1.0);
      const double y = y0 + 0.5 * hy * (gx[j] + 1.0);
      const double w = gw[i] * gw[j] * 0.25 * hx * hy;
      const double lx0 = (x1 - x) / hx, lx1 = (x - x0) / hx;
      const double ly0 = (y1 - y) / hy, ly1 = (y - y0) / hy;
      const std::array<double, 4> psi{lx0 * ly0, lx1 * ly0, lx1 * ly1, lx0 * ly1};
      const std::array<Eigen::Vector2d, 4> grad{
          Eigen::Vector2d{-ly0 / hx, -lx0 / hy}, Eigen::Vector2d{ly0 / hx, -lx1 / hy},
          Eigen::Vector2d{ly1 / hx, lx1 / hy}, Eigen::Vector2d{-ly1 / hx, lx0 / hy}};
      const Eigen::Vector2d vel = u(x, y);
      for (int r = 0; r < 4; ++r) {
        for (int l = 0; l < 4; ++l) {
          const double gl = grad[l].dot(vel), gi = grad[r].dot(vel);
          b.lhs(r, l) += w * (tau / 3.0 * gl * gi + 0.5 * gl * psi[r] + 0.5 * gi * psi[l] +
                              psi[l] * psi[r] / tau);
          b.rhs(r, l) += w * (-tau / 6.0 * gl * gi - 0.5 * gl * psi[r] + 0.5 * gi * psi[l] +
                              psi[l] * psi[r] / tau);
        }
      }
    }
  }
  return b;
}

/// Exact rational number with 64-bit parts, enough for low-degree Lagrange
/// products on [0, 1].
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational(std::int64_t n = 0, std::int64_t d = 1) : num(n), den(d) { normalize(); }
  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Polynomial in s with rational coefficients, c[k] * s^k.
using Poly = std::vector<Rational>;

inline Poly mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
  return c;
}

inline Poly deriv(const Poly& a) {
  if (a.size() <= 1) return {Rational(0)};
  Poly d(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) d[k - 1] = a[k] * Rational(static_cast<std::int64_t>(k));
  return d;
}

inline Rational integrate01(const Poly& a) {
  Rational s(0);
  for (std::size_t k = 0; k < a.size(); ++k) s = s + a[k] / Rational(static_cast<std::int64_t>(k + 1));
  return s;
}

/// Lagrange basis on reference nodes in [0, 1] (as rationals).
inline std::vector<Poly> lagrange(const std::vector<Rational>& nodes) {
  std::vector<Poly> basis;
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    Poly p{Rational(1)};
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j == m) continue;
      const Rational scale = Rational(1) / (nodes[m] - nodes[j]);
      p = mul(p, Poly{Rational(0) - nodes[j] * scale, scale});
    }
    basis.push_back(p);
  }
  return basis;
}

inline Eigen::MatrixXd to_dense(const stils::SparseMatrix& a) { return Eigen::MatrixXd(a); }

inline Eigen::MatrixXd random_spd(int n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
  return m.transpose() * m + Eigen::MatrixXd::Identity(n, n);
}

inline stils::SparseMatrix to_sparse(const Eigen::MatrixXd& d) {
  return d.sparseView();
}

}  // namespace oracle
