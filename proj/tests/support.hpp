#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "nsr/expr.hpp"

namespace nsr::testing {

/// Random expression over x1..xn that stays finite on [-1, 1]^n: logs,
/// roots and quotients only ever see 1 + (...)^2.
inline Expr random_expr(std::mt19937_64& rng, std::size_t n, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  auto sub = [&] { return random_expr(rng, n, depth - 1); };
  auto positive = [&] { return Expr::constant(1.0) + Expr::power(sub(), 2); };
  switch (pick(rng)) {
    case 0: return Expr::constant(coef(rng));
    case 1: return Expr::variable(var(rng));
    case 2: return sub() + sub();
    case 3: return sub() - sub();
    case 4: return sub() * sub();
    case 5: return sub() / positive();
    case 6: return Expr::function(std::uniform_int_distribution<int>(0, 1)(rng) ? Expr::Func::Sin : Expr::Func::Cos, sub());
    case 7: return Expr::function(Expr::Func::Exp, Expr::function(Expr::Func::Sin, sub()));
    case 8: return Expr::function(std::uniform_int_distribution<int>(0, 1)(rng) ? Expr::Func::Log : Expr::Func::Sqrt, positive());
    default: return Expr::power(sub(), std::uniform_int_distribution<int>(2, 3)(rng));
  }
}

inline std::vector<double> random_point(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> p(n);
  for (auto& x : p) x = u(rng);
  return p;
}

inline double fd_partial(const Expr& e, std::vector<double> p, std::size_t i, double h = 1e-6) {
  const double x = p[i];
  p[i] = x + h;
  const double fp = eval(e, p);
  p[i] = x - h;
  const double fm = eval(e, p);
  return (fp - fm) / (2.0 * h);
}

inline double fd_second(const Expr& e, std::vector<double> p, std::size_t i, std::size_t j, double h = 1e-4) {
  auto at = [&](double di, double dj) {
    std::vector<double> q = p;
    q[i] += di;
    q[j] += dj;
    return eval(e, q);
  };
  return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
}

/// |a − b| / max(1, |b|)
inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace nsr::testing
