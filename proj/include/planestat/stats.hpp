#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace planestat {

/// ln Gamma(z) for z > 0, relative error <= 1e-12: Stirling series after
/// shifting the argument above 12 with the recursion Gamma(z+1) = z Gamma(z).
inline double log_gamma(double z) {
  if (!(z > 0)) throw std::domain_error("log_gamma requires z > 0");
  double shift = 0.0;
  while (z < 12.0) {
    shift -= std::log(z);
    z += 1.0;
  }
  // Bernoulli-number coefficients B_{2n} / (2n (2n-1))
  static const double coef[] = {
      1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188, -691.0 / 360360, 1.0 / 156,
  };
  const double half_log_2pi = 0.91893853320467274178;
  double series = 0.0, zpow = 1.0 / z, z2 = 1.0 / (z * z);
  for (double c : coef) {
    series += c * zpow;
    zpow *= z2;
  }
  return shift + (z - 0.5) * std::log(z) - z + half_log_2pi + series;
}

/// Standard normal density.
inline double gaussian(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

/// The odd limit function: psi(x) = x (3 - x^2) e^{-x^2/2} / (3 sqrt(2 pi)).
inline double psi(double x) {
  return x * (3.0 - x * x) * std::exp(-0.5 * x * x) / (3.0 * std::sqrt(2.0 * M_PI));
}

/// Parameters of a (possibly interpolated) binomial law.
struct BinomialModel {
  double N = 0;      // trial count
  double mu = 0;     // success probability
  double sigma = 0;  // standard deviation used in the x-normalization
  double E = 0;      // mean N*mu
};

enum class Family { F1, F2, F3, AFFINE, SYM };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::F1: return "F1";
    case Family::F2: return "F2";
    case Family::F3: return "F3";
    case Family::AFFINE: return "AFFINE";
    case Family::SYM: return "SYM";
  }
  return "?";
}

/// The model families, parameterized by q. F1/F2/AFFINE satisfy sigma^2 =
/// N mu (1-mu) exactly; F3 deliberately replaces sigma by sqrt(q). SYM is
/// the synthetic symmetric reference (F2's N with mu = 1/2).
inline BinomialModel make_family(Family f, double q) {
  if (q < 2) throw std::invalid_argument("make_family requires q >= 2");
  const double N = q * q + q + 1;
  BinomialModel m;
  switch (f) {
    case Family::F1:
      m = {N, 1.0 / q, std::sqrt(q - 1.0 / (q * q)), N / q};
      break;
    case Family::F2:
      m = {N, (q + 1) / N, std::sqrt(q * (1.0 - 1.0 / N)), q + 1};
      break;
    case Family::F3:
      m = {N, 1.0 / q, std::sqrt(q), N / q};
      break;
    case Family::AFFINE:
      m = {q * q, 1.0 / q, std::sqrt(q - 1.0), q};
      break;
    case Family::SYM:
      m = {N, 0.5, std::sqrt(N) / 2.0, N / 2.0};
      break;
  }
  return m;
}

/// The continuous binomial b(sigma, x): the Gamma interpolation of the pmf
/// at m = E - sigma x, n = N - m, computed in log space.
inline double b_continuous(const BinomialModel& model, double x) {
  // m and n are computed independently (not n = N - m) and combined in a
  // commutative grouping, so that for a symmetric law (mu = 1/2, E = N/2)
  // the substitution x -> -x swaps (m, n) bitwise and b(-x) == b(x) exactly
  const double s = model.sigma * x;
  const double m = model.E - s;
  const double n = (model.N - model.E) + s;
  if (!(m > 0) || !(n > 0))
    throw std::domain_error("b_continuous: x outside the admissible interval");
  double lg = log_gamma(model.N + 1) - (log_gamma(m + 1) + log_gamma(n + 1)) +
              (m * std::log(model.mu) + n * std::log(1.0 - model.mu));
  return std::exp(lg);
}

inline BinomialModel indexed_family(int i, double q) {
  switch (i) {
    case 1: return make_family(Family::F1, q);
    case 2: return make_family(Family::F2, q);
    case 3: return make_family(Family::F3, q);
    default: throw std::invalid_argument("model index must be 1, 2 or 3");
  }
}

/// B_i(x) = sigma_i * b(sigma_i, x) for the i-th family at q.
inline double model_B(int i, double q, double x) {
  BinomialModel m = indexed_family(i, q);
  return m.sigma * b_continuous(m, x);
}

/// V_i(x) = sigma_i * (B_i(x) - B_i(-x)).
inline double model_V(int i, double q, double x) {
  BinomialModel m = indexed_family(i, q);
  return m.sigma * (model_B(i, q, x) - model_B(i, q, -x));
}

/// One residual row of the expansion checks: r1 is the zeroth-order normal
/// residual, r2 the first-order (skew-corrected) residual, r3 the
/// antisymmetry residual against its limit (psi, or 0 for the symmetric
/// family, whose pmf has no odd part).
struct ResidualRow {
  Family family;
  double q = 0, sigma = 0, x = 0, b = 0, r1 = 0, r2 = 0, r3 = 0;
};

struct ResidualTable {
  std::vector<ResidualRow> rows;
};

inline ResidualTable expansion_residuals(Family family, const std::vector<double>& q_list,
                                         const std::vector<double>& x_grid) {
  if (q_list.empty() || x_grid.empty())
    throw std::invalid_argument("expansion_residuals: empty grid");
  ResidualTable out;
  for (double q : q_list) {
    BinomialModel m = make_family(family, q);
    for (double x : x_grid) {
      double b = b_continuous(m, x);
      double bneg = b_continuous(m, -x);
      double phi = gaussian(x);
      ResidualRow row;
      row.family = family;
      row.q = q;
      row.sigma = m.sigma;
      row.x = x;
      row.b = b;
      row.r1 = m.sigma * b - phi;
      row.r2 = m.sigma * m.sigma * (b - phi / m.sigma) + x * (x * x - 3.0) * phi / 6.0;
      double limit = family == Family::SYM ? 0.0 : psi(x);
      row.r3 = m.sigma * m.sigma * (b - bneg) - limit;
      out.rows.push_back(row);
    }
  }
  return out;
}

}  // namespace planestat
