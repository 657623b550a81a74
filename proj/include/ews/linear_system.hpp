#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include "ews/error.hpp"
#include "ews/model_core.hpp"
#include "ews/substitution.hpp"

namespace ews {

template <std::size_t N>
using Matrix = std::array<std::array<double, N>, N>;
template <std::size_t N>
using Vector = std::array<double, N>;

template <std::size_t N>
Matrix<N - 1> minor_of(const Matrix<N>& m, std::size_t row, std::size_t col) {
  Matrix<N - 1> out{};
  for (std::size_t i = 0, r = 0; i < N; ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, c = 0; j < N; ++j) {
      if (j == col) continue;
      out[r][c++] = m[i][j];
    }
    ++r;
  }
  return out;
}

/// Laplace expansion along the first row. Exact zeros are skipped.
template <std::size_t N>
double determinant(const Matrix<N>& m) {
  if constexpr (N == 1) {
    return m[0][0];
  } else if constexpr (N == 2) {
    return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  } else {
    double det = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      if (m[0][j] == 0.0) continue;
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      det += sign * m[0][j] * determinant<N - 1>(minor_of<N>(m, 0, j));
    }
    return det;
  }
}

/// Gaussian elimination with partial pivoting.
template <std::size_t N>
Vector<N> solve_elimination(Matrix<N> a, Vector<N> b) {
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < N; ++i) {
      if (std::fabs(a[i][k]) > std::fabs(a[pivot][k])) pivot = i;
    }
    if (a[pivot][k] == 0.0) throw ModelError(ErrorCode::SingularSystem, "zero pivot in elimination");
    std::swap(a[k], a[pivot]);
    std::swap(b[k], b[pivot]);
    for (std::size_t i = k + 1; i < N; ++i) {
      const double f = a[i][k] / a[k][k];
      if (f == 0.0) continue;
      for (std::size_t j = k; j < N; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  Vector<N> x{};
  for (std::size_t k = N; k-- > 0;) {
    double acc = b[k];
    for (std::size_t j = k + 1; j < N; ++j) acc -= a[k][j] * x[j];
    x[k] = acc / a[k][k];
  }
  return x;
}

template <std::size_t N>
Matrix<N> replace_column(Matrix<N> m, std::size_t col, const Vector<N>& v) {
  for (std::size_t i = 0; i < N; ++i) m[i][col] = v[i];
  return m;
}

/// Exogenous rates of change (p1*, p2*, w_T*, V_K*, V_L*).
struct Shock {
  double p1 = 0.0;
  double p2 = 0.0;
  double w_t = 0.0;
  double v_k = 0.0;
  double v_l = 0.0;
};

/// Positions of the unknowns in X = (V_T*, w_K*, w_L*, X_1*, X_2*).
enum Unknown : std::size_t { kEnergyImports = 0, kRentK = 1, kWageL = 2, kOutput1 = 3, kOutput2 = 4 };

/// The 5x5 system A X = P, rows ordered: zero profit 1, zero profit 2,
/// energy, capital, labor.
struct HatSystem {
  Matrix<5> coefficients{};
  /// dP/dw_T: (theta_T1, theta_T2, g_TT, g_KT, g_LT), entering with a minus sign.
  Vector<5> energy_price_loading{};

  Vector<5> rhs(const Shock& shock) const;
};

HatSystem assemble(const ModelShares& shares, const EwsTerms& ews);

/// -(theta_K1 theta_L2 - theta_K2 theta_L1)^2 theta_1 theta_2 / (theta_K theta_L)
double delta_closed_form(const ModelShares& shares);

/// The 3x3 cofactors entering the Cramer solution for X_1* and X_2*.
struct CofactorSet {
  double c11 = 0.0, c21 = 0.0, c12 = 0.0, c22 = 0.0;
  double ck1 = 0.0, cl1 = 0.0, ck2 = 0.0, cl2 = 0.0;
  double ct1 = 0.0, ct2 = 0.0;
  /// det(A), closed form.
  double delta = 0.0;
};

/// CT1, CT2 and C21 as linear functions of (S, T, U).
struct LinearCofactors {
  double ct1 = 0.0;
  double ct2 = 0.0;
  double c21 = 0.0;
};

/// Coefficients (a, b, c) of C21 = aS + bT + cU.
struct CrossPriceCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

CrossPriceCoefficients cross_price_coefficients(const ModelShares& shares);

/// Every cofactor as a direct 3x3 determinant of g and lambda entries.
CofactorSet direct_cofactors(const ModelShares& shares, const EwsTerms& ews);
LinearCofactors linear_cofactors(const ModelShares& shares, const EwsTriple& stu);

inline constexpr double kCofactorTolerance = 1e-10;

/// direct_cofactors, cross-checked against the linear forms.
/// Throws ExpansionMismatch if the routes disagree.
CofactorSet cofactors(const ModelShares& shares, const EwsTerms& ews);

struct HatSolution {
  Vector<5> elimination{};
  Vector<5> cramer{};
  /// X_1*, X_2* from the cofactor sums.
  double x1_cofactor = 0.0;
  double x2_cofactor = 0.0;
  double residual = 0.0;              // ||A X - P||_inf for the elimination route
  double zero_profit_residual = 0.0;  // max over the two zero-profit rows
  double determinant = 0.0;
};

inline constexpr double kRouteTolerance = 1e-9;
inline constexpr double kResidualTolerance = 1e-10;
inline constexpr double kSingularDeterminant = 1e-14;

/// Solves by elimination and by Cramer's rule; throws SingularSystem or
/// ExpansionMismatch when the routes disagree or the residual is too large.
HatSolution solve(const HatSystem& system, const CofactorSet& cof, const Shock& shock);

/// Cramer numerator for X_1*: the direct 5x5 determinant and its
/// decomposition -[|J| - w_T* |K|] with |J|, |K| the 4x4 determinants.
struct Delta4Decomposition {
  double direct = 0.0;
  double via_j_k = 0.0;
  double via_cofactors = 0.0;  // -[p1 C11 - p2 C21 + VK CK1 - VL CL1 + wT CT1]
  double k_determinant = 0.0;  // |K|
};

Delta4Decomposition delta4_decomposition(const ModelShares& shares, const EwsTerms& ews, const CofactorSet& cof,
                                         const Shock& shock);

}  // namespace ews
