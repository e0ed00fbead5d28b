#pragma once

#include "hartogs/metric.hpp"
#include "hartogs/profile.hpp"

namespace hartogs {

// The six Christoffel symbols of the slice metric, Gkij = Gamma^k_ij.
struct ChristoffelSlice {
  double G111 = 0.0;
  double G211 = 0.0;
  double G112 = 0.0;
  double G212 = 0.0;
  double G122 = 0.0;
  double G222 = 0.0;
};

enum class ClosedForm {
  // Gamma^1_11 with the factor F' on the u^2 (2F'^2 + v^2 F'') term.
  Corrected,
  // Gamma^1_11 exactly as typeset in the source formula set (missing that factor).
  AsPrinted,
};

// D = g11 g22 - g12^2 = 4 (C F - F'^2 u^2 v^2) / (F - v^2)^4
double slice_determinant(const Profile& p, const SlicePoint& sp);

// Closed-form symbols in terms of F, F', F'', F''' at u^2.
ChristoffelSlice christoffel_closed(const Profile& p, const SlicePoint& sp,
                                    ClosedForm form = ClosedForm::Corrected);

// Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij) from the analytic metric jet.
ChristoffelSlice christoffel_generic(const Profile& p, const SlicePoint& sp);

// R(t) = t^2 F''^2 + F (2F'' + t F''') - F' (2t F'' + t^2 F''').
double residual_ode(const Profile& p, double t);

// Gamma^2_11 + k(2 Gamma^2_12 - Gamma^1_11) + k^2(Gamma^2_22 - 2 Gamma^1_12) - k^3 Gamma^1_22
// at (u, ku); vanishes identically in u iff the line v = ku carries a geodesic.
double straightline_residual(const Profile& p, double k, double u);

// The same quantity assembled from R(u^2): -4 k u R(u^2) / (D (k^2 u^2 - F)^3).
double straightline_residual_algebraic(const Profile& p, double k, double u);

// The typeset form 8 k u R(u^2) / (D (k^2 u^2 - F)^3). Equals -2x straightline_residual.
double straightline_residual_as_printed(const Profile& p, double k, double u);

}  // namespace hartogs
