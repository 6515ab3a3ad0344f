#pragma once
#include <vector>

namespace toescat::poly {

//! Coefficients c[m] of sum_m c[m] s^m.
using Coeffs = std::vector<double>;

double eval(const Coeffs &c, double s);
Coeffs derivative(const Coeffs &c);
//! Highest index with a nonzero coefficient, -1 for the zero polynomial.
int degree(const Coeffs &c);

//! Real roots in [a, b], sorted. Companion-matrix eigenvalues with imaginary
//! part below 1e-10 (after Newton polish) are kept.
std::vector<double> real_roots(const Coeffs &c, double a, double b);

//! Coefficients of s -> p(shift + scale * s).
Coeffs recenter(const Coeffs &c, double shift, double scale);

} // namespace toescat::poly
