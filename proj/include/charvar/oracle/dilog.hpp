#pragma once

#include <complex>

namespace charvar::oracle {

/// Clausen function Cl2(x) = -int_0^x log|2 sin(t/2)| dt.
double clausen(double x);

/// Lobachevsky function, Lambda(theta) = Cl2(2 theta) / 2.
double lobachevsky(double theta);

/// Dilogarithm Li2 on the principal branch.
std::complex<double> dilog(std::complex<double> z);

/// Bloch-Wigner function D(z) = Im Li2(z) + arg(1 - z) log|z|.
/// Throws singular-input at 0 and 1.
double bloch_wigner(std::complex<double> z);

}  // namespace charvar::oracle
