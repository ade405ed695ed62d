#pragma once

#include <complex>

namespace echo2d::kernels {

// Closed-form time integrals of plane waves. Frequencies in cm^-1, times in
// the internal cm unit (see units::fs_to_cm), so a*t is a phase in radians.

/// (e^{ix} - 1)/(ix), continuous through x = 0.
std::complex<double> phase_average(double x);

/// J(a,t) = int_0^t e^{i a t'} dt'.
std::complex<double> first_order(double a, double t);

/// I(a,b,t) = int_0^t dt' e^{i a t'} int_0^{t'} dt'' e^{i b t''}.
std::complex<double> ordered_second_order(double a, double b, double t);

}  // namespace echo2d::kernels
