#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace maglab {

using Complex = std::complex<double>;

// Fourier representation of a periodic density on (-pi, pi]:
//   P(theta) = sum_m c_m e^{-im theta},  c_{-m} = conj(c_m),  c_0 = 1/(2pi).
// Only even orders are populated (the angular dynamics couples m to m+-2);
// coeffs[k] holds c_{2k} for k = 0..max_order/2.
struct FourierDistribution {
    double b = 0.0;
    int max_order = 0;  // M, even: highest retained order
    std::vector<Complex> coeffs;

    Complex coeff(int m) const;      // any m in [-M, M]; odd orders are zero
    double density(double theta) const;
    double density_derivative(double theta) const;
    double bin_mass(double lo, double hi) const;  // exact integral over [lo, hi]
};

// nth approximant of the continued fraction a1/(b1 + a2/(b2 + ...)) by
// backward recurrence. Throws on a vanishing denominator.
Complex continued_fraction(std::span<const Complex> a, std::span<const Complex> b, int depth);

// Three-term recursion coefficients of the stationary Fourier modes:
//   Q_m c_m + Q+_m c_{m+2} + Q-_m c_{m-2} = 0  (m != 0).
Complex recursion_q(int m, double b);  // 1 - i 4B/m
double recursion_q_plus(int m);        // (1 - 1/m)/2
double recursion_q_minus(int m);       // (1 + 1/m)/2

// Partial numerator/denominator lists of the continued fraction for the
// quotient S_m = c_{m+2}/c_m, and its depth-th approximant.
std::vector<Complex> quotient_cf_numerators(int m, double b, int depth);
std::vector<Complex> quotient_cf_denominators(int m, double b, int depth);
Complex quotient_s(int m, double b, int depth);

// Stationary distribution of d theta = (B + sin(2 theta)/4) dt + cos(theta) dW.
// B = 0 returns the closed form c_{2k} = (-1)^k/(2pi); otherwise quotients
// S_0, S_2, ... are evaluated by continued fractions (|b| >= 1e-3 required)
// and chained from c_0 = 1/(2pi). Throws NonConvergence if the depth-th and
// (depth-10)-th approximants of S_0 disagree beyond 1e-10.
FourierDistribution stationary_distribution(double b, int max_order = 500, int depth = 100);

// Stationary probability current. j_sta is the theta-independent closed form
// B c_0 + Im[c_2]/4; flatness is the max deviation of the gridded
// J(theta) = (B + 3 sin(2theta)/4) P - (cos(2theta)+1) P'/4 from it.
struct CurrentDiagnostics {
    double j_sta = 0.0;
    double flatness = 0.0;
};
CurrentDiagnostics probability_current(const FourierDistribution& dist, int grid = 4096);

double classical_current(double b);  // B/(2pi)

// E_sta[theta] = -2pi sum_{k>=1} Im[c_{2k}]/k.
double stationary_mean_theta(const FourierDistribution& dist);

// Spectral evolution of the one-variable Fokker-Planck equation on the even
// Fourier modes (diagnostic explicit RK4 stepper; stable for dt <~ 0.1/M^2):
//   dc_m/dt = (iBm - m^2/4) c_m + m(1-m)/8 c_{m+2} - m(1+m)/8 c_{m-2}.
// coeffs[k] = c_{2k}; c_0 is exactly conserved. Throws NumericalError if any
// |c_m| exceeds 1e6.
struct FpEvolveResult {
    std::vector<double> times;
    std::vector<std::vector<Complex>> coeffs;
};
FpEvolveResult fp_evolve(std::vector<Complex> initial, double b, double dt, long steps,
                         int sample_stride = 1000);

// KL divergence int W1 ln(W1/W2) of two even-mode coefficient vectors,
// evaluated on a uniform theta grid.
double kl_divergence(const std::vector<Complex>& w1, const std::vector<Complex>& w2,
                     int grid = 1024);

// Occupancy histogram of a single angular trajectory against the binned
// stationary density. bins cover (-pi, pi] uniformly; the stationary mass per
// bin comes from exact Fourier integration. Requires b != 0.
struct ErgodicityResult {
    std::vector<double> histogram;        // empirical bin probabilities
    std::vector<double> stationary_mass;  // int_bin P_sta
    double tv_distance = 0.0;
};
ErgodicityResult ergodicity_test(double b, double total_time, double dt, std::uint64_t seed,
                                 int bins = 63, double theta0 = 1.0);

}  // namespace maglab
