#include "maglab/fokker_planck.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "maglab/errors.hpp"
#include "maglab/rng.hpp"
#include "maglab/trajectory.hpp"

namespace maglab {

namespace {
constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);
}  // namespace

Complex FourierDistribution::coeff(int m) const {
    if (m % 2 != 0) return Complex(0.0, 0.0);
    const int k = std::abs(m) / 2;
    if (k >= static_cast<int>(coeffs.size())) return Complex(0.0, 0.0);
    return m >= 0 ? coeffs[k] : std::conj(coeffs[k]);
}

double FourierDistribution::density(double theta) const {
    double p = coeffs.empty() ? 0.0 : std::real(coeffs[0]);
    for (std::size_t k = 1; k < coeffs.size(); ++k)
        p += 2.0 * std::real(coeffs[k] * std::exp(-kI * (2.0 * k * theta)));
    return p;
}

double FourierDistribution::density_derivative(double theta) const {
    double dp = 0.0;
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        const double m = 2.0 * k;
        dp += 2.0 * std::real(-kI * m * coeffs[k] * std::exp(-kI * (m * theta)));
    }
    return dp;
}

double FourierDistribution::bin_mass(double lo, double hi) const {
    double mass = coeffs.empty() ? 0.0 : std::real(coeffs[0]) * (hi - lo);
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        const double m = 2.0 * k;
        const Complex integral =
            (std::exp(-kI * m * hi) - std::exp(-kI * m * lo)) / (-kI * m);
        mass += 2.0 * std::real(coeffs[k] * integral);
    }
    return mass;
}

Complex continued_fraction(std::span<const Complex> a, std::span<const Complex> b, int depth) {
    if (depth < 1) throw std::invalid_argument("continued_fraction: depth must be >= 1");
    if (static_cast<std::size_t>(depth) > a.size() || static_cast<std::size_t>(depth) > b.size())
        throw std::invalid_argument("continued_fraction: depth exceeds list length");
    Complex f = 0.0;
    for (int k = depth - 1; k >= 0; --k) {
        const Complex den = b[k] + f;
        if (std::abs(den) < 1e-300)
            throw NumericalError("continued_fraction: vanishing denominator at level " +
                                 std::to_string(k + 1));
        f = a[k] / den;
    }
    return f;
}

Complex recursion_q(int m, double b) { return Complex(1.0, -4.0 * b / m); }
double recursion_q_plus(int m) { return 0.5 * (1.0 - 1.0 / m); }
double recursion_q_minus(int m) { return 0.5 * (1.0 + 1.0 / m); }

std::vector<Complex> quotient_cf_numerators(int m, double b, int depth) {
    (void)b;
    std::vector<Complex> a(depth);
    if (depth >= 1) a[0] = -recursion_q_minus(m + 2);
    for (int k = 1; k < depth; ++k)
        a[k] = -recursion_q_plus(m + 2 * k) * recursion_q_minus(m + 2 * k + 2);
    return a;
}

std::vector<Complex> quotient_cf_denominators(int m, double b, int depth) {
    std::vector<Complex> bs(depth);
    for (int k = 0; k < depth; ++k) bs[k] = recursion_q(m + 2 * k + 2, b);
    return bs;
}

Complex quotient_s(int m, double b, int depth) {
    const auto a = quotient_cf_numerators(m, b, depth);
    const auto bs = quotient_cf_denominators(m, b, depth);
    return continued_fraction(a, bs, depth);
}

FourierDistribution stationary_distribution(double b, int max_order, int depth) {
    if (max_order < 2 || max_order % 2 != 0)
        throw std::invalid_argument("stationary_distribution: max_order must be even and >= 2");
    FourierDistribution dist;
    dist.b = b;
    dist.max_order = max_order;
    dist.coeffs.resize(max_order / 2 + 1);
    dist.coeffs[0] = Complex(1.0 / (2.0 * kPi), 0.0);

    if (b == 0.0) {
        for (std::size_t k = 1; k < dist.coeffs.size(); ++k)
            dist.coeffs[k] = Complex((k % 2 == 0 ? 1.0 : -1.0) / (2.0 * kPi), 0.0);
        return dist;
    }
    if (std::abs(b) < 1e-3)
        throw std::invalid_argument(
            "stationary_distribution: |b| < 1e-3 is only supported by the analytic b = 0 branch "
            "(the density degenerates towards delta peaks)");
    if (depth < 11)
        throw std::invalid_argument("stationary_distribution: depth must be >= 11");

    // One backward pass evaluates every quotient: the recurrence starts from
    // a zero tail `depth` levels above the highest retained order, so each
    // stored S_m is at least the depth-th approximant of its continued
    // fraction and adjacent quotients satisfy the three-term recursion
    // identically.
    auto assemble = [&](int levels) {
        std::vector<Complex> s(max_order / 2);
        Complex tail(0.0, 0.0);
        for (int m = max_order - 2 + 2 * levels; m >= 0; m -= 2) {
            const Complex den = recursion_q(m + 2, b) + recursion_q_plus(m + 2) * tail;
            if (std::abs(den) < 1e-300)
                throw NumericalError(
                    "stationary_distribution: vanishing denominator in the quotient recursion "
                    "at order " + std::to_string(m));
            tail = -recursion_q_minus(m + 2) / den;
            if (m <= max_order - 2) s[m / 2] = tail;
        }
        return s;
    };
    const std::vector<Complex> s = assemble(depth);
    const Complex s0_shallow = assemble(depth - 10)[0];
    if (std::abs(s[0] - s0_shallow) > 1e-10)
        throw NonConvergence("stationary_distribution: S_0 approximants at depth " +
                             std::to_string(depth) + " and " + std::to_string(depth - 10) +
                             " differ by " + std::to_string(std::abs(s[0] - s0_shallow)));

    Complex c = dist.coeffs[0];
    for (int m = 0; m + 2 <= max_order; m += 2) {
        c *= s[m / 2];
        dist.coeffs[m / 2 + 1] = c;
    }
    return dist;
}

CurrentDiagnostics probability_current(const FourierDistribution& dist, int grid) {
    if (grid < 2) throw std::invalid_argument("probability_current: grid must be >= 2");
    const double c0 = std::real(dist.coeff(0));
    const double j_closed = dist.b * c0 + 0.25 * std::imag(dist.coeff(2));

    double worst = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double theta = -kPi + 2.0 * kPi * (i + 0.5) / grid;
        const double p = dist.density(theta);
        const double dp = dist.density_derivative(theta);
        const double j = (dist.b + 0.75 * std::sin(2.0 * theta)) * p -
                         0.25 * (std::cos(2.0 * theta) + 1.0) * dp;
        worst = std::max(worst, std::abs(j - j_closed));
    }
    return CurrentDiagnostics{j_closed, worst};
}

double classical_current(double b) { return b / (2.0 * kPi); }

double stationary_mean_theta(const FourierDistribution& dist) {
    double mean = 0.0;
    for (std::size_t k = 1; k < dist.coeffs.size(); ++k)
        mean += std::imag(dist.coeffs[k]) / static_cast<double>(k);
    return -2.0 * kPi * mean;
}

namespace {

// dc_m/dt for the even-mode vector (c_{M+2} treated as zero).
void fp_rhs(const std::vector<Complex>& c, double b, std::vector<Complex>& dc) {
    const int n = static_cast<int>(c.size());
    dc.assign(n, Complex(0.0, 0.0));
    for (int k = 1; k < n; ++k) {
        const double m = 2.0 * k;
        const Complex upper = (k + 1 < n) ? c[k + 1] : Complex(0.0, 0.0);
        dc[k] = (kI * b * m - 0.25 * m * m) * c[k] + (m * (1.0 - m) / 8.0) * upper -
                (m * (1.0 + m) / 8.0) * c[k - 1];
    }
}

}  // namespace

FpEvolveResult fp_evolve(std::vector<Complex> c, double b, double dt, long steps,
                         int sample_stride) {
    if (c.empty()) throw std::invalid_argument("fp_evolve: empty coefficient vector");
    if (!(dt > 0.0)) throw std::invalid_argument("fp_evolve: dt must be > 0");
    if (sample_stride < 1) throw std::invalid_argument("fp_evolve: sample_stride must be >= 1");

    FpEvolveResult out;
    out.times.push_back(0.0);
    out.coeffs.push_back(c);

    const std::size_t n = c.size();
    std::vector<Complex> k1(n), k2(n), k3(n), k4(n), tmp(n);
    for (long step = 0; step < steps; ++step) {
        fp_rhs(c, b, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = c[i] + 0.5 * dt * k1[i];
        fp_rhs(tmp, b, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = c[i] + 0.5 * dt * k2[i];
        fp_rhs(tmp, b, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = c[i] + dt * k3[i];
        fp_rhs(tmp, b, k4);
        for (std::size_t i = 0; i < n; ++i)
            c[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        for (const Complex& v : c)
            if (std::abs(v) > 1e6)
                throw NumericalError("fp_evolve: coefficient magnitude exceeded 1e6 at step " +
                                     std::to_string(step));
        if ((step + 1) % sample_stride == 0 || step + 1 == steps) {
            out.times.push_back((step + 1) * dt);
            out.coeffs.push_back(c);
        }
    }
    return out;
}

namespace {

double density_from_modes(const std::vector<Complex>& c, double theta) {
    double p = std::real(c[0]);
    for (std::size_t k = 1; k < c.size(); ++k)
        p += 2.0 * std::real(c[k] * std::exp(-kI * (2.0 * k * theta)));
    return p;
}

}  // namespace

double kl_divergence(const std::vector<Complex>& w1, const std::vector<Complex>& w2, int grid) {
    if (w1.empty() || w2.empty()) throw std::invalid_argument("kl_divergence: empty coefficients");
    double h = 0.0;
    const double dtheta = 2.0 * kPi / grid;
    for (int i = 0; i < grid; ++i) {
        const double theta = -kPi + dtheta * (i + 0.5);
        const double p1 = std::max(density_from_modes(w1, theta), 1e-300);
        const double p2 = std::max(density_from_modes(w2, theta), 1e-300);
        h += p1 * std::log(p1 / p2) * dtheta;
    }
    return h;
}

ErgodicityResult ergodicity_test(double b, double total_time, double dt, std::uint64_t seed,
                                 int bins, double theta0) {
    if (b == 0.0)
        throw std::invalid_argument("ergodicity_test: b must be nonzero (b = 0 traps the angle)");
    if (bins < 1) throw std::invalid_argument("ergodicity_test: bins must be >= 1");
    const long steps = static_cast<long>(total_time / dt);
    if (steps < 1) throw std::invalid_argument("ergodicity_test: total_time shorter than dt");

    const FourierDistribution dist = stationary_distribution(b);

    ErgodicityResult out;
    out.histogram.assign(bins, 0.0);
    out.stationary_mass.assign(bins, 0.0);

    NormalStream normals(seed);
    const double sigma = std::sqrt(dt);
    double theta = theta0;
    const double bin_width = 2.0 * kPi / bins;
    for (long k = 0; k < steps; ++k) {
        theta = angular_step(theta, b, dt, sigma * normals.next());
        int idx = static_cast<int>((theta + kPi) / bin_width);
        if (idx == bins) idx = bins - 1;  // theta == pi lands in the last bin
        out.histogram[idx] += 1.0;
    }
    for (double& v : out.histogram) v /= static_cast<double>(steps);

    for (int i = 0; i < bins; ++i)
        out.stationary_mass[i] = dist.bin_mass(-kPi + i * bin_width, -kPi + (i + 1) * bin_width);

    double tv = 0.0;
    for (int i = 0; i < bins; ++i) tv += std::abs(out.histogram[i] - out.stationary_mass[i]);
    out.tv_distance = 0.5 * tv;
    return out;
}

}  // namespace maglab
