#include "oracles.hpp"

#include <cmath>

namespace oracle {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                    std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double u = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = u;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * u * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (u * p1 - p0) / (u * u - 1.0);
            const double du = p1 / pp;
            u -= du;
            if (std::fabs(du) < 1e-15) break;
        }
        const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
        x[i] = xm - xl * u;
        x[n - 1 - i] = xm + xl * u;
        const double wi = 2.0 * xl / ((1.0 - u * u) * pp * pp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
}

double bessel_j(int n, double x) {
    static std::vector<double> xs, ws;
    if (xs.empty()) gauss_legendre(512, 0.0, kPi, xs, ws);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < xs.size(); ++i)
        acc += static_cast<long double>(ws[i]) *
               std::cos(n * xs[i] - x * std::sin(xs[i]));
    return static_cast<double>(acc / kPi);
}

double bessel_y_large(int n, double x) {
    static std::vector<double> xs, ws;
    if (xs.empty()) gauss_legendre(512, 0.0, kPi, xs, ws);
    long double osc = 0.0L;
    for (std::size_t i = 0; i < xs.size(); ++i)
        osc += static_cast<long double>(ws[i]) *
               std::sin(x * std::sin(xs[i]) - n * xs[i]);
    // Decaying part: integrand e^{-x sinh t + n t} + (-1)^n e^{-x sinh t - n t};
    // for x >= n + 2 it falls below 1e-22 well before t = 40 / (x - n).
    const double tmax = std::min(40.0 / (x - n), 12.0);
    std::vector<double> ts, tw;
    gauss_legendre(256, 0.0, tmax, ts, tw);
    long double dec = 0.0L;
    const double sgn = n % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double sh = std::sinh(ts[i]);
        dec += static_cast<long double>(tw[i]) * std::exp(-x * sh) *
               (std::exp(n * ts[i]) + sgn * std::exp(-n * ts[i]));
    }
    return static_cast<double>((osc - dec) / kPi);
}

double bessel_y_series01(int n, double x) {
    constexpr long double kPiL = 3.141592653589793238462643383279503L;
    constexpr long double kGamma = 0.577215664901532860606512090082L;
    const long double hx = 0.5L * static_cast<long double>(x);
    const long double q = hx * hx;
    // local ascending J series
    const auto j_series = [&](int m) {
        long double term = 1.0L;
        for (int i = 1; i <= m; ++i) term *= hx / i;
        long double sum = term;
        for (int k = 1; k <= 300; ++k) {
            term *= -q / (static_cast<long double>(k) * (m + k));
            sum += term;
            if (std::fabs(static_cast<double>(term)) < 1e-25) break;
        }
        return sum;
    };
    if (n == 0) {
        long double term = q, hk = 1.0L, sum = term, sign = -1.0L;
        for (int k = 2; k <= 300; ++k) {
            term *= q / (static_cast<long double>(k) * k);
            hk += 1.0L / k;
            sum += sign * hk * term;
            sign = -sign;
            if (term < 1e-28L) break;
        }
        return static_cast<double>(
            (2.0L / kPiL) * ((std::log(hx) + kGamma) * j_series(0) + sum));
    }
    // n == 1
    long double term = hx, hk = 0.0L, hk1 = 1.0L;
    long double sum = (-2.0L * kGamma + hk + hk1) * term;
    long double sign = -1.0L;
    for (int k = 1; k <= 300; ++k) {
        term *= q / (static_cast<long double>(k) * (k + 1));
        hk += 1.0L / k;
        hk1 += 1.0L / (k + 1);
        sum += sign * (-2.0L * kGamma + hk + hk1) * term;
        sign = -sign;
        if (std::fabs(static_cast<double>(term)) < 1e-28) break;
    }
    return static_cast<double>((2.0L / kPiL) * std::log(hx) * j_series(1) -
                               (2.0L / kPiL) / x - sum / kPiL);
}

double chord_ratio(double board_side_mm, double radius_mm) {
    const double half = board_side_mm / (2.0 * radius_mm);
    return 2.0 * radius_mm * std::sin(half) / board_side_mm;
}

} // namespace oracle
