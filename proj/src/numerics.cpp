#include "modebeam/numerics.hpp"
#include "modebeam/errors.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace modebeam {

namespace {

constexpr long double kPiL = 3.141592653589793238462643383279503L;
constexpr long double kEulerGammaL = 0.577215664901532860606512090082L;

// Ascending series J_n(x) = sum_k (-1)^k (x/2)^{n+2k} / (k! (n+k)!).
// Accumulated in long double; used below the asymptotic switch point where
// cancellation stays within ~6 digits.
long double bessel_j_series(int n, long double x) {
    const long double hx = 0.5L * x;
    long double term = 1.0L;
    for (int m = 1; m <= n; ++m) term *= hx / m; // (x/2)^n / n!
    long double sum = term;
    const long double q = hx * hx;
    for (int k = 1; k <= 400; ++k) {
        term *= -q / (static_cast<long double>(k) * (n + k));
        sum += term;
        if (std::fabs(term) < 1e-24L * std::fabs(sum) + 1e-30L) break;
    }
    return sum;
}

// Hankel asymptotic amplitude series for order nu in {0, 1}:
//   J_nu = sqrt(2/(pi x)) (P cos(chi) - Q sin(chi)),
//   Y_nu = sqrt(2/(pi x)) (P sin(chi) + Q cos(chi)),  chi = x - (2nu+1) pi/4.
// Terms are summed to their minimum; below x = 16 this saturates above the
// accuracy target, which is why the series branch extends that far.
void hankel_pq(int nu, long double x, long double& p, long double& q) {
    const long double mu = 4.0L * nu * nu;
    const long double inv8x = 1.0L / (8.0L * x);
    p = 1.0L;
    q = 0.0L;
    long double term = 1.0L;
    long double prev = std::numeric_limits<long double>::max();
    for (int m = 1; m <= 40; ++m) {
        const long double odd = 2.0L * m - 1.0L;
        term *= (mu - odd * odd) * inv8x / m;
        if (std::fabs(term) >= prev) break; // divergence onset
        prev = std::fabs(term);
        const int cycle = m % 4;
        if (cycle == 1) q += term;
        else if (cycle == 2) p -= term;
        else if (cycle == 3) q -= term;
        else p += term;
        if (prev < 1e-22L) break;
    }
}

long double j01_asymptotic(int nu, long double x) {
    long double p, q;
    hankel_pq(nu, x, p, q);
    const long double chi = x - (2 * nu + 1) * kPiL / 4.0L;
    return std::sqrt(2.0L / (kPiL * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

long double y01_asymptotic(int nu, long double x) {
    long double p, q;
    hankel_pq(nu, x, p, q);
    const long double chi = x - (2 * nu + 1) * kPiL / 4.0L;
    return std::sqrt(2.0L / (kPiL * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

constexpr long double kAsymptoticSwitch = 16.0L;

long double j0_impl(long double x) {
    return x < kAsymptoticSwitch ? bessel_j_series(0, x) : j01_asymptotic(0, x);
}

long double j1_impl(long double x) {
    return x < kAsymptoticSwitch ? bessel_j_series(1, x) : j01_asymptotic(1, x);
}

// Series forms of Y0, Y1 (A&S 9.1.11/9.1.13 rearranged with harmonic numbers).
long double y0_series(long double x) {
    const long double hx = 0.5L * x;
    const long double q = hx * hx;
    long double term = q;        // k = 1 term magnitude: (x/2)^2 / (1!)^2
    long double hk = 1.0L;       // H_1
    long double sum = hk * term; // sign (+) for k = 1
    long double sign = -1.0L;
    for (int k = 2; k <= 400; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        hk += 1.0L / k;
        sum += sign * hk * term;
        if (term < 1e-26L * std::fabs(sum) + 1e-32L) break;
        sign = -sign;
    }
    const long double j0 = bessel_j_series(0, x);
    return (2.0L / kPiL) * ((std::log(hx) + kEulerGammaL) * j0 + sum);
}

long double y1_series(long double x) {
    const long double hx = 0.5L * x;
    const long double q = hx * hx;
    // sum_k (-1)^k [psi(k+1) + psi(k+2)] (x/2)^{2k+1} / (k! (k+1)!)
    // with psi(1) = -gamma, psi(m+1) = -gamma + H_m.
    long double term = hx; // k = 0: (x/2) / (0! 1!)
    long double hk = 0.0L, hk1 = 1.0L;
    long double sum = (2.0L * -kEulerGammaL + hk + hk1) * term;
    long double sign = -1.0L;
    for (int k = 1; k <= 400; ++k) {
        term *= q / (static_cast<long double>(k) * (k + 1));
        hk += 1.0L / k;
        hk1 += 1.0L / (k + 1);
        const long double piece = (2.0L * -kEulerGammaL + hk + hk1) * term;
        sum += sign * piece;
        if (std::fabs(piece) < 1e-26L * std::fabs(sum) + 1e-32L) break;
        sign = -sign;
    }
    const long double j1 = bessel_j_series(1, x);
    return (2.0L / kPiL) * std::log(hx) * j1 - (2.0L / kPiL) / x - (1.0L / kPiL) * sum;
}

long double y0_impl(long double x) {
    return x < kAsymptoticSwitch ? y0_series(x) : y01_asymptotic(0, x);
}

long double y1_impl(long double x) {
    return x < kAsymptoticSwitch ? y1_series(x) : y01_asymptotic(1, x);
}

void check_order(int n) {
    if (n < 0 || n > 12)
        throw std::domain_error("bessel: order must be in [0, 12], got " + std::to_string(n));
}

} // namespace

double bessel_j(int n, double x) {
    check_order(n);
    if (!(x >= 0.0) || x > 200.0)
        throw std::domain_error("bessel_j: argument must be in [0, 200]");
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    const long double xl = x;
    if (n == 0) return static_cast<double>(j0_impl(xl));
    if (n == 1) return static_cast<double>(j1_impl(xl));
    if (x < n + 4.0) return static_cast<double>(bessel_j_series(n, xl));
    // x >= n + 4: upward recurrence from J0, J1 is stable here.
    long double jm = j0_impl(xl), jc = j1_impl(xl);
    for (int m = 1; m < n; ++m) {
        const long double jn = (2.0L * m / xl) * jc - jm;
        jm = jc;
        jc = jn;
    }
    return static_cast<double>(jc);
}

double bessel_y(int n, double x) {
    check_order(n);
    if (!(x > 0.0) || x > 200.0)
        throw std::domain_error("bessel_y: argument must be in (0, 200]");
    const long double xl = x;
    if (n == 0) return static_cast<double>(y0_impl(xl));
    long double ym = y0_impl(xl), yc = y1_impl(xl);
    for (int m = 1; m < n; ++m) {
        const long double yn = (2.0L * m / xl) * yc - ym; // always stable upward
        ym = yc;
        yc = yn;
    }
    return static_cast<double>(yc);
}

double bessel_deriv(BesselKind kind, int n, double x) {
    check_order(n);
    const auto eval = [&](int m) {
        return kind == BesselKind::J ? bessel_j(m, x) : bessel_y(m, x);
    };
    const double lower = n == 0 ? -eval(1) : eval(n - 1);
    return 0.5 * (lower - eval(n + 1));
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw ConfigError("gauss_legendre: need at least 1 node");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

SphereGrid make_sphere_grid(int n_theta, int n_phi) {
    if (n_theta < 8 || n_phi < 16)
        throw ConfigError("make_sphere_grid: require n_theta >= 8 and n_phi >= 16");
    // Composite Gauss-Legendre in u = cos(theta), with panel edges on the
    // ground-plane taper band [90, 95] deg. Field integrands are analytic
    // inside each panel, which keeps the quadrature spectrally accurate.
    const double u_taper = std::cos(deg2rad(95.0));
    // Most of the budget goes to the unattenuated front hemisphere.
    const int n_front = 5 * n_theta / 8;
    const int n_taper = std::max(2, n_theta / 8);
    const int n_back = n_theta - n_front - n_taper;
    const struct {
        double lo, hi;
        int count;
    } panels[] = {{0.0, 1.0, n_front}, {u_taper, 0.0, n_taper}, {-1.0, u_taper, n_back}};

    SphereGrid grid;
    grid.n_theta = n_theta;
    grid.n_phi = n_phi;
    grid.nodes.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    const double dphi_weight = kTwoPi / n_phi;
    std::vector<double> u, w;
    for (const auto& panel : panels) {
        gauss_legendre(panel.count, u, w);
        const double mid = 0.5 * (panel.hi + panel.lo);
        const double half = 0.5 * (panel.hi - panel.lo);
        // u descending within the panel so theta ascends
        for (int i = panel.count - 1; i >= 0; --i) {
            const double theta = std::acos(mid + half * u[i]);
            const double wt = w[i] * half * dphi_weight;
            for (int j = 0; j < n_phi; ++j)
                grid.nodes.push_back({theta, kTwoPi * j / n_phi, wt});
        }
    }
    return grid;
}

double find_root_bracketed(const std::function<double(double)>& f,
                           double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw BracketError("find_root_bracketed: tol must be > 0");
    if (!(lo < hi)) throw BracketError("find_root_bracketed: need lo < hi");
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        throw BracketError("find_root_bracketed: no sign change over bracket");
    for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    // Secant polish inside the final bracket.
    double x0 = lo, f0 = flo, x1 = hi, f1 = fhi;
    for (int it = 0; it < 8; ++it) {
        const double denom = f1 - f0;
        if (denom == 0.0) break;
        double x2 = x1 - f1 * (x1 - x0) / denom;
        if (!(x2 >= lo && x2 <= hi)) x2 = 0.5 * (lo + hi);
        const double f2 = f(x2);
        if (f2 == 0.0) return x2;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        if (std::fabs(x1 - x0) < 0.25 * tol) break;
    }
    return std::fabs(f1) <= std::fabs(f0) ? x1 : x0;
}

} // namespace modebeam
