#include "ere/kepler.hpp"

#include <cmath>

namespace ere {

double sigma_of(double mu, double p)
{
    if (!(mu > 0.0) || !(p > 0.0))
        throw std::domain_error("sigma_of: mu and p must be positive");
    return std::pow(mu * p, 0.25);
}

KeplerOrbit KeplerOrbit::from_mu_p(double mu, double p, double e, double e_max)
{
    if (!(e >= 0.0 && e < 1.0)) throw std::domain_error("KeplerOrbit: e must lie in [0,1)");
    KeplerOrbit o;
    o.e = e;
    o.p = p;
    o.sigma = sigma_of(mu, p);
    o.e_max = e_max;
    const double a = p / (1.0 - e * e);
    o.period = TWO_PI * std::sqrt(a * a * a / mu);
    return o;
}

double solve_kepler_equation(double mean_anomaly, double e)
{
    const double M = mean_anomaly;
    double E = M + e * std::sin(M);
    for (int it = 0; it < 64; ++it) {
        const double f = E - e * std::sin(E) - M;
        const double df = 1.0 - e * std::cos(E);
        const double step = f / df;
        E -= step;
        if (std::abs(step) < 1e-15) break;
    }
    return E;
}

double theta_of_time(const KeplerOrbit& orbit, double t)
{
    if (orbit.e >= orbit.e_max)
        throw std::domain_error("theta_of_time: eccentricity at or above e_max");
    if (orbit.e == 0.0) return TWO_PI * t / orbit.period;

    const double cycles = std::floor(t / orbit.period);
    const double M = TWO_PI * (t / orbit.period - cycles);
    const double E = solve_kepler_equation(M, orbit.e);
    // Quadrant-safe half-angle map from eccentric to true anomaly.
    const double s = std::sqrt(1.0 + orbit.e) * std::sin(0.5 * E);
    const double c = std::sqrt(1.0 - orbit.e) * std::cos(0.5 * E);
    double theta = 2.0 * std::atan2(s, c);
    if (theta < 0.0) theta += TWO_PI;
    return theta + TWO_PI * cycles;
}

}  // namespace ere
