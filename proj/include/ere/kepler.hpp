#pragma once

#include "ere/types.hpp"

namespace ere {

inline const double DEFAULT_E_MAX = 0.99;

/// Kepler ellipse of the shape motion: r(theta) = p/(1 + e cos theta),
/// sigma = (mu p)^{1/4}, period T of the time parametrization.
struct KeplerOrbit {
    double e = 0.0;       // eccentricity, in [0, e_max]
    double p = 1.0;       // semi-latus rectum
    double sigma = 1.0;   // (mu p)^{1/4}
    double period = TWO_PI;
    double e_max = DEFAULT_E_MAX;

    double mu() const { return std::pow(sigma, 4) / p; }
    double semi_major() const { return p / (1.0 - e * e); }
    double r(double theta) const { return p / (1.0 + e * std::cos(theta)); }
    /// dr/dt along the orbit, sigma^2 e sin(theta) / p.
    double rdot(double theta) const { return sigma * sigma * e * std::sin(theta) / p; }
    /// dtheta/dt = sigma^2 / r^2.
    double theta_dot(double theta) const
    {
        const double rr = r(theta);
        return sigma * sigma / (rr * rr);
    }

    /// Orbit with the physical period T = 2 pi sqrt(a^3/mu).
    static KeplerOrbit from_mu_p(double mu, double p, double e, double e_max = DEFAULT_E_MAX);
};

/// sigma = (mu p)^{1/4}.
double sigma_of(double mu, double p);

/// Eccentric anomaly from mean anomaly: Newton on E - e sin E = M with
/// E0 = M + e sin M, residual below 1e-13.
double solve_kepler_equation(double mean_anomaly, double e);

/// True anomaly as a continuous, strictly increasing lift: theta(0) = 0,
/// theta(t + T) = theta(t) + 2 pi. Throws std::domain_error if e >= e_max.
double theta_of_time(const KeplerOrbit& orbit, double t);

}  // namespace ere
