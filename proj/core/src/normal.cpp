#include "subplan/normal.hpp"

#include <cmath>
#include <stdexcept>

namespace subplan {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kSqrt2 = 1.4142135623730950488;

// Acklam's coefficients for the inverse normal CDF (relative error < 1.15e-9
// before refinement).
constexpr double A[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                         -2.759285104469687e+02, 1.383577518672690e+02,
                         -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double B[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                         -1.556989798598866e+02, 6.680131188771972e+01,
                         -1.328068155288572e+01};
constexpr double C[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                         -2.400758277161838e+00, -2.549732539343734e+00,
                         4.374664141464968e+00,  2.938163982698783e+00};
constexpr double D[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                         2.445134137142996e+00, 3.754408661907416e+00};

double acklam(double q) {
    constexpr double p_low = 0.02425;
    if (q < p_low) {
        const double u = std::sqrt(-2.0 * std::log(q));
        return (((((C[0] * u + C[1]) * u + C[2]) * u + C[3]) * u + C[4]) * u + C[5]) /
               ((((D[0] * u + D[1]) * u + D[2]) * u + D[3]) * u + 1.0);
    }
    if (q > 1.0 - p_low) {
        const double u = std::sqrt(-2.0 * std::log(1.0 - q));
        return -(((((C[0] * u + C[1]) * u + C[2]) * u + C[3]) * u + C[4]) * u + C[5]) /
               ((((D[0] * u + D[1]) * u + D[2]) * u + D[3]) * u + 1.0);
    }
    const double u = q - 0.5;
    const double r = u * u;
    return (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * u /
           (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0);
}

} // namespace

double std_normal_pdf(double z) {
    return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double std_normal_cdf(double z) {
    return 0.5 * std::erfc(-z / kSqrt2);
}

double std_normal_quantile(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw std::domain_error("std_normal_quantile: q must lie in (0, 1)");
    }
    double z = acklam(q);
    const double density = std_normal_pdf(z);
    if (density > 0.0) {
        z -= (std_normal_cdf(z) - q) / density;
    }
    return z;
}

} // namespace subplan
