#include "gasp/specfun.hpp"

#include "gasp/error.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <cmath>
#include <string>

namespace gasp {

namespace {

bool is_exact_pole(double x) { return x <= 0.0 && x == std::floor(x); }

// Nearest integer when x is within 1e-12 of one.
bool near_integer(double x, int& out)
{
    const double r = std::round(x);
    if (std::abs(x - r) > 1e-12 * std::max(1.0, std::abs(x))) {
        return false;
    }
    out = static_cast<int>(r);
    return true;
}

[[noreturn]] void throw_no_convergence(double a, double b, double c, double z, int terms)
{
    throw ConvergenceError("2F1(" + std::to_string(a) + ", " + std::to_string(b) + "; "
                           + std::to_string(c) + "; " + std::to_string(z)
                           + ") did not converge within " + std::to_string(terms) + " terms");
}

// Σ (a)_k (b)_k / (k! (c)_k) z^k, stopping after two consecutive terms below tol.
double power_series(double a, double b, double c, double z, const SeriesControl& ctl)
{
    double term = 1.0;
    double sum = 1.0;
    int small = 0;
    for (int k = 0; k < ctl.max_terms; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if (term == 0.0) {
            return sum;
        }
        if (std::abs(term) <= ctl.tol * std::abs(sum)) {
            if (++small == 2) {
                return sum;
            }
        } else {
            small = 0;
        }
    }
    throw_no_convergence(a, b, c, z, ctl.max_terms);
}

} // namespace

void SeriesControl::validate() const
{
    if (!(tol > 0.0)) {
        throw ParameterError("series tolerance must be positive");
    }
    if (max_terms < 1) {
        throw ParameterError("series term cap must be at least 1");
    }
}

double gamma(double x)
{
    if (is_exact_pole(x)) {
        throw PoleError("gamma: pole at " + std::to_string(x));
    }
    return std::tgamma(x);
}

double rgamma(double x)
{
    if (is_exact_pole(x)) {
        return 0.0;
    }
    return 1.0 / std::tgamma(x);
}

double digamma(double x)
{
    if (is_exact_pole(x)) {
        throw PoleError("digamma: pole at " + std::to_string(x));
    }
    return boost::math::digamma(x);
}

double pochhammer(double kappa, unsigned n)
{
    double p = 1.0;
    for (unsigned k = 0; k < n; ++k) {
        p *= kappa + k;
    }
    return p;
}

bool is_nonpositive_integer(double x)
{
    int k = 0;
    return near_integer(x, k) && k <= 0;
}

double gauss_summation(double a, double b, double c)
{
    if (is_nonpositive_integer(c)) {
        throw ParameterError("2F1: c must not be a non-positive integer");
    }
    const double s = c - a - b;
    if (!(s > 0.0)) {
        throw DivergenceError("2F1 at z = 1 diverges unless c - a - b > 0");
    }
    return gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b);
}

double gauss_2f1_series(double a, double b, double c, double z, const SeriesControl& ctl)
{
    ctl.validate();
    if (is_nonpositive_integer(c)) {
        throw ParameterError("2F1: c must not be a non-positive integer");
    }
    if (!(std::abs(z) < 1.0)) {
        throw DivergenceError("2F1 power series requires |z| < 1");
    }
    return power_series(a, b, c, z, ctl);
}

double gauss_2f1(double a, double b, double c, double z, const SeriesControl& ctl)
{
    return Gauss2F1(a, b, c, ctl)(z);
}

// ---------------------------------------------------------------------------

Gauss2F1::Unit::Unit(double a_, double b_, double c_, const SeriesControl& ctl_)
    : a(a_), b(b_), c(c_), s(c_ - a_ - b_), ctl(ctl_)
{
    polynomial = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    if (polynomial) {
        return;
    }
    int k = 0;
    if (near_integer(s, k)) {
        if (k < 0) {
            euler = std::make_shared<const Unit>(c - a, c - b, c, ctl);
            return;
        }
        // F(a,b;a+b+n;w) with t = 1-w:
        //   Γ(n)Γ(c)/(Γ(a+n)Γ(b+n)) Σ_{j<n} (a)_j(b)_j/(j!(1-n)_j) t^j
        //   - (-1)^n Γ(c)/(Γ(a)Γ(b)) t^n Σ_j (a+n)_j(b+n)_j/(j!(j+n)!) t^j
        //       × [ln t - ψ(j+1) - ψ(j+n+1) + ψ(a+j+n) + ψ(b+j+n)]
        log_case = true;
        n = k;
        coef_regular = n > 0 ? std::tgamma(static_cast<double>(n)) * gamma(c) * rgamma(a + n) * rgamma(b + n)
                             : 0.0;
        coef_singular = -((n % 2 == 0) ? 1.0 : -1.0) * gamma(c) * rgamma(a) * rgamma(b);
        psi_start = -digamma(1.0) - digamma(n + 1.0) + digamma(a + n) + digamma(b + n);
        return;
    }
    // F = Γ(c)Γ(s)/(Γ(c-a)Γ(c-b)) F(a,b;1-s;t) + t^s Γ(c)Γ(-s)/(Γ(a)Γ(b)) F(c-a,c-b;1+s;t)
    coef_regular = gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b);
    coef_singular = gamma(c) * gamma(-s) * rgamma(a) * rgamma(b);
}

double Gauss2F1::Unit::operator()(double w, double omw) const
{
    if (polynomial || w <= 0.5) {
        return power_series(a, b, c, w, ctl);
    }
    if (omw <= 0.0) {
        return gauss_summation(a, b, c);
    }
    if (euler) {
        return std::pow(omw, s) * (*euler)(w, omw);
    }
    if (!log_case) {
        double value = 0.0;
        if (coef_regular != 0.0) {
            value += coef_regular * power_series(a, b, 1.0 - s, omw, ctl);
        }
        if (coef_singular != 0.0) {
            value += coef_singular * std::pow(omw, s) * power_series(c - a, c - b, 1.0 + s, omw, ctl);
        }
        return value;
    }

    double finite = 0.0;
    if (n > 0) {
        double term = 1.0;
        finite = 1.0;
        for (int j = 0; j + 1 < n; ++j) {
            term *= (a + j) * (b + j) / ((j + 1.0) * (1.0 - n + j)) * omw;
            finite += term;
        }
        finite *= coef_regular;
    }

    const double log_t = std::log(omw);
    double d = 1.0 / std::tgamma(n + 1.0);
    double h = psi_start;
    double sum = d * (log_t + h);
    int small = 0;
    for (int j = 0; j < ctl.max_terms; ++j) {
        h += -1.0 / (j + 1.0) - 1.0 / (j + n + 1.0) + 1.0 / (a + j + n) + 1.0 / (b + j + n);
        d *= (a + n + j) * (b + n + j) / ((j + 1.0) * (j + n + 1.0)) * omw;
        const double term = d * (log_t + h);
        sum += term;
        if (d == 0.0) {
            break;
        }
        if (std::abs(term) <= ctl.tol * std::abs(sum)) {
            if (++small == 2) {
                return finite + coef_singular * std::pow(omw, n) * sum;
            }
        } else {
            small = 0;
        }
    }
    if (d == 0.0) {
        return finite + coef_singular * std::pow(omw, n) * sum;
    }
    throw_no_convergence(a, b, c, w, ctl.max_terms);
}

Gauss2F1::Gauss2F1(double a, double b, double c, SeriesControl ctl)
{
    ctl.validate();
    if (is_nonpositive_integer(c)) {
        throw ParameterError("2F1: c must not be a non-positive integer");
    }
    direct_ = Unit(a, b, c, ctl);
    pfaff_ = Unit(c - a, b, c, ctl);
}

double Gauss2F1::operator()(double z) const
{
    if (std::isnan(z) || z > 1.0) {
        throw DivergenceError("2F1 argument must not exceed 1");
    }
    if (z == 1.0) {
        return gauss_summation(direct_.a, direct_.b, direct_.c);
    }
    if (z >= 0.0) {
        return direct_(z, 1.0 - z);
    }
    return negative(z, 1.0 - z);
}

double Gauss2F1::unit(double w, double one_minus_w) const
{
    return direct_(w, one_minus_w);
}

double Gauss2F1::negative(double z, double one_minus_z) const
{
    // F(a,b;c;z) = (1-z)^{-b} F(c-a,b;c;z/(z-1)),  1 - z/(z-1) = 1/(1-z)
    const double w = -z / one_minus_z;
    return std::pow(one_minus_z, -direct_.b) * pfaff_(w, 1.0 / one_minus_z);
}

} // namespace gasp
