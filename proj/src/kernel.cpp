#include "gasp/kernel.hpp"

#include "gasp/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gasp {

void Params::validate() const
{
    if (m < 3) {
        throw ParameterError("dimension m must be at least 3, got " + std::to_string(m));
    }
    if (!(alpha > 0.0 && 2.0 * alpha < 1.0)) {
        throw ParameterError("alpha must satisfy 0 < 2*alpha < 1, got " + std::to_string(alpha));
    }
}

HalfSpacePoint::HalfSpacePoint(std::vector<double> coords) : coords_(std::move(coords))
{
    if (coords_.size() < 3) {
        throw ParameterError("a point needs at least 3 coordinates");
    }
    if (!(coords_[0] >= 0.0)) {
        throw ParameterError("point lies outside the half-space x1 >= 0");
    }
}

HalfSpacePoint::HalfSpacePoint(std::initializer_list<double> coords)
    : HalfSpacePoint(std::vector<double>(coords))
{
}

PairGeometry pair_geometry(std::span<const double> x, std::span<const double> xi)
{
    if (x.size() != xi.size()) {
        throw ParameterError("points have different dimensions");
    }
    double r2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - xi[i];
        r2 += d * d;
    }
    if (r2 == 0.0) {
        throw CoincidentPointsError();
    }
    const double prod = 4.0 * x[0] * xi[0];
    PairGeometry g;
    g.r2 = r2;
    g.r12 = r2 + prod;
    g.zeta = -prod / r2;
    if (!(g.r12 > 0.0)) {
        throw ParameterError("points too far on opposite sides of x1 = 0");
    }
    return g;
}

Constants constants(const Params& p)
{
    p.validate();
    const double a = p.alpha;
    const double half_m = 0.5 * p.m;
    const double pi_m = std::pow(std::numbers::pi, half_m);
    Constants k;
    k.k1 = gamma(a) * gamma(a + half_m - 1.0) / (std::pow(4.0, 1.0 - a) * pi_m * gamma(2.0 * a));
    k.k2 = gamma(1.0 - a) * gamma(half_m - a) / (std::pow(4.0, a) * pi_m * gamma(2.0 - 2.0 * a));
    return k;
}

namespace {

// Untransformed F(ζ); ζ <= 0 goes through Pfaff with 1-ζ = r₁²/r² kept exact.
double at_zeta(const Gauss2F1& f, const PairGeometry& g)
{
    if (g.zeta <= 0.0) {
        return f.negative(g.zeta, g.r12 / g.r2);
    }
    return f(g.zeta);
}

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

} // namespace

FundamentalSolution::FundamentalSolution(const Params& p, const SeriesControl& ctl)
    : p_(p),
      k_(gasp::constants(p)),
      f_q1_(p.alpha - 0.5 * (p.m - 2), p.alpha, 2.0 * p.alpha, ctl),
      f_q1_raw_(p.alpha + 0.5 * (p.m - 2), p.alpha, 2.0 * p.alpha, ctl),
      f_q2_(0.5 * p.m - p.alpha, 1.0 - p.alpha, 2.0 - 2.0 * p.alpha, ctl),
      f_g1_(p.alpha + 0.5 * p.m, p.alpha, 2.0 * p.alpha, ctl),
      f_g2_(p.alpha + 0.5 * p.m, 1.0 + p.alpha, 1.0 + 2.0 * p.alpha, ctl)
{
}

double FundamentalSolution::q1(std::span<const double> x, std::span<const double> xi) const
{
    const PairGeometry g = pair_geometry(x, xi);
    const double prod = 4.0 * x[0] * xi[0];
    const double w = prod / g.r12;
    const double f = w >= 0.0 ? f_q1_.unit(w, g.r2 / g.r12) : f_q1_(w);
    const double m = p_.m;
    const double radial = m == 3 ? 1.0 / std::sqrt(g.r2) : std::pow(g.r2, -0.5 * (m - 2));
    return k_.k1 * radial * std::pow(g.r12, -p_.alpha) * f;
}

double FundamentalSolution::q1_raw(std::span<const double> x, std::span<const double> xi) const
{
    const PairGeometry g = pair_geometry(x, xi);
    return k_.k1 * std::pow(g.r2, -p_.alpha - 0.5 * (p_.m - 2)) * at_zeta(f_q1_raw_, g);
}

double FundamentalSolution::q2(std::span<const double> x, std::span<const double> xi) const
{
    const PairGeometry g = pair_geometry(x, xi);
    const double prod = x[0] * xi[0];
    if (prod == 0.0) {
        return 0.0;
    }
    const double a = p_.alpha;
    return k_.k2 * std::pow(g.r2, a - 0.5 * p_.m) * std::pow(prod, 1.0 - 2.0 * a) * at_zeta(f_q2_, g);
}

void FundamentalSolution::grad_q1(std::span<const double> xi, std::span<const double> x,
                                  std::span<double> out) const
{
    if (out.size() != xi.size()) {
        throw ParameterError("gradient buffer has the wrong size");
    }
    const PairGeometry g = pair_geometry(xi, x);
    const double a = p_.alpha;
    const double c = -k_.k1 * (2.0 * a + p_.m - 2.0) * std::pow(g.r2, -a - 0.5 * p_.m);
    const double f1 = c * at_zeta(f_g1_, g);
    for (std::size_t i = 0; i < xi.size(); ++i) {
        out[i] = f1 * (xi[i] - x[i]);
    }
    if (x[0] != 0.0) {
        out[0] += c * x[0] * at_zeta(f_g2_, g);
    }
}

std::vector<double> FundamentalSolution::grad_q1(std::span<const double> xi, std::span<const double> x) const
{
    std::vector<double> out(xi.size());
    grad_q1(xi, x, out);
    return out;
}

double FundamentalSolution::dq1_dn(std::span<const double> xi, std::span<const double> normal,
                                   std::span<const double> x) const
{
    if (normal.size() != xi.size()) {
        throw ParameterError("normal has the wrong dimension");
    }
    if (xi.size() == 3) {
        std::array<double, 3> g{};
        grad_q1(xi, x, g);
        return g[0] * normal[0] + g[1] * normal[1] + g[2] * normal[2];
    }
    const std::vector<double> g = grad_q1(xi, x);
    return dot(g, normal);
}

double FundamentalSolution::dq1_dn_direct(std::span<const double> xi, std::span<const double> normal,
                                          std::span<const double> x) const
{
    const PairGeometry g = pair_geometry(xi, x);
    const double a = p_.alpha;
    const double m = p_.m;
    const double r = std::sqrt(g.r2);
    double dn_inv_r = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        dn_inv_r -= (xi[i] - x[i]) * normal[i];
    }
    dn_inv_r /= r * r * r;
    const double scale = (2.0 * a + m - 2.0) * k_.k1;
    return scale * std::pow(g.r2, -a - 0.5 * (m - 3.0)) * at_zeta(f_g1_, g) * dn_inv_r
           - scale * x[0] * std::pow(g.r2, -a - 0.5 * m) * at_zeta(f_g2_, g) * normal[0];
}

double FundamentalSolution::K1(std::span<const double> s, std::span<const double> normal_s,
                               std::span<const double> t) const
{
    if (s[0] == 0.0 && normal_s[0] == 0.0) {
        pair_geometry(s, t);
        return 0.0;
    }
    return std::pow(s[0], 2.0 * p_.alpha) * dq1_dn(s, normal_s, t);
}

double FundamentalSolution::bound(std::span<const double> x, std::span<const double> xi) const
{
    const PairGeometry g = pair_geometry(x, xi);
    return k_.k1 * std::pow(g.r2, -0.5 * (p_.m - 2)) * std::pow(g.r12, -p_.alpha);
}

double q1(std::span<const double> x, std::span<const double> xi, const Params& p)
{
    return FundamentalSolution(p).q1(x, xi);
}

double q2(std::span<const double> x, std::span<const double> xi, const Params& p)
{
    return FundamentalSolution(p).q2(x, xi);
}

std::vector<double> grad_q1(std::span<const double> xi, std::span<const double> x, const Params& p)
{
    return FundamentalSolution(p).grad_q1(xi, x);
}

double dq1_dn(std::span<const double> xi, std::span<const double> normal, std::span<const double> x,
              const Params& p)
{
    return FundamentalSolution(p).dq1_dn(xi, normal, x);
}

double kernel_K1(std::span<const double> s, std::span<const double> normal_s, std::span<const double> t,
                 const Params& p)
{
    return FundamentalSolution(p).K1(s, normal_s, t);
}

double operator_residual(const ScalarField& u, std::span<const double> x, double alpha, double h,
                         Stencil stencil)
{
    if (!(h > 0.0)) {
        throw ParameterError("finite-difference step must be positive");
    }
    if (!(x[0] > 0.0)) {
        throw ParameterError("operator residual needs x1 > 0");
    }
    std::vector<double> y(x.begin(), x.end());
    auto at = [&](std::size_t i, double shift) {
        const double keep = y[i];
        y[i] = keep + shift;
        const double v = u(y);
        y[i] = keep;
        return v;
    };
    const double u0 = u(y);
    double lap = 0.0, lap_abs = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dii = 0.0;
        if (stencil == Stencil::second_order) {
            const double p1 = at(i, h), m1 = at(i, -h);
            dii = (p1 - 2.0 * u0 + m1) / (h * h);
            if (i == 0) {
                d1 = (p1 - m1) / (2.0 * h);
            }
        } else {
            const double p1 = at(i, h), m1 = at(i, -h), p2 = at(i, 2.0 * h), m2 = at(i, -2.0 * h);
            dii = (-p2 + 16.0 * p1 - 30.0 * u0 + 16.0 * m1 - m2) / (12.0 * h * h);
            if (i == 0) {
                d1 = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
            }
        }
        lap += dii;
        lap_abs += std::abs(dii);
    }
    const double drift = 2.0 * alpha / x[0] * d1;
    const double scale = std::abs(u0) + lap_abs + std::abs(drift);
    if (scale == 0.0) {
        return 0.0;
    }
    return std::abs(lap + drift) / scale;
}

} // namespace gasp
