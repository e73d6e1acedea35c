#include "gasp/surface.hpp"

#include "gasp/error.hpp"
#include "gasp/quadrature.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace gasp {

namespace {

constexpr double pi = std::numbers::pi;

void check_grid(int n1, int n2, double grading)
{
    if (n1 < 4 || n2 < 4) {
        throw ParameterError("mesh needs at least 4 nodes in each direction");
    }
    if (!(grading >= 1.0)) {
        throw ParameterError("grading exponent must be >= 1");
    }
}

} // namespace

GeneratorCurve hemisphere_generator(double a)
{
    return half_ellipsoid_generator(a, a);
}

GeneratorCurve half_ellipsoid_generator(double c, double a)
{
    if (!(a > 0.0 && c > 0.0)) {
        throw ParameterError("half-ellipsoid semi-axes must be positive");
    }
    GeneratorCurve g;
    g.x1 = [c](double t) { return c * std::cos(0.5 * pi * t); };
    g.rho = [a](double t) { return a * std::sin(0.5 * pi * t); };
    g.dx1 = [c](double t) { return -0.5 * pi * c * std::sin(0.5 * pi * t); };
    g.drho = [a](double t) { return 0.5 * pi * a * std::cos(0.5 * pi * t); };
    return g;
}

SurfaceMesh hemisphere_mesh(double a, int n_theta, int n_phi, double grading, const Params& p)
{
    p.validate();
    if (!(a > 0.0)) {
        throw ParameterError("hemisphere radius must be positive");
    }
    check_grid(n_theta, n_phi, grading);
    const Rule rule = gauss_legendre(n_theta, 0.0, 1.0);
    const double dphi = 2.0 * pi / n_phi;

    SurfaceMesh mesh;
    mesh.n_param = n_theta;
    mesh.n_azimuth = n_phi;
    mesh.rim_radius = a;
    mesh.alpha = p.alpha;
    mesh.nodes.reserve(n_theta * n_phi);
    for (int i = 0; i < n_theta; ++i) {
        // ψ measured from the plane keeps x₁ = a sin ψ accurate near the rim
        const double v = 1.0 - rule.nodes[i];
        const double psi = 0.5 * pi * std::pow(v, grading);
        const double dpsi = 0.5 * pi * grading * std::pow(v, grading - 1.0) * rule.weights[i];
        const double x1 = a * std::sin(psi);
        const double rho = a * std::cos(psi);
        const double w = a * a * std::cos(psi) * dpsi * dphi;
        const double h = std::max(a * dpsi, rho * dphi);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = j * dphi;
            const Vec3 s{x1, rho * std::cos(phi), rho * std::sin(phi)};
            mesh.nodes.push_back(s);
            mesh.normals.push_back({s[0] / a, s[1] / a, s[2] / a});
            mesh.weights.push_back(w);
            mesh.x1w.push_back(std::pow(x1, 2.0 * p.alpha));
            mesh.spacing.push_back(h);
            mesh.polar.push_back(0.5 * pi - psi);
            mesh.azimuth.push_back(phi);
        }
    }
    return mesh;
}

SurfaceMesh revolve_mesh(const GeneratorCurve& g, int n_t, int n_phi, double grading, const Params& p)
{
    p.validate();
    check_grid(n_t, n_phi, grading);
    if (!g.x1 || !g.rho || !g.dx1 || !g.drho) {
        throw ParameterError("generator curve is incomplete");
    }
    const double scale = std::max(std::abs(g.x1(0.0)), std::abs(g.rho(1.0)));
    if (!(scale > 0.0) || std::abs(g.rho(0.0)) > 1e-12 * scale || std::abs(g.x1(1.0)) > 1e-12 * scale) {
        throw ParameterError("generator must start on the axis (rho(0) = 0) and end on x1 = 0 (x1(1) = 0)");
    }
    if (!(g.rho(1.0) > 0.0) || g.dx1(1.0) == 0.0) {
        throw ParameterError("generator must meet x1 = 0 at a positive radius and at a right angle");
    }

    const Rule rule = gauss_legendre(n_t, 0.0, 1.0);
    const double dphi = 2.0 * pi / n_phi;
    SurfaceMesh mesh;
    mesh.n_param = n_t;
    mesh.n_azimuth = n_phi;
    mesh.rim_radius = g.rho(1.0);
    mesh.alpha = p.alpha;
    for (int i = 0; i < n_t; ++i) {
        const double v = 1.0 - rule.nodes[i];
        const double t = 1.0 - std::pow(v, grading);
        const double dt = grading * std::pow(v, grading - 1.0) * rule.weights[i];
        const double x1 = g.x1(t), rho = g.rho(t), dx1 = g.dx1(t), drho = g.drho(t);
        if (!(x1 > 0.0)) {
            throw ParameterError("generator must satisfy x1(t) > 0 for t < 1");
        }
        const double speed = std::hypot(dx1, drho);
        const double w = rho * speed * dt * dphi;
        const double h = std::max(speed * dt, rho * dphi);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = j * dphi;
            const double c = std::cos(phi), s = std::sin(phi);
            mesh.nodes.push_back({x1, rho * c, rho * s});
            // ∂_t P × ∂_φ P ∝ (ρ', -x₁' cos φ, -x₁' sin φ)
            mesh.normals.push_back({drho / speed, -dx1 * c / speed, -dx1 * s / speed});
            mesh.weights.push_back(w);
            mesh.x1w.push_back(std::pow(x1, 2.0 * p.alpha));
            mesh.spacing.push_back(h);
            mesh.polar.push_back(std::atan2(rho, x1));
            mesh.azimuth.push_back(phi);
        }
    }

    const Vec3 ref{0.5 * g.x1(0.0), 0.0, 0.0};
    double orientation = 0.0;
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        const Vec3& s = mesh.nodes[k];
        const Vec3& n = mesh.normals[k];
        orientation += n[0] * (s[0] - ref[0]) + n[1] * (s[1] - ref[1]) + n[2] * (s[2] - ref[2]);
    }
    if (orientation < 0.0) {
        for (Vec3& n : mesh.normals) {
            n = {-n[0], -n[1], -n[2]};
        }
    }
    return mesh;
}

BaseDisk base_disk(double radius, int n_r, int n_phi)
{
    if (!(radius > 0.0)) {
        throw ParameterError("base radius must be positive");
    }
    if (n_r < 1 || n_phi < 4) {
        throw ParameterError("base disk needs n_r >= 1 and n_phi >= 4");
    }
    const Rule rule = gauss_legendre(n_r, 0.0, radius);
    const double dphi = 2.0 * pi / n_phi;
    BaseDisk base;
    base.radius = radius;
    for (int i = 0; i < n_r; ++i) {
        const double r = rule.nodes[i];
        for (int j = 0; j < n_phi; ++j) {
            const double phi = (j + 0.5) * dphi;
            base.nodes.push_back({0.0, r * std::cos(phi), r * std::sin(phi)});
            base.weights.push_back(r * rule.weights[i] * dphi);
            base.r.push_back(r);
            base.azimuth.push_back(phi);
        }
    }
    return base;
}

double weighted_flux(const SurfaceMesh& mesh, const BaseDisk& base, const VectorField& grad_u,
                     const Params& p, const std::optional<std::function<double(const Vec3&)>>& nu)
{
    p.validate();
    double flux = 0.0;
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        const Vec3 g = grad_u(mesh.nodes[k]);
        const Vec3& n = mesh.normals[k];
        flux += mesh.x1w[k] * (g[0] * n[0] + g[1] * n[1] + g[2] * n[2]) * mesh.weights[k];
    }
    if (nu && *nu) {
        for (std::size_t b = 0; b < base.size(); ++b) {
            flux -= (*nu)(base.nodes[b]) * base.weights[b];
        }
    }
    return flux;
}

double weighted_area(const SurfaceMesh& mesh)
{
    double s = 0.0;
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        s += mesh.x1w[k] * mesh.weights[k];
    }
    return s;
}

double half_ellipsoid_area(double c, double a)
{
    if (!(a > 0.0 && c > 0.0)) {
        throw ParameterError("semi-axes must be positive");
    }
    if (c == a) {
        return 2.0 * pi * a * a;
    }
    if (c < a) {
        const double e = std::sqrt(1.0 - c * c / (a * a));
        return pi * a * a * (1.0 + (1.0 - e * e) / e * std::atanh(e));
    }
    const double e = std::sqrt(1.0 - a * a / (c * c));
    return pi * a * a * (1.0 + c / (a * e) * std::asin(e));
}

void write_mesh_csv(const SurfaceMesh& mesh, std::ostream& out)
{
    out << "x1,x2,x3,n1,n2,n3,w,x1w\n" << std::setprecision(17);
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        const Vec3& s = mesh.nodes[k];
        const Vec3& n = mesh.normals[k];
        out << s[0] << ',' << s[1] << ',' << s[2] << ',' << n[0] << ',' << n[1] << ',' << n[2] << ','
            << mesh.weights[k] << ',' << mesh.x1w[k] << '\n';
    }
}

void write_mesh_csv(const SurfaceMesh& mesh, const std::string& path)
{
    std::ofstream out(path);
    if (!out) {
        throw ParameterError("cannot open " + path + " for writing");
    }
    write_mesh_csv(mesh, out);
}

SurfaceMesh read_mesh_csv(std::istream& in)
{
    SurfaceMesh mesh;
    std::string line;
    if (!std::getline(in, line)) {
        throw ParameterError("mesh file is empty");
    }
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        double v[8];
        int n = 0;
        while (n < 8 && std::getline(row, cell, ',')) {
            v[n++] = std::stod(cell);
        }
        if (n != 8) {
            throw ParameterError("mesh row needs 8 columns: " + line);
        }
        mesh.nodes.push_back({v[0], v[1], v[2]});
        mesh.normals.push_back({v[3], v[4], v[5]});
        mesh.weights.push_back(v[6]);
        mesh.x1w.push_back(v[7]);
        mesh.spacing.push_back(std::sqrt(v[6]));
    }
    return mesh;
}

} // namespace gasp
