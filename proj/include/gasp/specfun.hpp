#pragma once

#include <memory>

// Gamma, Pochhammer and Gauss hypergeometric functions on the real
// argument ranges needed by the fundamental solutions.

namespace gasp {

/// Termination control for hypergeometric series.
struct SeriesControl {
    double tol = 1e-14;     ///< relative size of the last retained term
    int max_terms = 10000;  ///< hard cap; exceeding it raises ConvergenceError

    void validate() const;
};

/// Γ(x). Throws PoleError at 0, -1, -2, ...
double gamma(double x);

/// 1/Γ(x), which is zero at the poles of Γ.
double rgamma(double x);

/// ψ(x) = Γ'(x)/Γ(x). Throws PoleError at the poles of Γ.
double digamma(double x);

/// (κ)_n = κ(κ+1)…(κ+n-1), with (κ)_0 = 1.
double pochhammer(double kappa, unsigned n);

/// True when x is a non-positive integer (within 1e-12).
bool is_nonpositive_integer(double x);

/// F(a,b;c;1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b)); requires c-a-b > 0.
double gauss_summation(double a, double b, double c);

/// Plain power series Σ (a)_n(b)_n / (n!(c)_n) zⁿ for |z| < 1.
double gauss_2f1_series(double a, double b, double c, double z,
                        const SeriesControl& ctl = {});

/// F(a,b;c;z) for z <= 0, z in [0,1), or z = 1 with c-a-b > 0.
/// Negative arguments go through the Pfaff transformation
/// F(a,b;c;z) = (1-z)^{-b} F(c-a,b;c;z/(z-1)).
double gauss_2f1(double a, double b, double c, double z,
                 const SeriesControl& ctl = {});

/// F(a,b;c;·) with fixed parameters. Connection coefficients are computed once
/// so that repeated evaluation (kernel assembly) only pays for the series.
class Gauss2F1 {
public:
    Gauss2F1(double a, double b, double c, SeriesControl ctl = {});

    /// Same domain and errors as gauss_2f1.
    [[nodiscard]] double operator()(double z) const;

    /// F(w) for w in [0,1], with 1-w supplied separately so that arguments
    /// close to 1 keep full relative precision in 1-w.
    [[nodiscard]] double unit(double w, double one_minus_w) const;

    /// F(z) for z <= 0 with 1-z supplied separately (Pfaff mapped onto [0,1)).
    [[nodiscard]] double negative(double z, double one_minus_z) const;

    [[nodiscard]] double a() const noexcept { return direct_.a; }
    [[nodiscard]] double b() const noexcept { return direct_.b; }
    [[nodiscard]] double c() const noexcept { return direct_.c; }

private:
    // Evaluator for w in [0,1]: power series for w <= 1/2, linear
    // transformation to 1-w above that.
    struct Unit {
        Unit() = default;
        Unit(double a, double b, double c, const SeriesControl& ctl);

        double operator()(double w, double omw) const;

        double a = 0, b = 0, c = 1;
        double s = 0;              // c - a - b
        SeriesControl ctl;
        bool polynomial = false;   // a or b a non-positive integer
        bool log_case = false;     // s a non-negative integer
        int n = 0;                 // integer value of s in the log case
        double coef_regular = 0;
        double coef_singular = 0;
        double psi_start = 0;      // -ψ(1) - ψ(n+1) + ψ(a+n) + ψ(b+n)
        // s a negative integer: F = (1-w)^s F(c-a, c-b; c; w), evaluated by this
        std::shared_ptr<const Unit> euler;
    };

    Unit direct_;
    Unit pfaff_;  // parameters (c-a, b, c)
};

} // namespace gasp
