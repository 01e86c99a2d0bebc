#pragma once

#include <array>
#include <iosfwd>
#include <vector>

namespace mwc {

// Cubic (or lower) polynomial on [lo, hi], coefficients in ascending degree.
struct Piece {
    double lo = 0.0;
    double hi = 1.0;
    std::array<double, 4> c{};

    double eval(double u) const noexcept { return c[0] + u * (c[1] + u * (c[2] + u * c[3])); }
    // Integral of the polynomial over [x0, x1].
    double integral(double x0, double x1) const noexcept;
    int degree() const noexcept;
};

// Piecewise-polynomial density on [0, 1]. Pieces are half-open [lo, hi)
// except the last, which is closed. The total mass need not be 1: scaled
// families (p2 * phi) carry their nominal mass and a tolerance.
class PiecewiseDensity {
public:
    PiecewiseDensity() = default;
    explicit PiecewiseDensity(std::vector<Piece> pieces, double nominal_mass = 1.0, double mass_tol = 1e-12);

    const std::vector<Piece>& pieces() const noexcept { return pieces_; }
    double nominal_mass() const noexcept { return nominal_mass_; }
    double mass_tol() const noexcept { return mass_tol_; }

    double evaluate(double u) const noexcept;
    double integrate(double lo, double hi) const noexcept;
    double cdf(double u) const noexcept { return integrate(0.0, u); }
    double total() const noexcept { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

    // Inverse CDF of the density renormalized by its own total.
    double sample(double uniform01) const;

    std::vector<double> breakpoints() const;

private:
    std::size_t locate(double u) const noexcept;

    std::vector<Piece> pieces_;
    std::vector<double> cumulative_;  // mass of pieces [0, i]
    double nominal_mass_ = 1.0;
    double mass_tol_ = 1e-12;
};

PiecewiseDensity phi_1309();
PiecewiseDensity phi_1302();
// p2 * phi for the 1.2965 scheme; integrates to about 0.305782.
PiecewiseDensity phi_tilde_1296();
PiecewiseDensity uniform_density(double b);

// Text format: one "lo hi c0 c1 c2 c3" line per piece; '#' starts a comment.
void write_density(std::ostream& out, const PiecewiseDensity& d);
PiecewiseDensity read_density(std::istream& in, double nominal_mass = 0.0, double mass_tol = 0.0);

}  // namespace mwc
