#include "mwc/density.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mwc/constants.hpp"
#include "mwc/error.hpp"
#include "mwc/format.hpp"

namespace mwc {

namespace {

double antiderivative(const std::array<double, 4>& c, double x) {
    return x * (c[0] + x * (c[1] / 2.0 + x * (c[2] / 3.0 + x * c[3] / 4.0)));
}

// Root of the piece's partial integral from lo equal to rem, for degree <= 1.
double invert_linear(const Piece& p, double rem) {
    const double qa = p.c[1] / 2.0;
    const double qb = p.c[0];
    const double qc = -(p.c[0] * p.lo + qa * p.lo * p.lo + rem);
    if (std::abs(qa) < 1e-300) return -qc / qb;
    const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
    const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
    const double r1 = q / qa;
    const double r2 = q != 0.0 ? qc / q : r1;
    auto dist = [&](double x) { return x < p.lo ? p.lo - x : (x > p.hi ? x - p.hi : 0.0); };
    return dist(r1) <= dist(r2) ? r1 : r2;
}

}  // namespace

double Piece::integral(double x0, double x1) const noexcept {
    return antiderivative(c, x1) - antiderivative(c, x0);
}

int Piece::degree() const noexcept {
    for (int d = 3; d > 0; --d)
        if (c[d] != 0.0) return d;
    return 0;
}

PiecewiseDensity::PiecewiseDensity(std::vector<Piece> pieces, double nominal_mass, double mass_tol)
    : pieces_(std::move(pieces)), nominal_mass_(nominal_mass), mass_tol_(mass_tol) {
    if (pieces_.empty()) fail("domain_error", "density has no pieces");
    if (pieces_.front().lo != 0.0 || pieces_.back().hi != 1.0)
        fail("domain_error", "density pieces must span [0,1]");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const Piece& p = pieces_[i];
        if (!(p.lo < p.hi)) fail("domain_error", "density breakpoints must increase");
        if (i > 0 && pieces_[i - 1].hi != p.lo) fail("domain_error", "density pieces leave a gap or overlap");
        for (int s = 0; s < 1024; ++s) {
            const double u = p.lo + (p.hi - p.lo) * s / 1023.0;
            if (p.eval(u) < -1e-9) fail("domain_error", "density is negative at u=" + format_double(u));
        }
    }
    cumulative_.reserve(pieces_.size());
    double acc = 0.0;
    for (const Piece& p : pieces_) {
        acc += p.integral(p.lo, p.hi);
        cumulative_.push_back(acc);
    }
    if (std::abs(acc - nominal_mass_) > mass_tol_)
        fail("domain_error", "density mass " + format_double(acc) + " differs from nominal " + format_double(nominal_mass_));
}

std::size_t PiecewiseDensity::locate(double u) const noexcept {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), u, [](double x, const Piece& p) { return x < p.lo; });
    return static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - pieces_.begin() - 1));
}

double PiecewiseDensity::evaluate(double u) const noexcept {
    if (pieces_.empty() || u < 0.0 || u > 1.0) return 0.0;
    return pieces_[locate(u)].eval(u);
}

double PiecewiseDensity::integrate(double lo, double hi) const noexcept {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, 1.0);
    if (!(lo < hi)) return 0.0;
    double s = 0.0;
    for (std::size_t i = locate(lo); i < pieces_.size() && pieces_[i].lo < hi; ++i) {
        const Piece& p = pieces_[i];
        s += p.integral(std::max(lo, p.lo), std::min(hi, p.hi));
    }
    return s;
}

double PiecewiseDensity::sample(double uniform01) const {
    if (!(uniform01 >= 0.0 && uniform01 < 1.0)) fail("domain_error", "sample() needs a uniform in [0,1)");
    const double target = uniform01 * total();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    if (it == cumulative_.end()) --it;
    const auto i = static_cast<std::size_t>(it - cumulative_.begin());
    const Piece& p = pieces_[i];
    const double rem = target - (i == 0 ? 0.0 : cumulative_[i - 1]);
    double x;
    if (p.degree() <= 1) {
        x = invert_linear(p, rem);
    } else {
        double lo = p.lo, hi = p.hi;
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            if (p.integral(p.lo, mid) < rem) lo = mid; else hi = mid;
        }
        x = 0.5 * (lo + hi);
    }
    return std::clamp(x, p.lo, p.hi);
}

std::vector<double> PiecewiseDensity::breakpoints() const {
    std::vector<double> out;
    for (const Piece& p : pieces_) out.push_back(p.lo);
    if (!pieces_.empty()) out.push_back(pieces_.back().hi);
    return out;
}

PiecewiseDensity phi_1309() {
    using namespace consts::a1309;
    return PiecewiseDensity({{0.0, b, {0.0, a, 0.0, 0.0}}, {b, 1.0, {a * b / 2.0, a / 2.0, 0.0, 0.0}}});
}

PiecewiseDensity phi_1302() {
    using namespace consts::a1302;
    const double a = a_t / p2, c = c_t / p2, d = d_t / p2;
    return PiecewiseDensity({{0.0, b, {0.0, a, 0.0, 0.0}}, {b, 1.0, {d, c, 0.0, 0.0}}});
}

PiecewiseDensity phi_tilde_1296() {
    const double bb = 6.0 / 11.0;
    return PiecewiseDensity(
        {
            {0.0, 0.23, {0.0, 0.14957, -0.0478, 0.45}},
            {0.23, bb, {-0.00484, 0.1995, -0.1067, 0.158}},
            {bb, 0.61, {0.47639, 0.21685, -0.02388, -0.021}},
            {0.61, 0.77, {0.47368, 0.2816, -0.18365, 0.079}},
            {0.77, 1.0, {0.32195, 0.75, -0.6476, 0.2239}},
        },
        consts::a1296::p2, consts::a1296::phi_tilde_tol);
}

PiecewiseDensity uniform_density(double b) {
    if (!(b > 0.0 && b <= 1.0)) fail("domain_error", "uniform_density needs 0 < b <= 1");
    if (b == 1.0) return PiecewiseDensity({{0.0, 1.0, {1.0, 0.0, 0.0, 0.0}}});
    return PiecewiseDensity({{0.0, b, {1.0 / b, 0.0, 0.0, 0.0}}, {b, 1.0, {0.0, 0.0, 0.0, 0.0}}});
}

void write_density(std::ostream& out, const PiecewiseDensity& d) {
    for (const Piece& p : d.pieces()) {
        out << format_double(p.lo) << ' ' << format_double(p.hi);
        for (double c : p.c) out << ' ' << format_double(c);
        out << '\n';
    }
}

PiecewiseDensity read_density(std::istream& in, double nominal_mass, double mass_tol) {
    std::vector<Piece> pieces;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() != 6) fail("parse_error", "line " + std::to_string(lineno) + ": expected 'lo hi c0 c1 c2 c3'");
        try {
            Piece p;
            p.lo = parse_double(tok[0]);
            p.hi = parse_double(tok[1]);
            for (int i = 0; i < 4; ++i) p.c[i] = parse_double(tok[i + 2]);
            pieces.push_back(p);
        } catch (const Error& e) {
            fail("parse_error", "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (nominal_mass <= 0.0) {
        double m = 0.0;
        for (const Piece& p : pieces) m += p.integral(p.lo, p.hi);
        return PiecewiseDensity(std::move(pieces), m, 1e-9);
    }
    return PiecewiseDensity(std::move(pieces), nominal_mass, mass_tol);
}

}  // namespace mwc
