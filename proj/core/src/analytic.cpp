#include "mwc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "mwc/constants.hpp"
#include "mwc/error.hpp"

namespace mwc {

namespace {

void check_domain(double u1, double u2) {
    if (!(u1 >= 0.0 && u2 >= 0.0) || u1 + u2 > 1.0 + 1e-12)
        fail("domain_error", "need u1, u2 >= 0 and u1 + u2 <= 1");
}

void check_sorted(double u1, double u2) {
    if (!(u1 >= 0.0 && u1 <= u2 && u2 <= 1.0)) fail("domain_error", "need 0 <= u1 <= u2 <= 1");
}

double slack_ratio(double u1, double u2, double b) { return std::max(0.0, 1.0 - u1 - u2) / b; }

}  // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::AllOthersBelow: return "AllOthersBelow";
        case Regime::SomeOtherBetween: return "SomeOtherBetween";
        case Regime::SomeOtherAbove: return "SomeOtherAbove";
    }
    return "?";
}

std::string to_string(Case1296 c) {
    static const char* names[] = {"I", "II", "III", "IV", "V"};
    return names[static_cast<int>(c) - 1];
}

double karger_f1(double a) {
    if (a < kSeriesSwitch) return 1.0 - a / 2.0 + a * a / 6.0 - a * a * a / 24.0;
    return -std::expm1(-a) / a;
}

double karger_f2(double a) {
    if (a < kSeriesSwitch) return 0.5 - a / 3.0 + a * a / 8.0 - a * a * a / 30.0;
    return (-std::expm1(-a) - a * std::exp(-a)) / (a * a);
}

double karger_f12(double a) {
    if (a < kSeriesSwitch) return 0.5 - a / 6.0 + a * a / 24.0 - a * a * a / 120.0;
    return (a + std::expm1(-a)) / (a * a);
}

double density_expclocks(double u1, double u2) {
    check_domain(u1, u2);
    return 2.0 - u1 - u2;
}

double density_single(double u1, double u2, const PiecewiseDensity& phi) {
    check_sorted(u1, u2);
    return 0.5 * phi.evaluate(u1) + phi.evaluate(u2);
}

double density_single_worst_case(double u1, double u2, int k, const PiecewiseDensity& phi) {
    check_domain(u1, u2);
    if (k < 3) fail("domain_error", "need k >= 3");
    if (!(u1 < u2)) fail("domain_error", "need u1 < u2");
    const double r = std::max(0.0, 1.0 - u1 - u2) / (k - 2);
    if (r == u1 || r == u2) fail("domain_error", "other coordinates tie with u1 or u2");
    const int m1 = r > u1 ? k - 2 : 0;
    const int m2 = r > u2 ? k - 2 : 0;
    const double c2 = m2 > 0 ? 1.0 / (1 + m2) : 1.0 - 1.0 / k;
    return phi.evaluate(u1) / (2 + m1) + c2 * phi.evaluate(u2);
}

double density_single_refined(double u1, double u2, const PiecewiseDensity& phi, Regime regime) {
    check_sorted(u1, u2);
    switch (regime) {
        case Regime::AllOthersBelow: return 0.5 * phi.evaluate(u1) + phi.evaluate(u2);
        case Regime::SomeOtherBetween: return phi.evaluate(u1) / 3.0 + phi.evaluate(u2);
        case Regime::SomeOtherAbove: return phi.evaluate(u1) / 3.0 + 0.5 * phi.evaluate(u2);
    }
    fail("domain_error", "invalid regime");
}

double density_descending(double u1, double u2, const PiecewiseDensity& psi) {
    check_sorted(u1, u2);
    return (1.0 - psi.integrate(u1, u2)) * psi.evaluate(u1) + psi.evaluate(u2);
}

double density_descending_refined(double u1, double u2, double ul, const PiecewiseDensity& psi, Regime regime) {
    check_sorted(u1, u2);
    const double keep12 = 1.0 - psi.integrate(u1, u2);
    switch (regime) {
        case Regime::AllOthersBelow:
            return keep12 * psi.evaluate(u1) + psi.evaluate(u2);
        case Regime::SomeOtherBetween:
            if (!(u1 < ul && ul <= u2)) fail("domain_error", "SomeOtherBetween needs u1 < ul <= u2");
            return keep12 * (1.0 - psi.integrate(u1, ul)) * psi.evaluate(u1) + psi.evaluate(u2);
        case Regime::SomeOtherAbove:
            if (!(u2 < ul)) fail("domain_error", "SomeOtherAbove needs u2 < ul");
            return keep12 * (1.0 - psi.integrate(u1, ul)) * psi.evaluate(u1) +
                   (1.0 - psi.integrate(u2, ul)) * psi.evaluate(u2);
    }
    fail("domain_error", "invalid regime");
}

bool karger_case_applicable(double u1, double u2, double b, KargerCase c) {
    if (u1 > u2) std::swap(u1, u2);
    const bool rest_high = 1.0 - u1 - u2 > b;
    switch (c) {
        case KargerCase::BothLowOthersLow: return u2 <= b;
        case KargerCase::SplitOthersLow: return u1 <= b && b < u2;
        case KargerCase::BothLowOtherHigh: return u2 <= b && rest_high;
        case KargerCase::SplitOtherHigh: return u1 <= b && b < u2 && rest_high;
        case KargerCase::BothHigh: return b < u1;
    }
    return false;
}

double density_independent(double u1, double u2, double b, KargerCase c) {
    check_domain(u1, u2);
    if (!(b > 0.0 && b <= 1.0)) fail("domain_error", "need 0 < b <= 1");
    if (u1 > u2) std::swap(u1, u2);
    if (!karger_case_applicable(u1, u2, b, c)) fail("domain_error", "independent-thresholds case inconsistent with (u1,u2,b)");
    const double a = slack_ratio(u1, u2, b);
    switch (c) {
        case KargerCase::BothLowOthersLow: return 2.0 * karger_f1(a) / b - (u1 + u2) * karger_f2(a) / (b * b);
        case KargerCase::SplitOthersLow: return karger_f12(a) / b;
        case KargerCase::BothLowOtherHigh: return 1.0 / b - (u1 + u2) / (6.0 * b * b);
        case KargerCase::SplitOtherHigh: return 1.0 / (3.0 * b);
        case KargerCase::BothHigh: return 0.0;
    }
    return 0.0;
}

Mixture1296 Mixture1296::published() {
    namespace c = consts::a1296;
    return {c::p1, c::p3, c::p4, c::b, phi_tilde_1296()};
}

bool case_applicable_1296(double u1, double u2, double b, Case1296 c) {
    if (u1 > u2) std::swap(u1, u2);
    const bool rest_high = 1.0 - u1 - u2 > b;
    switch (c) {
        case Case1296::I: return u2 <= b;
        case Case1296::II: return u2 <= b && rest_high;
        case Case1296::III: return u1 <= b && b < u2;
        case Case1296::IV: return u1 <= b && b < u2 && rest_high && b < 0.5;
        case Case1296::V: return b < u1 && b < 0.5;
    }
    return false;
}

CaseTerms1296 case_terms_1296(double u1, double u2, double b, Case1296 c) {
    check_domain(u1, u2);
    if (u1 > u2) std::swap(u1, u2);
    if (!case_applicable_1296(u1, u2, b, c)) fail("domain_error", "case " + to_string(c) + " not applicable");
    const double a = slack_ratio(u1, u2, b);
    CaseTerms1296 t;
    t.p1 = 2.0 - u1 - u2;
    switch (c) {
        case Case1296::I:
            t.phi_u1 = 0.5;
            t.phi_u2 = 1.0;
            t.p3 = (2.0 - (u2 - u1) / b) / b;
            t.p4 = 2.0 * karger_f1(a) / b - (u1 + u2) * karger_f2(a) / (b * b);
            break;
        case Case1296::II:
            t.phi_u1 = 1.0 / 3.0;
            t.phi_u2 = 0.5;
            t.p3 = ((1.0 - (u2 - u1) / b) * u1 + u2) / (b * b);
            t.p4 = (1.0 - (u1 + u2) / (6.0 * b)) / b;
            break;
        case Case1296::III:
            t.phi_u1 = 0.5;
            t.phi_u2 = 1.0;
            t.p3 = u1 / (b * b);
            t.p4 = karger_f12(a) / b;
            break;
        case Case1296::IV:
            t.phi_u1 = 1.0 / 3.0;
            t.phi_u2 = 1.0;
            t.p3 = u1 * u1 / (b * b * b);
            t.p4 = 1.0 / (3.0 * b);
            break;
        case Case1296::V:
            t.phi_u1 = 0.5;
            t.phi_u2 = 1.0;
            break;
    }
    return t;
}

double density_mixture_1296(double u1, double u2, Case1296 c, const Mixture1296& m) {
    const CaseTerms1296 t = case_terms_1296(u1, u2, m.b, c);
    if (u1 > u2) std::swap(u1, u2);
    return m.p1 * t.p1 + t.phi_u1 * m.phi_tilde.evaluate(u1) + t.phi_u2 * m.phi_tilde.evaluate(u2) +
           m.p3 * t.p3 + m.p4 * t.p4;
}

double density_mixture_1296(double u1, double u2, Case1296 c) {
    static const Mixture1296 m = Mixture1296::published();
    return density_mixture_1296(u1, u2, c, m);
}

double density_mixture_1296_max(double u1, double u2, const Mixture1296& m, Case1296* which) {
    double best = -1.0;
    for (Case1296 c : {Case1296::I, Case1296::II, Case1296::III, Case1296::IV, Case1296::V}) {
        if (!case_applicable_1296(u1, u2, m.b, c)) continue;
        const double v = density_mixture_1296(u1, u2, c, m);
        if (v > best) {
            best = v;
            if (which) *which = c;
        }
    }
    return best;
}

double density_mixture_1309(double u1, double u2) {
    check_domain(u1, u2);
    if (u1 > u2) std::swap(u1, u2);
    static const PiecewiseDensity phi = phi_1309();
    using consts::a1309::p;
    return p * (2.0 - u1 - u2) + (1.0 - p) * (0.5 * phi.evaluate(u1) + phi.evaluate(u2));
}

Mixture1302 Mixture1302::published() {
    namespace c = consts::a1302;
    return {c::p1, c::p3, c::a_t, c::c_t, c::d_t, c::b};
}

bool case_applicable_1302(double u1, double u2, double b, int c) {
    if (u1 > u2) std::swap(u1, u2);
    switch (c) {
        case 1: return u2 <= b;
        case 2: return u1 <= b && b <= u2;
        case 3: return b <= u1;
        default: return false;
    }
}

CaseTerms1302 case_terms_1302(double u1, double u2, double b, int c) {
    check_domain(u1, u2);
    if (u1 > u2) std::swap(u1, u2);
    if (!case_applicable_1302(u1, u2, b, c)) fail("domain_error", "case " + std::to_string(c) + " not applicable");
    CaseTerms1302 t;
    t.p1 = 2.0 - u1 - u2;
    switch (c) {
        case 1:
            t.a_t = 0.5 * u1 + u2;
            t.p3 = (2.0 - (u2 - u1) / b) / b;
            break;
        case 2:
            t.a_t = 0.5 * u1;
            t.c_t = u2;
            t.d_t = 1.0;
            t.p3 = u1 / (b * b);
            break;
        default:
            t.c_t = 0.5 * u1 + u2;
            t.d_t = 1.5;
            break;
    }
    return t;
}

double density_mixture_1302(double u1, double u2, int c, const Mixture1302& m) {
    const CaseTerms1302 t = case_terms_1302(u1, u2, m.b, c);
    return m.p1 * t.p1 + m.p3 * t.p3 + m.a_t * t.a_t + m.c_t * t.c_t + m.d_t * t.d_t;
}

double density_mixture_1302(double u1, double u2, int c) {
    return density_mixture_1302(u1, u2, c, Mixture1302::published());
}

}  // namespace mwc
