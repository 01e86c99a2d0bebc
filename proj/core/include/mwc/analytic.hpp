#pragma once

#include <string>

#include "mwc/density.hpp"

namespace mwc {

// Position of the remaining coordinates relative to u1 <= u2.
enum class Regime { AllOthersBelow, SomeOtherBetween, SomeOtherAbove };

// Independent-thresholds cases by where u1, u2 and the rest sit relative to b.
enum class KargerCase { BothLowOthersLow = 1, SplitOthersLow = 2, BothLowOtherHigh = 3, SplitOtherHigh = 4, BothHigh = 5 };

enum class Case1296 { I = 1, II = 2, III = 3, IV = 4, V = 5 };

std::string to_string(Regime r);
std::string to_string(Case1296 c);

inline constexpr double kSeriesSwitch = 1e-4;

// (1 - e^-a)/a and (1 - (1+a)e^-a)/a^2, stable for small a.
double karger_f1(double a);
double karger_f2(double a);
// (a + e^-a - 1)/a^2 = f1 - f2.
double karger_f12(double a);

double density_expclocks(double u1, double u2);
double density_single(double u1, double u2, const PiecewiseDensity& phi);
// Exact density at worst_case_location(u1, u2, k) for the k-1 sweep with remainder
// to the last terminal; needs u1 < u2 and the common other coordinate off {u1, u2}.
double density_single_worst_case(double u1, double u2, int k, const PiecewiseDensity& phi);
double density_single_refined(double u1, double u2, const PiecewiseDensity& phi, Regime regime);
double density_descending(double u1, double u2, const PiecewiseDensity& psi);
double density_descending_refined(double u1, double u2, double ul, const PiecewiseDensity& psi, Regime regime);

bool karger_case_applicable(double u1, double u2, double b, KargerCase c);
double density_independent(double u1, double u2, double b, KargerCase c);

struct Mixture1296 {
    double p1 = 0.0;
    double p3 = 0.0;
    double p4 = 0.0;
    double b = 0.5;
    PiecewiseDensity phi_tilde;  // p2 * phi

    static Mixture1296 published();
};

bool case_applicable_1296(double u1, double u2, double b, Case1296 c);

// Case density as coefficients of p1, phi~ at the smaller and larger coordinate, p3, p4.
struct CaseTerms1296 {
    double p1 = 0.0;
    double phi_u1 = 0.0;
    double phi_u2 = 0.0;
    double p3 = 0.0;
    double p4 = 0.0;
};
CaseTerms1296 case_terms_1296(double u1, double u2, double b, Case1296 c);
double density_mixture_1296(double u1, double u2, Case1296 c, const Mixture1296& m);
double density_mixture_1296(double u1, double u2, Case1296 c);
// Max over applicable cases; writes the maximizing case when requested.
double density_mixture_1296_max(double u1, double u2, const Mixture1296& m, Case1296* which = nullptr);

double density_mixture_1309(double u1, double u2);

// Parameters of the three-scheme mixture in the scaled form p2*a, p2*c, p2*d.
struct Mixture1302 {
    double p1 = 0.0;
    double p3 = 0.0;
    double a_t = 0.0;
    double c_t = 0.0;
    double d_t = 0.0;
    double b = 0.5;

    static Mixture1302 published();
};

// Cases 1..3 on the closures u2 <= b, u1 <= b <= u2, b <= u1.
bool case_applicable_1302(double u1, double u2, double b, int c);
struct CaseTerms1302 {
    double p1 = 0.0;
    double p3 = 0.0;
    double a_t = 0.0;
    double c_t = 0.0;
    double d_t = 0.0;
};
CaseTerms1302 case_terms_1302(double u1, double u2, double b, int c);
double density_mixture_1302(double u1, double u2, int c, const Mixture1302& m);
double density_mixture_1302(double u1, double u2, int c);

}  // namespace mwc
