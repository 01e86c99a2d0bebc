#include "mwc/certify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>

#include "mwc/analytic.hpp"
#include "mwc/constants.hpp"
#include "mwc/error.hpp"
#include "mwc/format.hpp"
#include "mwc/parallel.hpp"
#include "mwc/rng.hpp"

namespace mwc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Best {
    double value = -std::numeric_limits<double>::infinity();
    double u1 = 0.0;
    double u2 = 0.0;
    std::string label;
    std::uint64_t cells = 0;

    // Strictly greater wins; equal values keep the lexicographically smaller point.
    void merge(const Best& o) {
        cells += o.cells;
        if (o.value > value || (o.value == value && std::pair(o.u1, o.u2) < std::pair(u1, u2))) {
            value = o.value;
            u1 = o.u1;
            u2 = o.u2;
            label = o.label;
        }
    }
};

void check_delta(int delta_log2) {
    if (delta_log2 < 6 || delta_log2 > 16)
        fail("domain_error", "unsupported delta 2^-" + std::to_string(delta_log2) + " (need 6 <= P <= 16)");
}

Best scan_generic(Algorithm algorithm, int delta_log2, int threads) {
    const std::vector<double> axis = certify_axis(algorithm, delta_log2);
    const std::size_t m = axis.size();
    constexpr std::size_t kBlock = 32;
    const std::size_t blocks = (m + kBlock - 1) / kBlock;
    std::vector<Best> partial(blocks);
    parallel_for(blocks, threads, [&](std::size_t blk) {
        Best local;
        std::string label;
        for (std::size_t i = blk * kBlock; i < std::min(m, (blk + 1) * kBlock); ++i) {
            for (std::size_t j = i; j < m && axis[i] + axis[j] <= 1.0 + 1e-12; ++j) {
                const double v = certify_point(algorithm, axis[i], axis[j], &label);
                ++local.cells;
                if (v > local.value) {
                    local.value = v;
                    local.u1 = axis[i];
                    local.u2 = axis[j];
                    local.label = label;
                }
            }
        }
        partial[blk] = std::move(local);
    });
    Best best;
    for (const auto& p : partial) best.merge(p);
    return best;
}

Best scan_1296(int delta_log2, int threads) {
    const Fast1296 t(delta_log2);
    const std::int64_t n = t.n;
    const double b = t.b;
    const double nd = static_cast<double>(n);
    const double p3 = consts::a1296::p3;
    std::int64_t jb = 0;
    while (jb + 1 <= n && static_cast<double>(jb + 1) / nd <= b) ++jb;
    std::vector<char> rest_high(static_cast<std::size_t>(n + 1));
    for (std::int64_t s = 0; s <= n; ++s) rest_high[s] = 1.0 - static_cast<double>(s) / nd > b;

    const double inv_b = 1.0 / b, inv_b2 = 1.0 / (b * b);
    const std::int64_t rows = n / 2 + 1;
    constexpr std::int64_t kBlock = 64;
    const auto blocks = static_cast<std::size_t>((rows + kBlock - 1) / kBlock);
    std::vector<Best> partial(blocks);
    parallel_for(blocks, threads, [&](std::size_t blk) {
        double best = -std::numeric_limits<double>::infinity();
        std::int64_t bi = 0, bj = 0;
        int bc = 0;
        std::uint64_t cells = 0;
        const std::int64_t i0 = static_cast<std::int64_t>(blk) * kBlock;
        const std::int64_t i1 = std::min(rows, i0 + kBlock);
        for (std::int64_t i = i0; i < i1; ++i) {
            const double u1 = static_cast<double>(i) / nd;
            const double half1 = 0.5 * t.phi[i];
            const double third1 = t.phi[i] / 3.0;
            const std::int64_t jend = n - i;
            cells += static_cast<std::uint64_t>(jend - i + 1);
            const std::int64_t jlow_end = std::min(jb, jend);
            for (std::int64_t j = i; j <= jlow_end; ++j) {
                const double u2 = static_cast<double>(j) / nd;
                const std::int64_t s = i + j;
                const double d = (u2 - u1) * inv_b;
                double v = t.base_i[s] + half1 + t.phi[j] + p3 * (2.0 - d) * inv_b;
                int c = 1;
                if (rest_high[s]) {
                    const double v2 = t.base_ii[s] + third1 + 0.5 * t.phi[j] + p3 * ((1.0 - d) * u1 + u2) * inv_b2;
                    if (v2 > v) {
                        v = v2;
                        c = 2;
                    }
                }
                if (v > best) {
                    best = v;
                    bi = i;
                    bj = j;
                    bc = c;
                }
            }
            if (i <= jb) {
                const double lead = half1 + p3 * u1 * inv_b2;
                for (std::int64_t j = std::max(i, jb + 1); j <= jend; ++j) {
                    const double v = t.base_iii[i + j] + lead + t.phi[j];
                    if (v > best) {
                        best = v;
                        bi = i;
                        bj = j;
                        bc = 3;
                    }
                }
            }
        }
        Best local;
        local.value = best;
        local.u1 = static_cast<double>(bi) / nd;
        local.u2 = static_cast<double>(bj) / nd;
        local.label = to_string(static_cast<Case1296>(bc == 0 ? 1 : bc));
        local.cells = cells;
        partial[blk] = std::move(local);
    });
    Best best;
    for (const auto& p : partial) best.merge(p);
    return best;
}

}  // namespace

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::A1309: return "1309";
        case Algorithm::A1302: return "1302";
        case Algorithm::A1296: return "1296";
    }
    return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "1309") return Algorithm::A1309;
    if (s == "1302") return Algorithm::A1302;
    if (s == "1296") return Algorithm::A1296;
    fail("domain_error", "unknown algorithm '" + s + "'");
}

double corner_max_bound(const std::array<double, 4>& corners, double d, double delta) {
    return *std::max_element(corners.begin(), corners.end()) + 0.25 * d * delta * delta;
}

std::vector<double> certify_axis(Algorithm algorithm, int delta_log2) {
    check_delta(delta_log2);
    const std::int64_t n = std::int64_t{1} << delta_log2;
    std::vector<double> axis;
    axis.reserve(static_cast<std::size_t>(n + 3));
    for (std::int64_t i = 0; i <= n; ++i) axis.push_back(static_cast<double>(i) / static_cast<double>(n));
    if (algorithm != Algorithm::A1296) {
        const double b = algorithm == Algorithm::A1309 ? consts::a1309::b : consts::a1302::b;
        axis.push_back(b);
        axis.push_back(1.0 - b);
        std::sort(axis.begin(), axis.end());
        axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    }
    return axis;
}

double certify_point(Algorithm algorithm, double u1, double u2, std::string* which) {
    switch (algorithm) {
        case Algorithm::A1309:
            if (which) *which = "mixture";
            return density_mixture_1309(u1, u2);
        case Algorithm::A1302: {
            const Mixture1302 m = Mixture1302::published();
            double best = -1.0;
            for (int c = 1; c <= 3; ++c) {
                if (!case_applicable_1302(u1, u2, m.b, c)) continue;
                const double v = density_mixture_1302(u1, u2, c, m);
                if (v > best) {
                    best = v;
                    if (which) *which = std::to_string(c);
                }
            }
            return best;
        }
        case Algorithm::A1296: {
            static const Mixture1296 m = Mixture1296::published();
            Case1296 c = Case1296::I;
            const double v = density_mixture_1296_max(u1, u2, m, &c);
            if (which) *which = to_string(c);
            return v;
        }
    }
    return kNaN;
}

Fast1296::Fast1296(int delta_log2) : n(std::int64_t{1} << delta_log2), b(consts::a1296::b) {
    check_delta(delta_log2);
    using namespace consts::a1296;
    const PiecewiseDensity phit = phi_tilde_1296();
    const double nd = static_cast<double>(n);
    const auto size = static_cast<std::size_t>(n + 1);
    phi.resize(size);
    base_i.resize(size);
    base_ii.resize(size);
    base_iii.resize(size);
    for (std::int64_t t = 0; t <= n; ++t) {
        const double u = static_cast<double>(t) / nd;
        phi[t] = phit.evaluate(u);
        const double a = std::max(0.0, 1.0 - u) / b;
        const double clocks = p1 * (2.0 - u);
        base_i[t] = clocks + p4 * (2.0 * karger_f1(a) / b - u * karger_f2(a) / (b * b));
        base_ii[t] = clocks + p4 * (1.0 - u / (6.0 * b)) / b;
        base_iii[t] = clocks + p4 * karger_f12(a) / b;
    }
}

double Fast1296::case_value(int c, std::int64_t i, std::int64_t j) const {
    const double nd = static_cast<double>(n);
    const double u1 = static_cast<double>(i) / nd, u2 = static_cast<double>(j) / nd;
    const double p3 = consts::a1296::p3;
    const auto s = static_cast<std::size_t>(i + j);
    if (!case_applicable_1296(u1, u2, b, static_cast<Case1296>(c))) return kNaN;
    const double d = (u2 - u1) / b;
    switch (c) {
        case 1: return base_i[s] + 0.5 * phi[i] + phi[j] + p3 * (2.0 - d) / b;
        case 2: return base_ii[s] + phi[i] / 3.0 + 0.5 * phi[j] + p3 * ((1.0 - d) * u1 + u2) / (b * b);
        case 3: return base_iii[s] + 0.5 * phi[i] + phi[j] + p3 * u1 / (b * b);
        default: return kNaN;
    }
}

CertificationReport certify(Algorithm algorithm, int delta_log2, int threads) {
    check_delta(delta_log2);
    const auto start = std::chrono::steady_clock::now();
    const Best best = algorithm == Algorithm::A1296 ? scan_1296(delta_log2, threads)
                                                    : scan_generic(algorithm, delta_log2, threads);
    CertificationReport r;
    r.algorithm = algorithm;
    r.delta_log2 = delta_log2;
    r.delta = std::ldexp(1.0, -delta_log2);
    r.grid_max = best.value;
    r.hessian_bound_d = algorithm == Algorithm::A1296 ? consts::a1296::hessian_d : 0.0;
    r.error_term = 0.25 * r.hessian_bound_d * r.delta * r.delta;
    r.certified_factor = r.grid_max + r.error_term;
    r.argmax_u1 = best.u1;
    r.argmax_u2 = best.u2;
    r.argmax_case = best.label;
    r.cells_evaluated = best.cells;
    r.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

void dump_certify_csv(Algorithm algorithm, int delta_log2, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail("io_error", "cannot write '" + path + "'");
    out << "u1,u2,case,density\n";
    const std::vector<double> axis = certify_axis(algorithm, delta_log2);
    const Mixture1296 m6 = Mixture1296::published();
    const Mixture1302 m2 = Mixture1302::published();
    for (std::size_t i = 0; i < axis.size(); ++i) {
        for (std::size_t j = i; j < axis.size() && axis[i] + axis[j] <= 1.0 + 1e-12; ++j) {
            const double u1 = axis[i], u2 = axis[j];
            auto row = [&](const std::string& c, double v) {
                out << format_double(u1) << ',' << format_double(u2) << ',' << c << ',' << format_double(v) << '\n';
            };
            switch (algorithm) {
                case Algorithm::A1309: row("mixture", density_mixture_1309(u1, u2)); break;
                case Algorithm::A1302:
                    for (int c = 1; c <= 3; ++c)
                        if (case_applicable_1302(u1, u2, m2.b, c)) row(std::to_string(c), density_mixture_1302(u1, u2, c, m2));
                    break;
                case Algorithm::A1296:
                    for (int c = 1; c <= 5; ++c) {
                        const auto cc = static_cast<Case1296>(c);
                        if (case_applicable_1296(u1, u2, m6.b, cc)) row(to_string(cc), density_mixture_1296(u1, u2, cc, m6));
                    }
                    break;
            }
        }
    }
    if (!out) fail("io_error", "failed writing '" + path + "'");
}

double hessian_scan_fn(const std::function<double(double, double, int)>& f,
                       const std::function<bool(double, double, int)>& applicable, int cases,
                       const std::vector<double>& breakpoints, std::size_t samples, std::uint64_t seed) {
    constexpr double h = 1e-4;
    const RandomSource rng(seed);
    auto crosses = [&](double u) {
        return std::any_of(breakpoints.begin(), breakpoints.end(), [&](double x) { return std::abs(u - x) <= h; });
    };
    auto inside = [](double u1, double u2) { return u1 >= 0.0 && u1 <= u2 && u1 + u2 <= 1.0; };
    double worst = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        double x = rng.uniform(Stream::Aux, 2 * s), y = rng.uniform(Stream::Aux, 2 * s + 1);
        if (x + y > 1.0) {
            x = 1.0 - x;
            y = 1.0 - y;
        }
        const double u1 = std::min(x, y), u2 = std::max(x, y);
        for (int c = 0; c < cases; ++c) {
            if (!applicable(u1, u2, c)) continue;
            const double f0 = f(u1, u2, c);
            if (!crosses(u1) && inside(u1 - h, u2) && inside(u1 + h, u2) && applicable(u1 - h, u2, c) &&
                applicable(u1 + h, u2, c))
                worst = std::min(worst, (f(u1 + h, u2, c) - 2.0 * f0 + f(u1 - h, u2, c)) / (h * h));
            if (!crosses(u2) && inside(u1, u2 - h) && inside(u1, u2 + h) && applicable(u1, u2 - h, c) &&
                applicable(u1, u2 + h, c))
                worst = std::min(worst, (f(u1, u2 + h, c) - 2.0 * f0 + f(u1, u2 - h, c)) / (h * h));
        }
    }
    return worst;
}

double hessian_scan(Algorithm algorithm, std::size_t samples, std::uint64_t seed) {
    if (samples < 10000) fail("domain_error", "hessian_scan needs at least 1e4 samples");
    switch (algorithm) {
        case Algorithm::A1309:
            return hessian_scan_fn([](double u1, double u2, int) { return density_mixture_1309(u1, u2); },
                                   [](double, double, int) { return true; }, 1, {consts::a1309::b}, samples, seed);
        case Algorithm::A1302: {
            const Mixture1302 m = Mixture1302::published();
            return hessian_scan_fn([&](double u1, double u2, int c) { return density_mixture_1302(u1, u2, c + 1, m); },
                                   [&](double u1, double u2, int c) { return case_applicable_1302(u1, u2, m.b, c + 1); },
                                   3, {m.b}, samples, seed);
        }
        case Algorithm::A1296: {
            const Mixture1296 m = Mixture1296::published();
            std::vector<double> bps = m.phi_tilde.breakpoints();
            bps.push_back(m.b);
            return hessian_scan_fn(
                [&](double u1, double u2, int c) { return density_mixture_1296(u1, u2, static_cast<Case1296>(c + 1), m); },
                [&](double u1, double u2, int c) { return case_applicable_1296(u1, u2, m.b, static_cast<Case1296>(c + 1)); },
                5, bps, samples, seed);
        }
    }
    return 0.0;
}

}  // namespace mwc
