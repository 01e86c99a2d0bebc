#include "mwc/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mwc/constants.hpp"
#include "mwc/error.hpp"

namespace mwc {

namespace {

std::vector<int> permutation_order(int k, const RandomSource& rng) {
    std::vector<double> key(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) key[t] = rng.terminal_uniform(Stream::Permutation, t);
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
    return order;
}

double draw_threshold(const PiecewiseDensity& d, double u) {
    return std::clamp(d.sample(u), std::numeric_limits<double>::denorm_min(), 1.0);
}

}  // namespace

std::string to_string(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::ExponentialClocks: return "clocks";
        case SchemeKind::SingleThreshold: return "single";
        case SchemeKind::DescendingThresholds: return "descending";
        case SchemeKind::IndependentThresholds: return "independent";
    }
    return "unknown";
}

SchemeKind scheme_kind_from_string(const std::string& name) {
    if (name == "clocks") return SchemeKind::ExponentialClocks;
    if (name == "single") return SchemeKind::SingleThreshold;
    if (name == "descending") return SchemeKind::DescendingThresholds;
    if (name == "independent") return SchemeKind::IndependentThresholds;
    fail("domain_error", "unknown scheme '" + name + "'");
}

void SchemeMixture::validate() const {
    if (entries.empty()) fail("domain_error", "mixture has no entries");
    double s = 0.0;
    for (const auto& e : entries) {
        if (!(e.weight >= 0.0)) fail("domain_error", "negative mixture weight");
        s += e.weight;
    }
    if (std::abs(s - 1.0) > 1e-9) fail("domain_error", "mixture weights do not sum to 1");
}

SchemeMixture mixture_1309() {
    using consts::a1309::p;
    return {"1309", {{p, Scheme::clocks()}, {1.0 - p, Scheme::single(phi_1309())}}};
}

SchemeMixture mixture_1302() {
    using namespace consts::a1302;
    return {"1302",
            {{p1, Scheme::clocks()}, {p2, Scheme::single(phi_1302())}, {p3, Scheme::descending(uniform_density(b))}}};
}

SchemeMixture mixture_1296() {
    using namespace consts::a1296;
    // The published probabilities sum to 1 - 2.4e-7; the sampler rescales them.
    const double s = p1 + p2 + p3 + p4;
    return {"1296",
            {{p1 / s, Scheme::clocks()},
             {p2 / s, Scheme::single(phi_tilde_1296())},
             {p3 / s, Scheme::descending(uniform_density(b))},
             {p4 / s, Scheme::independent(uniform_density(b))}}};
}

SchemeMixture mixture_by_name(const std::string& name) {
    if (name == "1309") return mixture_1309();
    if (name == "1302") return mixture_1302();
    if (name == "1296") return mixture_1296();
    fail("domain_error", "unknown mixture '" + name + "'");
}

int Partition::label(std::span<const double> x) const noexcept {
    const int k = static_cast<int>(values_.size());
    if (kind_ == SchemeKind::ExponentialClocks) {
        int best = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int t = 0; t < k; ++t) {
            if (!(x[t] > 0.0)) continue;
            const double r = values_[t] / x[t];
            if (best < 0 || r < best_ratio) {
                best = t;
                best_ratio = r;
            }
        }
        return best;
    }
    for (int i = 0; i + 1 < k; ++i) {
        const int t = order_[i];
        if (x[t] >= values_[t]) return t;
    }
    return order_[k - 1];
}

Labeling Partition::label_all(const FractionalEmbedding& emb) const {
    Labeling out;
    out.assignment.resize(emb.points.size());
    for (std::size_t v = 0; v < emb.points.size(); ++v) out.assignment[v] = label(emb.points[v].coords());
    return out;
}

Partition Partition::make(SchemeKind kind, std::vector<int> order, std::vector<double> values) {
    Partition p;
    p.kind_ = kind;
    p.order_ = std::move(order);
    p.values_ = std::move(values);
    if (kind != SchemeKind::ExponentialClocks && p.order_.size() != p.values_.size())
        fail("domain_error", "partition order and thresholds differ in size");
    return p;
}

Partition draw_partition(const Scheme& scheme, int k, const RandomSource& rng) {
    Partition p;
    p.kind_ = scheme.kind;
    p.values_.resize(static_cast<std::size_t>(k));
    switch (scheme.kind) {
        case SchemeKind::ExponentialClocks:
            for (int t = 0; t < k; ++t) p.values_[t] = -std::log1p(-rng.terminal_uniform(Stream::Clocks, t));
            break;
        case SchemeKind::SingleThreshold: {
            const double theta = draw_threshold(scheme.density, rng.uniform(Stream::Thresholds, 0));
            std::fill(p.values_.begin(), p.values_.end(), theta);
            p.order_ = permutation_order(k, rng);
            break;
        }
        case SchemeKind::DescendingThresholds:
            for (int t = 0; t < k; ++t)
                p.values_[t] = draw_threshold(scheme.density, rng.terminal_uniform(Stream::Thresholds, t));
            p.order_.resize(static_cast<std::size_t>(k));
            std::iota(p.order_.begin(), p.order_.end(), 0);
            std::stable_sort(p.order_.begin(), p.order_.end(),
                             [&](int a, int b) { return p.values_[a] > p.values_[b]; });
            break;
        case SchemeKind::IndependentThresholds:
            for (int t = 0; t < k; ++t)
                p.values_[t] = draw_threshold(scheme.density, rng.terminal_uniform(Stream::Thresholds, t));
            p.order_ = permutation_order(k, rng);
            break;
    }
    return p;
}

std::size_t select_entry(const SchemeMixture& mix, const RandomSource& rng) {
    const double u = rng.uniform(Stream::Select, 0);
    double acc = 0.0;
    for (std::size_t i = 0; i < mix.entries.size(); ++i) {
        acc += mix.entries[i].weight;
        if (u < acc) return i;
    }
    for (std::size_t i = mix.entries.size(); i-- > 0;)
        if (mix.entries[i].weight > 0.0) return i;
    return 0;
}

Partition draw_partition(const SchemeMixture& mix, int k, const RandomSource& rng) {
    return draw_partition(mix.entries[select_entry(mix, rng)].scheme, k, rng);
}

Labeling exponential_clocks(const FractionalEmbedding& emb, const RandomSource& rng) {
    return draw_partition(Scheme::clocks(), emb.k(), rng).label_all(emb);
}

Labeling single_threshold(const FractionalEmbedding& emb, const PiecewiseDensity& phi, const RandomSource& rng) {
    return draw_partition(Scheme::single(phi), emb.k(), rng).label_all(emb);
}

Labeling descending_thresholds(const FractionalEmbedding& emb, const PiecewiseDensity& psi, const RandomSource& rng) {
    return draw_partition(Scheme::descending(psi), emb.k(), rng).label_all(emb);
}

Labeling independent_thresholds(const FractionalEmbedding& emb, const PiecewiseDensity& xi, const RandomSource& rng) {
    return draw_partition(Scheme::independent(xi), emb.k(), rng).label_all(emb);
}

Labeling run_scheme(const Scheme& scheme, const FractionalEmbedding& emb, const RandomSource& rng) {
    return draw_partition(scheme, emb.k(), rng).label_all(emb);
}

Labeling run_mixture(const SchemeMixture& mix, const FractionalEmbedding& emb, const RandomSource& rng) {
    mix.validate();
    return draw_partition(mix, emb.k(), rng).label_all(emb);
}

}  // namespace mwc
