#pragma once

#include <span>
#include <string>
#include <vector>

#include "mwc/density.hpp"
#include "mwc/geometry.hpp"
#include "mwc/rng.hpp"

namespace mwc {

enum class SchemeKind { ExponentialClocks, SingleThreshold, DescendingThresholds, IndependentThresholds };

std::string to_string(SchemeKind kind);
SchemeKind scheme_kind_from_string(const std::string& name);  // clocks|single|descending|independent

struct Scheme {
    SchemeKind kind = SchemeKind::ExponentialClocks;
    PiecewiseDensity density;  // unused for clocks

    static Scheme clocks() { return {}; }
    static Scheme single(PiecewiseDensity phi) { return {SchemeKind::SingleThreshold, std::move(phi)}; }
    static Scheme descending(PiecewiseDensity psi) { return {SchemeKind::DescendingThresholds, std::move(psi)}; }
    static Scheme independent(PiecewiseDensity xi) { return {SchemeKind::IndependentThresholds, std::move(xi)}; }
};

struct MixtureEntry {
    double weight = 1.0;
    Scheme scheme;
};

struct SchemeMixture {
    std::string name;
    std::vector<MixtureEntry> entries;

    void validate() const;
};

SchemeMixture mixture_1309();
SchemeMixture mixture_1302();
SchemeMixture mixture_1296();
SchemeMixture mixture_by_name(const std::string& name);  // "1309" | "1302" | "1296"

// One realized random partition of the simplex. Threshold schemes sweep
// order[0..k-2] and give the remainder to order[k-1]; clocks use argmin z/x.
class Partition {
public:
    int label(std::span<const double> x) const noexcept;
    Labeling label_all(const FractionalEmbedding& emb) const;

    SchemeKind kind() const noexcept { return kind_; }
    std::span<const int> order() const noexcept { return order_; }
    std::span<const double> values() const noexcept { return values_; }

    // Explicit construction for tests: values are thresholds or clock draws.
    static Partition make(SchemeKind kind, std::vector<int> order, std::vector<double> values);

private:
    friend Partition draw_partition(const Scheme&, int, const RandomSource&);

    SchemeKind kind_ = SchemeKind::ExponentialClocks;
    std::vector<int> order_;
    std::vector<double> values_;
};

Partition draw_partition(const Scheme& scheme, int k, const RandomSource& rng);
Partition draw_partition(const SchemeMixture& mix, int k, const RandomSource& rng);
// Index of the mixture entry selected by the Select stream.
std::size_t select_entry(const SchemeMixture& mix, const RandomSource& rng);

Labeling exponential_clocks(const FractionalEmbedding& emb, const RandomSource& rng);
Labeling single_threshold(const FractionalEmbedding& emb, const PiecewiseDensity& phi, const RandomSource& rng);
Labeling descending_thresholds(const FractionalEmbedding& emb, const PiecewiseDensity& psi, const RandomSource& rng);
Labeling independent_thresholds(const FractionalEmbedding& emb, const PiecewiseDensity& xi, const RandomSource& rng);
Labeling run_scheme(const Scheme& scheme, const FractionalEmbedding& emb, const RandomSource& rng);
Labeling run_mixture(const SchemeMixture& mix, const FractionalEmbedding& emb, const RandomSource& rng);

}  // namespace mwc
