#include "starmod/sampling.hpp"

namespace starmod {

GaussianRational sample_coefficient(Xoshiro256& rng) {
    switch (rng.bounded(7)) {
        case 0: return GaussianRational(0);
        case 1: return GaussianRational(1);
        case 2: return GaussianRational(-1);
        case 3: return GaussianRational::i();
        case 4: return -GaussianRational::i();
        case 5: return GaussianRational::of(1, 2);
        default: return GaussianRational::of(-1, 2);
    }
}

AlgebraElement sample_element_bounded(Xoshiro256& rng, const DescriptorPtr& desc, int max_terms,
                                      int bound) {
    AlgebraElement out = AlgebraElement::zero(desc);
    const int dim = desc->dim();
    const int term_count = 1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(max_terms)));
    for (int t = 0; t < term_count; ++t) {
        AlgebraElement::Key key(dim, 0);
        if (desc->kind() == AlgebraKind::torus) {
            for (int j = 0; j < dim; ++j) key[j] = static_cast<int>(rng.range(-bound, bound));
        } else {
            const int degree = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(bound) + 1));
            for (int d = 0; d < degree; ++d) key[rng.bounded(dim)] += 1;
        }
        out.add_term(key, sample_coefficient(rng));
    }
    return out;
}

AlgebraElement sample_element(Xoshiro256& rng, const DescriptorPtr& desc) {
    return sample_element_bounded(rng, desc, 3, 3);
}

FormalSeries sample_series(Xoshiro256& rng, const DescriptorPtr& desc, int K) {
    FormalSeries out(desc, K);
    for (int r = 0; r <= K; ++r) out.set_coeff(r, sample_element(rng, desc));
    return out;
}

} // namespace starmod
