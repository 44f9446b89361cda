#include "starmod/star.hpp"

#include "starmod/error.hpp"
#include "starmod/sampling.hpp"

namespace starmod {

namespace {

int normalize_quarter(int t) {
    int r = t % 4;
    return r < 0 ? r + 4 : r;
}

GaussianRational i_power(int t) {
    switch (normalize_quarter(t)) {
        case 0: return GaussianRational(1);
        case 1: return GaussianRational::i();
        case 2: return GaussianRational(-1);
        default: return -GaussianRational::i();
    }
}

} // namespace

Automorphism::Automorphism(std::array<std::array<int, 2>, 2> lattice, std::array<int, 2> quarter_shift)
    : lattice_(lattice), shift_{normalize_quarter(quarter_shift[0]), normalize_quarter(quarter_shift[1])} {
    int det = lattice_[0][0] * lattice_[1][1] - lattice_[0][1] * lattice_[1][0];
    if (det != 1 && det != -1)
        throw UnsupportedOperationError("automorphism lattice map must lie in GL(2,Z)");
}

AlgebraElement Automorphism::apply(const AlgebraElement& f) const {
    if (f.descriptor()->kind() != AlgebraKind::torus)
        throw UnsupportedOperationError("automorphisms are supported on the torus algebra only");
    AlgebraElement out = AlgebraElement::zero(f.descriptor());
    for (const auto& [m, c] : f.terms()) {
        AlgebraElement::Key target{lattice_[0][0] * m[0] + lattice_[0][1] * m[1],
                                   lattice_[1][0] * m[0] + lattice_[1][1] * m[1]};
        out.add_term(target, c * i_power(shift_[0] * m[0] + shift_[1] * m[1]));
    }
    return out;
}

FormalSeries Automorphism::apply(const FormalSeries& f) const {
    FormalSeries out(f.descriptor(), f.truncation_order());
    for (int r = 0; r <= f.truncation_order(); ++r) out.set_coeff(r, apply(f.coeff(r)));
    return out;
}

Automorphism Automorphism::inverse() const {
    int det = lattice_[0][0] * lattice_[1][1] - lattice_[0][1] * lattice_[1][0];
    std::array<std::array<int, 2>, 2> inv{
        {{det * lattice_[1][1], -det * lattice_[0][1]}, {-det * lattice_[1][0], det * lattice_[0][0]}}};
    // shift s with t + A^T s = 0 (mod 4), i.e. s = -(A^{-1})^T t
    std::array<int, 2> s{-(inv[0][0] * shift_[0] + inv[1][0] * shift_[1]),
                         -(inv[0][1] * shift_[0] + inv[1][1] * shift_[1])};
    return Automorphism(inv, s);
}

AlgebraElement moyal_cochain_generic(const AlgebraElement& f, const AlgebraElement& g, int r) {
    require_same_descriptor(f.descriptor(), g.descriptor(), "moyal_cochain_generic");
    const auto& desc = f.descriptor();
    const int dim = desc->dim();
    const bool torus = desc->kind() == AlgebraKind::torus;

    using Key = AlgebraElement::Key;
    std::map<std::pair<Key, Key>, GaussianRational> state;
    for (const auto& [kf, cf] : f.terms())
        for (const auto& [kg, cg] : g.terms()) state[{kf, kg}] += cf * cg;

    // one factor pi^{jk} d_j (x) d_k per step; monomials stay monomials
    for (int step = 0; step < r; ++step) {
        std::map<std::pair<Key, Key>, GaussianRational> next;
        for (const auto& [keys, c] : state) {
            const auto& [kf, kg] = keys;
            for (int j = 0; j < dim; ++j) {
                if (kf[j] == 0) continue;
                for (int k = 0; k < dim; ++k) {
                    if (kg[k] == 0) continue;
                    const Rational& pi = desc->poisson(j, k);
                    if (pi == 0) continue;
                    GaussianRational factor = c * GaussianRational(pi);
                    Key nf = kf, ng = kg;
                    if (torus) {
                        factor *= GaussianRational(Rational(0), Rational(kf[j]));
                        factor *= GaussianRational(Rational(0), Rational(kg[k]));
                    } else {
                        factor *= GaussianRational(Rational(kf[j]) * Rational(kg[k]));
                        nf[j] -= 1;
                        ng[k] -= 1;
                    }
                    auto [it, inserted] = next.emplace(std::make_pair(std::move(nf), std::move(ng)), factor);
                    if (!inserted) it->second += factor;
                }
            }
        }
        state = std::move(next);
        if (state.empty()) break;
    }

    GaussianRational scale(1);
    for (int t = 1; t <= r; ++t) {
        scale *= GaussianRational(Rational(0), Rational(1, 2));
        scale /= GaussianRational(Rational(t));
    }
    AlgebraElement out = AlgebraElement::zero(desc);
    Key sum(dim);
    for (const auto& [keys, c] : state) {
        if (c.is_zero()) continue;
        for (int j = 0; j < dim; ++j) sum[j] = keys.first[j] + keys.second[j];
        out.add_term(sum, c * scale);
    }
    return out;
}

std::shared_ptr<const StarProduct> StarProduct::moyal(DescriptorPtr desc, int K) {
    return std::shared_ptr<const StarProduct>(new StarProduct(std::move(desc), K, Kernel::moyal));
}

std::shared_ptr<const StarProduct> StarProduct::truncated_demo(DescriptorPtr desc, int K) {
    return std::shared_ptr<const StarProduct>(
        new StarProduct(std::move(desc), K, Kernel::truncated_demo));
}

AlgebraElement StarProduct::kernel_cochain(int r, const AlgebraElement& f,
                                           const AlgebraElement& g) const {
    if (r == 0) return f * g;
    if (kernel_ == Kernel::truncated_demo) {
        if (r >= 2) return AlgebraElement::zero(desc_);
        AlgebraElement out = poisson_bracket(f, g).scaled(GaussianRational(Rational(0), Rational(1, 2)));
        out += f.derive(1) * g.derive(1);
        return out;
    }
    if (desc_->kind() == AlgebraKind::torus) {
        // closed form: contribution of (e_m, e_n) at order r is
        // (-i theta (m1 n2 - m2 n1) / 2)^r / r! e_{m+n}
        const Rational theta = desc_->theta();
        AlgebraElement out = AlgebraElement::zero(desc_);
        AlgebraElement::Key sum(2);
        for (const auto& [m, cf] : f.terms()) {
            for (const auto& [n, cg] : g.terms()) {
                long w = static_cast<long>(m[0]) * n[1] - static_cast<long>(m[1]) * n[0];
                if (w == 0) continue;
                GaussianRational base(Rational(0), Rational(-theta * Rational(w) / 2));
                GaussianRational factor = cf * cg;
                for (int t = 1; t <= r; ++t) {
                    factor *= base;
                    factor /= GaussianRational(Rational(t));
                }
                sum[0] = m[0] + n[0];
                sum[1] = m[1] + n[1];
                out.add_term(sum, factor);
            }
        }
        return out;
    }
    return moyal_cochain_generic(f, g, r);
}

namespace {

/// Torus closed form, all orders in one sweep over the term pairs.
void accumulate_torus_orders(const AlgebraElement& fa, const AlgebraElement& gb,
                             const Rational& theta, int base, int budget,
                             std::vector<AlgebraElement>& acc) {
    AlgebraElement::Key sum(2);
    for (const auto& [m, cf] : fa.terms()) {
        for (const auto& [n, cg] : gb.terms()) {
            sum[0] = m[0] + n[0];
            sum[1] = m[1] + n[1];
            GaussianRational factor = cf * cg;
            acc[base].add_term(sum, factor);
            long w = static_cast<long>(m[0]) * n[1] - static_cast<long>(m[1]) * n[0];
            if (w == 0 || theta == 0) continue;
            GaussianRational step(Rational(0), Rational(-theta * Rational(w) / 2));
            for (int r = 1; r <= budget; ++r) {
                factor *= step;
                factor /= GaussianRational(Rational(r));
                acc[base + r].add_term(sum, factor);
            }
        }
    }
}

/// Plane bidifferential expansion, emitting every order of one derivation
/// chain while it is walked.
void accumulate_plane_orders(const AlgebraElement& fa, const AlgebraElement& gb,
                             const AlgebraDescriptor& desc, int base, int budget,
                             std::vector<AlgebraElement>& acc) {
    using Key = AlgebraElement::Key;
    const int dim = desc.dim();
    std::map<std::pair<Key, Key>, GaussianRational> state;
    for (const auto& [kf, cf] : fa.terms())
        for (const auto& [kg, cg] : gb.terms()) state[{kf, kg}] += cf * cg;

    GaussianRational scale(1);
    Key sum(dim);
    for (int r = 0; r <= budget; ++r) {
        if (r > 0) {
            std::map<std::pair<Key, Key>, GaussianRational> next;
            for (const auto& [keys, c] : state) {
                const auto& [kf, kg] = keys;
                for (int j = 0; j < dim; ++j) {
                    if (kf[j] == 0) continue;
                    for (int k = 0; k < dim; ++k) {
                        if (kg[k] == 0) continue;
                        const Rational& pi = desc.poisson(j, k);
                        if (pi == 0) continue;
                        GaussianRational factor = c * GaussianRational(pi * Rational(kf[j]) * Rational(kg[k]));
                        Key nf = kf, ng = kg;
                        nf[j] -= 1;
                        ng[k] -= 1;
                        auto [it, inserted] =
                            next.emplace(std::make_pair(std::move(nf), std::move(ng)), factor);
                        if (!inserted) it->second += factor;
                    }
                }
            }
            state = std::move(next);
            if (state.empty()) return;
            scale *= GaussianRational(Rational(0), Rational(1, 2));
            scale /= GaussianRational(Rational(r));
        }
        for (const auto& [keys, c] : state) {
            if (c.is_zero()) continue;
            for (int j = 0; j < dim; ++j) sum[j] = keys.first[j] + keys.second[j];
            acc[base + r].add_term(sum, c * scale);
        }
    }
}

} // namespace

FormalSeries StarProduct::kernel_multiply(const FormalSeries& f, const FormalSeries& g) const {
    std::vector<AlgebraElement> acc(K_ + 1, AlgebraElement::zero(desc_));
    const bool torus = desc_->kind() == AlgebraKind::torus;
    for (int a = 0; a <= K_; ++a) {
        if (f.coeff(a).is_zero()) continue;
        for (int b = 0; a + b <= K_; ++b) {
            if (g.coeff(b).is_zero()) continue;
            const int budget = K_ - a - b;
            if (kernel_ == Kernel::truncated_demo) {
                for (int r = 0; r <= std::min(budget, 1); ++r) {
                    AlgebraElement c = kernel_cochain(r, f.coeff(a), g.coeff(b));
                    acc[a + b + r] += c;
                }
            } else if (torus) {
                accumulate_torus_orders(f.coeff(a), g.coeff(b), desc_->theta(), a + b, budget, acc);
            } else {
                accumulate_plane_orders(f.coeff(a), g.coeff(b), *desc_, a + b, budget, acc);
            }
        }
    }
    return FormalSeries::from_coeffs(std::move(acc));
}

FormalSeries StarProduct::multiply(const FormalSeries& f, const FormalSeries& g) const {
    require_same_descriptor(desc_, f.descriptor(), "star multiply");
    require_same_descriptor(desc_, g.descriptor(), "star multiply");
    if (f.truncation_order() != K_ || g.truncation_order() != K_)
        throw TruncationMismatchError("star multiply: series truncation must match the product");
    if (kernel_ != Kernel::wrapped) return kernel_multiply(f, g);
    if (twist_)
        return twist_->apply(base_->multiply(twist_inv_->apply(f), twist_inv_->apply(g)));
    return autom_->apply(base_->multiply(autom_inv_->apply(f), autom_inv_->apply(g)));
}

AlgebraElement StarProduct::cochain(int r, const AlgebraElement& f, const AlgebraElement& g) const {
    if (r < 0 || r > K_) throw IndexRangeError("cochain order out of range");
    return multiply(FormalSeries::embed(f, K_), FormalSeries::embed(g, K_)).coeff(r);
}

bool StarProduct::operator==(const StarProduct& o) const {
    if (K_ != o.K_ || kernel_ != o.kernel_ || !same_descriptor(desc_, o.desc_)) return false;
    if (kernel_ != Kernel::wrapped) return true;
    if (twist_.has_value() != o.twist_.has_value() || autom_.has_value() != o.autom_.has_value())
        return false;
    if (twist_ && !(*twist_ == *o.twist_)) return false;
    if (autom_ && !(*autom_ == *o.autom_)) return false;
    return *base_ == *o.base_;
}

bool same_star(const StarProductPtr& a, const StarProductPtr& b) {
    return a.get() == b.get() || (a && b && *a == *b);
}

void require_same_star(const StarProductPtr& a, const StarProductPtr& b, const char* where) {
    if (!same_star(a, b)) throw DescriptorMismatchError(std::string(where) + ": star products differ");
}

void require_series_fits(const StarProduct& star, const FormalSeries& f, const char* where) {
    require_same_descriptor(star.descriptor(), f.descriptor(), where);
    if (star.truncation_order() != f.truncation_order())
        throw TruncationMismatchError(std::string(where) + ": truncation orders differ");
}

FormalSeries star_multiply(const FormalSeries& f, const FormalSeries& g, const StarProductPtr& star) {
    return star->multiply(f, g);
}

StarProductPtr twist_star(const EquivalenceTransform& T, StarProductPtr star) {
    require_same_descriptor(T.descriptor(), star->descriptor(), "twist_star");
    if (T.truncation_order() != star->truncation_order())
        throw TruncationMismatchError("twist_star: truncation orders differ");
    auto out = std::shared_ptr<StarProduct>(
        new StarProduct(star->descriptor(), star->truncation_order(), StarProduct::Kernel::wrapped));
    out->base_ = std::move(star);
    out->twist_ = T;
    out->twist_inv_ = T.inverse();
    return out;
}

StarProductPtr twist_by_automorphism(const Automorphism& phi, StarProductPtr star) {
    if (star->descriptor()->kind() != AlgebraKind::torus)
        throw UnsupportedOperationError("automorphism twist: torus algebras only");
    auto out = std::shared_ptr<StarProduct>(
        new StarProduct(star->descriptor(), star->truncation_order(), StarProduct::Kernel::wrapped));
    out->base_ = std::move(star);
    out->autom_ = phi;
    out->autom_inv_ = phi.inverse();
    return out;
}

namespace {

void record_failure(AxiomCheck& check, int order, std::vector<FormalSeries> witness) {
    if (check.pass || order < *check.first_failing_order) {
        check.pass = false;
        check.first_failing_order = order;
        check.witness = std::move(witness);
    }
}

} // namespace

StarAxiomReport check_star_axioms(const StarProductPtr& star, int sample_count, std::uint64_t seed) {
    if (sample_count < 1) throw PreconditionError("check_star_axioms: sample_count must be >= 1");
    const auto& desc = star->descriptor();
    const int K = star->truncation_order();

    StarAxiomReport report;
    for (const char* axiom : {"C0", "C1-antisymmetry", "unit", "hermitian", "associativity"}) {
        AxiomCheck check;
        check.axiom = axiom;
        report.checks.push_back(std::move(check));
    }
    AxiomCheck& c0 = report.checks[0];
    AxiomCheck& c1 = report.checks[1];
    AxiomCheck& unit = report.checks[2];
    AxiomCheck& herm = report.checks[3];
    AxiomCheck& assoc = report.checks[4];

    Xoshiro256 rng(seed);
    const FormalSeries one = FormalSeries::one(desc, K);
    const GaussianRational unit_i = GaussianRational::i();

    for (int s = 0; s < sample_count; ++s) {
        FormalSeries f = sample_series(rng, desc, K);
        FormalSeries g = sample_series(rng, desc, K);
        FormalSeries h = sample_series(rng, desc, K);

        FormalSeries fg = star->multiply(f, g);
        if (fg.coeff(0) != f.coeff(0) * g.coeff(0)) record_failure(c0, 0, {f, g});

        if (K >= 1) {
            FormalSeries f0 = FormalSeries::embed(f.coeff(0), K);
            FormalSeries g0 = FormalSeries::embed(g.coeff(0), K);
            FormalSeries comm = star->multiply(f0, g0) - star->multiply(g0, f0);
            AlgebraElement expected = poisson_bracket(f.coeff(0), g.coeff(0)).scaled(unit_i);
            if (comm.coeff(1) != expected) record_failure(c1, 1, {f0, g0});
        }

        if (auto d = star->multiply(one, f).first_difference_order(f))
            record_failure(unit, *d, {one, f});
        if (auto d = star->multiply(f, one).first_difference_order(f))
            record_failure(unit, *d, {f, one});

        FormalSeries lhs_h = fg.conjugate();
        FormalSeries rhs_h = star->multiply(g.conjugate(), f.conjugate());
        if (auto d = lhs_h.first_difference_order(rhs_h)) record_failure(herm, *d, {f, g});

        FormalSeries lhs_a = star->multiply(fg, h);
        FormalSeries rhs_a = star->multiply(f, star->multiply(g, h));
        if (auto d = lhs_a.first_difference_order(rhs_a)) record_failure(assoc, *d, {f, g, h});
    }
    return report;
}

} // namespace starmod
