#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>

#include "starmod/transform.hpp"

namespace starmod {

/// Undeformed torus automorphism e_m -> i^{t.m} e_{Am} with A in GL(2,Z) and
/// quarter-period translation exponents t in (Z/4)^2. These are exactly the
/// automorphisms whose action stays inside Q(i) coefficients.
class Automorphism {
  public:
    Automorphism(std::array<std::array<int, 2>, 2> lattice, std::array<int, 2> quarter_shift);

    static Automorphism identity() { return Automorphism({{{1, 0}, {0, 1}}}, {0, 0}); }
    static Automorphism lattice_map(std::array<std::array<int, 2>, 2> a) {
        return Automorphism(a, {0, 0});
    }
    static Automorphism translation(std::array<int, 2> quarter_shift) {
        return Automorphism({{{1, 0}, {0, 1}}}, quarter_shift);
    }

    const std::array<std::array<int, 2>, 2>& lattice() const { return lattice_; }
    const std::array<int, 2>& quarter_shift() const { return shift_; }

    AlgebraElement apply(const AlgebraElement& f) const;
    FormalSeries apply(const FormalSeries& f) const;
    Automorphism inverse() const;

    bool operator==(const Automorphism& o) const {
        return lattice_ == o.lattice_ && shift_ == o.shift_;
    }

  private:
    std::array<std::array<int, 2>, 2> lattice_;
    std::array<int, 2> shift_; // entries normalized to 0..3
};

/// Weyl-ordered star product at a fixed truncation order, possibly twisted by
/// an equivalence transform or conjugated by an undeformed automorphism.
/// C_0 is the pointwise product and C_1(f,g) - C_1(g,f) = i{f,g} for the
/// built-in kernels.
class StarProduct {
  public:
    /// Moyal-Weyl kernel for the descriptor's Poisson tensor.
    static std::shared_ptr<const StarProduct> moyal(DescriptorPtr desc, int K = 4);
    /// Deliberately broken demo product: C_1 = (i/2){f,g} + d1 f d1 g and
    /// C_r = 0 for r >= 2, so associativity first fails at order 2.
    static std::shared_ptr<const StarProduct> truncated_demo(DescriptorPtr desc, int K = 4);

    const DescriptorPtr& descriptor() const { return desc_; }
    int truncation_order() const { return K_; }
    bool is_twisted() const { return base_ != nullptr; }

    FormalSeries multiply(const FormalSeries& f, const FormalSeries& g) const;
    /// C_r(f,g) extracted from the product of order-0 embeddings.
    AlgebraElement cochain(int r, const AlgebraElement& f, const AlgebraElement& g) const;

    bool operator==(const StarProduct& o) const;

    friend std::shared_ptr<const StarProduct> twist_star(const EquivalenceTransform& T,
                                                         std::shared_ptr<const StarProduct> star);
    friend std::shared_ptr<const StarProduct> twist_by_automorphism(
        const Automorphism& phi, std::shared_ptr<const StarProduct> star);

  private:
    enum class Kernel { moyal, truncated_demo, wrapped };

    StarProduct(DescriptorPtr desc, int K, Kernel kernel) : desc_(std::move(desc)), K_(K), kernel_(kernel) {}

    AlgebraElement kernel_cochain(int r, const AlgebraElement& f, const AlgebraElement& g) const;
    FormalSeries kernel_multiply(const FormalSeries& f, const FormalSeries& g) const;

    DescriptorPtr desc_;
    int K_;
    Kernel kernel_;
    std::shared_ptr<const StarProduct> base_;
    std::optional<EquivalenceTransform> twist_, twist_inv_;
    std::optional<Automorphism> autom_, autom_inv_;
};

using StarProductPtr = std::shared_ptr<const StarProduct>;

bool same_star(const StarProductPtr& a, const StarProductPtr& b);
void require_same_star(const StarProductPtr& a, const StarProductPtr& b, const char* where);
void require_series_fits(const StarProduct& star, const FormalSeries& f, const char* where);

FormalSeries star_multiply(const FormalSeries& f, const FormalSeries& g, const StarProductPtr& star);

/// f *' g := T(T^{-1} f * T^{-1} g).
StarProductPtr twist_star(const EquivalenceTransform& T, StarProductPtr star);
/// f *^phi g := phi(phi^{-1} f * phi^{-1} g); torus automorphisms only.
StarProductPtr twist_by_automorphism(const Automorphism& phi, StarProductPtr star);

/// Weyl-Moyal cochain C_r(f,g) = (1/r!) (i/2)^r (pi^{jk} d_j (x) d_k)^r
/// applied termwise; works for either algebra. This is the generic route the
/// plane product uses directly and the torus product is cross-checked against.
AlgebraElement moyal_cochain_generic(const AlgebraElement& f, const AlgebraElement& g, int r);

/// One axiom verdict inside a star-product check report.
struct AxiomCheck {
    std::string axiom;
    bool pass = true;
    std::optional<int> first_failing_order;
    std::vector<FormalSeries> witness; // the offending sample tuple
};

struct StarAxiomReport {
    std::string convention = "weyl"; // ordering convention baked into the kernels
    std::vector<AxiomCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const AxiomCheck* find(const std::string& axiom) const {
        for (const auto& c : checks)
            if (c.axiom == axiom) return &c;
        return nullptr;
    }
};

/// Checks C0 / C1-antisymmetry / unit / Hermitian / associativity on
/// seeded random samples. Failures are report content, never exceptions.
StarAxiomReport check_star_axioms(const StarProductPtr& star, int sample_count, std::uint64_t seed);

} // namespace starmod
