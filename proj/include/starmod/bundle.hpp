#pragma once

#include <tuple>

#include "starmod/matrix.hpp"

namespace starmod {

/// Idempotent of the undeformed matrix algebra, P0 * P0 = P0 pointwise.
class ClassicalProjection {
  public:
    /// Verifies idempotency and records whether P0 is Hermitian.
    explicit ClassicalProjection(ClassicalMatrix matrix);

    const ClassicalMatrix& matrix() const { return matrix_; }
    int size() const { return matrix_.rows(); }
    bool hermitian() const { return hermitian_; }

    StarMatrix embed(StarProductPtr star) const { return StarMatrix::embed(matrix_, std::move(star)); }

    bool operator==(const ClassicalProjection& o) const { return matrix_ == o.matrix_; }
    bool operator!=(const ClassicalProjection& o) const { return !(*this == o); }

  private:
    ClassicalMatrix matrix_;
    bool hermitian_;
};

/// Star-idempotent with prescribed classical limit: P * P = P mod
/// lambda^{K+1} and order-0 part P0.
class DeformedProjection {
  public:
    /// Wraps an existing star-idempotent; verifies the invariants.
    static DeformedProjection from_matrix(StarMatrix p);

    const StarMatrix& matrix() const { return matrix_; }
    const ClassicalProjection& classical() const { return classical_; }
    const StarProductPtr& star() const { return matrix_.star(); }
    int size() const { return matrix_.rows(); }
    bool hermitian() const { return hermitian_; }

    static DeformedProjection direct_sum(const DeformedProjection& a, const DeformedProjection& b);

  private:
    DeformedProjection(StarMatrix p, ClassicalProjection classical, bool hermitian)
        : matrix_(std::move(p)), classical_(std::move(classical)), hermitian_(hermitian) {}
    StarMatrix matrix_;
    ClassicalProjection classical_;
    bool hermitian_;
};

/// P = 1/2 + (P0 - 1/2) * (1 + 4 (P0*P0 - P0))^{-1/2} with every product the
/// star product. Fixes P0 itself whenever P0 is already star-idempotent.
DeformedProjection deform_projection(const ClassicalProjection& p0, StarProductPtr star);

class CornerElement;

/// P * phi = phi for a column vector phi.
bool module_member(const DeformedProjection& p, const StarMatrix& phi);
/// P * A * P = A for a square matrix A (corner algebra membership).
bool corner_member(const DeformedProjection& p, const StarMatrix& a);

/// Column of the module P * A^N. Membership is verified here, on
/// construction; the module operations provably preserve it and never
/// re-check.
class ModuleElement {
  public:
    ModuleElement(const DeformedProjection& p, StarMatrix column);

    const StarMatrix& column() const { return column_; }
    const StarMatrix& owner() const { return owner_; }

    bool operator==(const ModuleElement& o) const { return column_ == o.column_; }
    bool operator!=(const ModuleElement& o) const { return !(*this == o); }

  private:
    struct Unchecked {};
    ModuleElement(Unchecked, StarMatrix owner, StarMatrix column)
        : owner_(std::move(owner)), column_(std::move(column)) {}
    friend ModuleElement project_to_module(const DeformedProjection&, const StarMatrix&);
    friend ModuleElement module_right_act(const DeformedProjection&, const ModuleElement&,
                                          const FormalSeries&);
    friend ModuleElement endo_left_act(const CornerElement&, const ModuleElement&,
                                       const DeformedProjection&);
    StarMatrix owner_; // the projection this column belongs to
    StarMatrix column_;
};

/// Element of the corner algebra P * M_N * P, verified on construction.
class CornerElement {
  public:
    CornerElement(const DeformedProjection& p, StarMatrix matrix);

    const StarMatrix& matrix() const { return matrix_; }
    const StarMatrix& owner() const { return owner_; }

    bool operator==(const CornerElement& o) const { return matrix_ == o.matrix_; }
    bool operator!=(const CornerElement& o) const { return !(*this == o); }

  private:
    struct Unchecked {};
    CornerElement(Unchecked, StarMatrix owner, StarMatrix matrix)
        : owner_(std::move(owner)), matrix_(std::move(matrix)) {}
    friend CornerElement project_to_corner(const DeformedProjection&, const StarMatrix&);
    friend CornerElement endo_product(const CornerElement&, const CornerElement&,
                                      const DeformedProjection&);
    friend CornerElement corner_adjoint(const CornerElement&, const DeformedProjection&);
    StarMatrix owner_;
    StarMatrix matrix_;
};

/// phi = P * v is a module element by star-idempotency.
ModuleElement project_to_module(const DeformedProjection& p, const StarMatrix& v);
/// P * A * P lands in the corner by star-idempotency.
CornerElement project_to_corner(const DeformedProjection& p, const StarMatrix& a);

/// Right action phi . f (componentwise star).
ModuleElement module_right_act(const DeformedProjection& p, const ModuleElement& phi,
                               const FormalSeries& f);
/// Corner algebra product; the unit of the corner is P itself.
CornerElement endo_product(const CornerElement& a, const CornerElement& b,
                           const DeformedProjection& p);
/// Left action A .' phi of the corner algebra on the module.
ModuleElement endo_left_act(const CornerElement& a, const ModuleElement& phi,
                            const DeformedProjection& p);
/// A^*; stays in the corner because P is Hermitian.
CornerElement corner_adjoint(const CornerElement& a, const DeformedProjection& p);

/// h(phi, psi) = sum_i conj(phi_i) * psi_i; requires a Hermitian projection.
FormalSeries hermitian_metric(const ModuleElement& phi, const ModuleElement& psi,
                              const DeformedProjection& p);

/// Intertwiner V = P' * P + (1 - P') * (1 - P) between two deformations of
/// the same classical projection: V * P = P' * V and V = 1 + O(lambda).
StarMatrix module_equivalence(const DeformedProjection& p, const DeformedProjection& p_prime);

struct FullnessReport {
    bool full = false;
    long rank = 0;
};

/// Full iff the classical trace is a constant positive integer (the rank).
FullnessReport check_fullness(const ClassicalProjection& p0);

/// Deformed transition-matrix data over a chart cover.
struct CocycleData {
    std::vector<std::string> chart_ids;
    struct Overlap {
        std::string from, to;
        StarMatrix matrix;
    };
    std::vector<Overlap> overlaps;
    std::vector<std::array<std::string, 3>> triples;

    const StarMatrix* find(const std::string& from, const std::string& to) const;
};

struct CocycleCheck {
    std::string identity; // e.g. "pair(a,b)" or "triple(a,b,c)"
    bool pass = true;
    std::optional<int> first_failing_order;
};

struct CocycleReport {
    std::vector<CocycleCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Pair identities Phi_ab * Phi_ba = 1 and triple identities
/// Phi_ab * Phi_bc * Phi_ca = 1, with the first failing lambda order.
CocycleReport verify_cocycle(const CocycleData& data, const StarProductPtr& star);

/// Two charts: completes Phi_ab with its star inverse.
CocycleData solve_two_chart_cocycle(const StarMatrix& phi_ab, const std::string& from = "a",
                                    const std::string& to = "b");

} // namespace starmod
