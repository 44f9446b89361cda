#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "starmod/rational.hpp"

namespace starmod {

using IntMatrix = std::vector<std::vector<long>>;
using IntVector = std::vector<long>;
using ClassVector = std::vector<GaussianRational>;

long int_matrix_det(const IntMatrix& m);
IntVector int_matrix_apply(const IntMatrix& m, const IntVector& v);
ClassVector int_matrix_apply(const IntMatrix& m, const ClassVector& v);

/// Named cohomology action of a (symplectic) diffeomorphism: A1 on degree
/// one, A2 on degree two, both lattice automorphisms (det = +-1).
struct DiffeoAction {
    std::string name;
    IntMatrix a1;
    IntMatrix a2;
};

/// User-supplied cohomology data: dimensions of H^1 and H^2 with integral
/// lattices Z^d in the chosen bases, the symplectic class in the H^2 basis,
/// and the finite list of available diffeomorphism actions.
class CohomologyModel {
  public:
    CohomologyModel(int d1, int d2, bool symplectic, std::vector<Rational> omega,
                    std::vector<DiffeoAction> actions);

    int d1() const { return d1_; }
    int d2() const { return d2_; }
    bool symplectic() const { return symplectic_; }
    const std::vector<Rational>& omega() const { return omega_; }
    const std::vector<DiffeoAction>& actions() const { return actions_; }
    const DiffeoAction* find_action(const std::string& name) const;
    /// First action whose matrices equal the given pair, if any.
    const DiffeoAction* find_action_by_matrices(const IntMatrix& a1, const IntMatrix& a2) const;

  private:
    int d1_, d2_;
    bool symplectic_;
    std::vector<Rational> omega_;
    std::vector<DiffeoAction> actions_;
};

/// Characteristic class of a symplectic star product in the model's H^2
/// basis: leading holds the lambda^{-1} vector [omega]/i, orders[r] the
/// lambda^r vectors. Order-0 components are stored in units of 2 pi i, so the
/// integrality criterion is plain lattice membership.
struct CharacteristicClass {
    ClassVector leading;
    std::vector<ClassVector> orders; // size K+1

    int truncation_order() const { return static_cast<int>(orders.size()) - 1; }
    int dim() const { return static_cast<int>(leading.size()); }

    /// Class of the model's own star product: leading = omega / i, zero tail.
    static CharacteristicClass of_model(const CohomologyModel& model, int K);

    bool operator==(const CharacteristicClass& o) const {
        return leading == o.leading && orders == o.orders;
    }
};

struct MoritaWitness {
    std::string action;
    IntVector shift; // integer class in 2 pi i units
};

struct MoritaReport {
    bool equivalent = false;
    std::optional<MoritaWitness> witness;
};

/// Searches the model's action list for psi with psi* c' - c integral at
/// order 0 and exact equality elsewhere; first hit in list order wins.
MoritaReport morita_check(const CharacteristicClass& c, const CharacteristicClass& c_prime,
                          const CohomologyModel& model);

/// Element of the outer self-equivalence group: order-0 vector in units of
/// 2 pi i taken mod Z^{d1} (real parts reduced to [0,1)), free vectors above.
class OutEquivElement {
  public:
    OutEquivElement(ClassVector v0, std::vector<ClassVector> higher);

    static OutEquivElement zero(int d1, int K);

    const ClassVector& v0() const { return v0_; }
    const std::vector<ClassVector>& higher() const { return higher_; }
    int d1() const { return static_cast<int>(v0_.size()); }
    int truncation_order() const { return static_cast<int>(higher_.size()); }

    OutEquivElement normal_form() const;
    OutEquivElement inverse() const;

    bool operator==(const OutEquivElement& o) const {
        return v0_ == o.v0_ && higher_ == o.higher_;
    }

  private:
    ClassVector v0_;
    std::vector<ClassVector> higher_; // orders 1..K
};

/// Abelian composition (symplectic mode only): coordinatewise addition
/// followed by normal form.
OutEquivElement outequiv_compose(const OutEquivElement& a, const OutEquivElement& b,
                                 const CohomologyModel& model);

/// Shape of ker cl_* for a symplectic model: a d1-dimensional quotient torus
/// at order 0 (complex coefficients mod the 2 pi i integral lattice) plus K
/// free d1-dimensional layers.
struct KernelDescription {
    int d1 = 0;
    int truncation_order = 0;
    int torus_factor_dim = 0;
    int free_layer_count = 0;
    int free_layer_dim = 0;
    bool trivial = false;
    std::string summary;
};

KernelDescription kernel_description(const CohomologyModel& model, int K);

/// Composes chained witnesses: (psi1, d1) . (psi2, d2) =
/// (psi1 . psi2, A2(psi2) d1 + d2). The result is re-verified against
/// (c, c'') and an InconsistencyError is raised if the convention does not
/// reproduce a valid witness for the chain.
MoritaWitness compose_witnesses(const MoritaWitness& w1, const MoritaWitness& w2,
                                const CohomologyModel& model, const CharacteristicClass& c,
                                const CharacteristicClass& c_prime,
                                const CharacteristicClass& c_double_prime);

} // namespace starmod
