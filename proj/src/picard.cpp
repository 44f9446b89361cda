#include "starmod/picard.hpp"

#include <sstream>

#include "starmod/error.hpp"

namespace starmod {

long int_matrix_det(const IntMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    for (const auto& row : m)
        if (row.size() != n) throw DimensionMismatchError("integer determinant: matrix not square");
    if (n == 1) return m[0][0];
    long acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        IntMatrix minor;
        minor.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            IntVector row;
            row.reserve(n - 1);
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        long term = m[0][j] * int_matrix_det(minor);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

IntVector int_matrix_apply(const IntMatrix& m, const IntVector& v) {
    IntVector out(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != v.size()) throw DimensionMismatchError("integer matrix apply: shapes");
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    }
    return out;
}

ClassVector int_matrix_apply(const IntMatrix& m, const ClassVector& v) {
    ClassVector out(m.size(), GaussianRational(0));
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != v.size()) throw DimensionMismatchError("matrix apply: shapes");
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += v[j] * GaussianRational(m[i][j]);
    }
    return out;
}

namespace {

IntMatrix int_identity(int d) {
    IntMatrix m(d, IntVector(d, 0));
    for (int i = 0; i < d; ++i) m[i][i] = 1;
    return m;
}

IntMatrix int_matrix_mul(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size(), p = b.empty() ? 0 : b[0].size();
    IntMatrix out(n, IntVector(p, 0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != b.size()) throw DimensionMismatchError("integer matrix multiply: shapes");
        for (std::size_t k = 0; k < p; ++k)
            for (std::size_t j = 0; j < b.size(); ++j) out[i][k] += a[i][j] * b[j][k];
    }
    return out;
}

void validate_action(const DiffeoAction& a, int d1, int d2) {
    if (static_cast<int>(a.a1.size()) != d1 || static_cast<int>(a.a2.size()) != d2)
        throw DimensionMismatchError("action '" + a.name + "': matrix sizes must match d1/d2");
    for (const auto& row : a.a1)
        if (static_cast<int>(row.size()) != d1)
            throw DimensionMismatchError("action '" + a.name + "': A1 must be d1 x d1");
    for (const auto& row : a.a2)
        if (static_cast<int>(row.size()) != d2)
            throw DimensionMismatchError("action '" + a.name + "': A2 must be d2 x d2");
    long det1 = int_matrix_det(a.a1), det2 = int_matrix_det(a.a2);
    if ((det1 != 1 && det1 != -1) || (det2 != 1 && det2 != -1))
        throw PreconditionError("action '" + a.name + "' is not a lattice automorphism (det != +-1)");
}

} // namespace

CohomologyModel::CohomologyModel(int d1, int d2, bool symplectic, std::vector<Rational> omega,
                                 std::vector<DiffeoAction> actions)
    : d1_(d1), d2_(d2), symplectic_(symplectic), omega_(std::move(omega)),
      actions_(std::move(actions)) {
    if (d1_ < 0 || d2_ < 0) throw PreconditionError("cohomology dimensions must be non-negative");
    if (static_cast<int>(omega_.size()) != d2_)
        throw DimensionMismatchError("omega must be a d2-vector");
    for (const auto& a : actions_) validate_action(a, d1_, d2_);
    // the identity action is always part of the model
    if (!find_action_by_matrices(int_identity(d1_), int_identity(d2_)))
        actions_.push_back(DiffeoAction{"id", int_identity(d1_), int_identity(d2_)});
}

const DiffeoAction* CohomologyModel::find_action(const std::string& name) const {
    for (const auto& a : actions_)
        if (a.name == name) return &a;
    return nullptr;
}

const DiffeoAction* CohomologyModel::find_action_by_matrices(const IntMatrix& a1,
                                                             const IntMatrix& a2) const {
    for (const auto& a : actions_)
        if (a.a1 == a1 && a.a2 == a2) return &a;
    return nullptr;
}

CharacteristicClass CharacteristicClass::of_model(const CohomologyModel& model, int K) {
    CharacteristicClass c;
    c.leading.reserve(model.d2());
    for (const auto& w : model.omega())
        c.leading.push_back(GaussianRational(Rational(0), Rational(-w))); // omega / i = -i omega
    c.orders.assign(K + 1, ClassVector(model.d2(), GaussianRational(0)));
    return c;
}

namespace {

/// Integer vector extraction: every entry must be real with denominator 1.
std::optional<IntVector> as_integer_vector(const ClassVector& v) {
    IntVector out;
    out.reserve(v.size());
    for (const auto& c : v) {
        if (!c.is_integer()) return std::nullopt;
        if (!c.re().get_num().fits_slong_p()) throw Error("integer class entry out of range");
        out.push_back(c.re().get_num().get_si());
    }
    return out;
}

std::optional<IntVector> witness_shift(const CharacteristicClass& c,
                                       const CharacteristicClass& c_prime,
                                       const DiffeoAction& action) {
    // leading terms must match exactly under the action
    if (int_matrix_apply(action.a2, c_prime.leading) != c.leading) return std::nullopt;
    for (int r = 1; r <= c.truncation_order(); ++r)
        if (int_matrix_apply(action.a2, c_prime.orders[r]) != c.orders[r]) return std::nullopt;
    ClassVector diff = int_matrix_apply(action.a2, c_prime.orders[0]);
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= c.orders[0][j];
    return as_integer_vector(diff);
}

} // namespace

MoritaReport morita_check(const CharacteristicClass& c, const CharacteristicClass& c_prime,
                          const CohomologyModel& model) {
    if (c.dim() != model.d2() || c_prime.dim() != model.d2())
        throw DimensionMismatchError("morita_check: class dimension differs from model d2");
    if (c.truncation_order() != c_prime.truncation_order())
        throw DimensionMismatchError("morita_check: classes have different truncation orders");
    for (const auto& action : model.actions()) {
        if (auto shift = witness_shift(c, c_prime, action))
            return MoritaReport{true, MoritaWitness{action.name, std::move(*shift)}};
    }
    return MoritaReport{false, std::nullopt};
}

OutEquivElement::OutEquivElement(ClassVector v0, std::vector<ClassVector> higher)
    : v0_(std::move(v0)), higher_(std::move(higher)) {
    for (const auto& layer : higher_)
        if (layer.size() != v0_.size())
            throw DimensionMismatchError("outer-equivalence element: layer dimension mismatch");
}

OutEquivElement OutEquivElement::zero(int d1, int K) {
    return OutEquivElement(ClassVector(d1, GaussianRational(0)),
                           std::vector<ClassVector>(K, ClassVector(d1, GaussianRational(0))));
}

OutEquivElement OutEquivElement::normal_form() const {
    OutEquivElement out = *this;
    for (auto& c : out.v0_) {
        // reduce the 2 pi i proportional (real) part mod Z to [0,1)
        Rational re = c.re();
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), re.get_num().get_mpz_t(), re.get_den().get_mpz_t());
        c = GaussianRational(re - Rational(fl), c.im());
    }
    return out;
}

OutEquivElement OutEquivElement::inverse() const {
    OutEquivElement out = *this;
    for (auto& c : out.v0_) c = -c;
    for (auto& layer : out.higher_)
        for (auto& c : layer) c = -c;
    return out.normal_form();
}

OutEquivElement outequiv_compose(const OutEquivElement& a, const OutEquivElement& b,
                                 const CohomologyModel& model) {
    if (!model.symplectic())
        throw UnsupportedOperationError(
            "outequiv_compose: composition is only defined in symplectic mode");
    if (a.d1() != model.d1() || b.d1() != model.d1())
        throw DimensionMismatchError("outequiv_compose: dimension differs from model d1");
    if (a.truncation_order() != b.truncation_order())
        throw DimensionMismatchError("outequiv_compose: truncation orders differ");
    ClassVector v0 = a.v0();
    for (std::size_t j = 0; j < v0.size(); ++j) v0[j] += b.v0()[j];
    std::vector<ClassVector> higher = a.higher();
    for (std::size_t r = 0; r < higher.size(); ++r)
        for (std::size_t j = 0; j < higher[r].size(); ++j) higher[r][j] += b.higher()[r][j];
    return OutEquivElement(std::move(v0), std::move(higher)).normal_form();
}

KernelDescription kernel_description(const CohomologyModel& model, int K) {
    if (!model.symplectic())
        throw UnsupportedOperationError("kernel_description: symplectic mode only");
    if (K < 0) throw PreconditionError("kernel_description: truncation order must be >= 0");
    KernelDescription d;
    d.d1 = model.d1();
    d.truncation_order = K;
    d.torus_factor_dim = model.d1();
    d.free_layer_count = K;
    d.free_layer_dim = model.d1();
    d.trivial = model.d1() == 0;
    std::ostringstream os;
    if (d.trivial) {
        os << "trivial kernel";
    } else {
        os << "(C/Z)^" << d.d1 << " quotient torus at order 0 (2 pi i units)";
        if (K > 0) os << " + " << K << " free layer(s) of dimension " << d.d1;
        os << "; " << d.d1 << " torsion-direction generator(s), " << K * d.d1
           << " free generator(s)";
    }
    d.summary = os.str();
    return d;
}

MoritaWitness compose_witnesses(const MoritaWitness& w1, const MoritaWitness& w2,
                                const CohomologyModel& model, const CharacteristicClass& c,
                                const CharacteristicClass& c_prime,
                                const CharacteristicClass& c_double_prime) {
    const DiffeoAction* psi1 = model.find_action(w1.action);
    const DiffeoAction* psi2 = model.find_action(w2.action);
    if (!psi1 || !psi2)
        throw PreconditionError("compose_witnesses: witness action not present in the model");
    auto shift1 = witness_shift(c, c_prime, *psi1);
    auto shift2 = witness_shift(c_prime, c_double_prime, *psi2);
    if (!shift1 || *shift1 != w1.shift || !shift2 || *shift2 != w2.shift)
        throw PreconditionError("compose_witnesses: an input witness fails its own Morita condition");

    IntMatrix a1 = int_matrix_mul(psi1->a1, psi2->a1);
    IntMatrix a2 = int_matrix_mul(psi1->a2, psi2->a2);
    const DiffeoAction* composed = model.find_action_by_matrices(a1, a2);
    if (!composed)
        throw PreconditionError("compose_witnesses: composed action is absent from the model list");

    IntVector shift = int_matrix_apply(psi2->a2, w1.shift);
    if (shift.size() != w2.shift.size())
        throw DimensionMismatchError("compose_witnesses: shift dimensions differ");
    for (std::size_t j = 0; j < shift.size(); ++j) shift[j] += w2.shift[j];

    auto expected = witness_shift(c, c_double_prime, *composed);
    if (!expected || *expected != shift)
        throw InconsistencyError(
            "compose_witnesses: composed witness fails the Morita condition for the chained pair");
    return MoritaWitness{composed->name, std::move(shift)};
}

} // namespace starmod
