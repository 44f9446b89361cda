#include "starmod/bundle.hpp"

#include "starmod/error.hpp"

namespace starmod {

ClassicalProjection::ClassicalProjection(ClassicalMatrix matrix) : matrix_(std::move(matrix)), hermitian_(false) {
    if (matrix_.rows() != matrix_.cols())
        throw DimensionMismatchError("classical projection must be square");
    if (matrix_ * matrix_ != matrix_)
        throw PreconditionError("classical projection is not idempotent");
    ClassicalMatrix adj = matrix_.transpose();
    for (int i = 0; i < adj.rows(); ++i)
        for (int j = 0; j < adj.cols(); ++j) adj.set(i, j, adj.at(i, j).conjugate());
    hermitian_ = (adj == matrix_);
}

DeformedProjection DeformedProjection::from_matrix(StarMatrix p) {
    if (p.rows() != p.cols()) throw DimensionMismatchError("deformed projection must be square");
    if (p.star_mul(p) != p)
        throw PreconditionError("deformed projection is not star-idempotent");
    ClassicalProjection classical(p.order_part(0));
    bool hermitian = (p.adjoint() == p);
    return DeformedProjection(std::move(p), std::move(classical), hermitian);
}

DeformedProjection DeformedProjection::direct_sum(const DeformedProjection& a,
                                                  const DeformedProjection& b) {
    return from_matrix(StarMatrix::direct_sum(a.matrix_, b.matrix_));
}

DeformedProjection deform_projection(const ClassicalProjection& p0, StarProductPtr star) {
    StarMatrix p = p0.embed(star);
    const int n = p.rows();

    StarMatrix delta = (p.star_mul(p) - p).scaled(GaussianRational(4));
    StarMatrix s = (StarMatrix::identity(star, n) + delta).star_inv_sqrt();

    GaussianRational half = GaussianRational::of(1, 2);
    StarMatrix half_id = StarMatrix::identity(star, n).scaled(half);
    StarMatrix deformed = half_id + (p - half_id).star_mul(s);
    return DeformedProjection::from_matrix(std::move(deformed));
}

bool module_member(const DeformedProjection& p, const StarMatrix& phi) {
    if (phi.cols() != 1 || phi.rows() != p.size()) return false;
    return p.matrix().star_mul(phi) == phi;
}

bool corner_member(const DeformedProjection& p, const StarMatrix& a) {
    if (a.rows() != p.size() || a.cols() != p.size()) return false;
    return p.matrix().star_mul(a).star_mul(p.matrix()) == a;
}

namespace {

void require_same_owner(const DeformedProjection& p, const StarMatrix& owner, const char* where) {
    if (owner != p.matrix())
        throw PreconditionError(std::string(where) + ": element belongs to a different projection");
}

} // namespace

ModuleElement::ModuleElement(const DeformedProjection& p, StarMatrix column)
    : owner_(p.matrix()), column_(std::move(column)) {
    if (!module_member(p, column_))
        throw PreconditionError("module element: membership P*phi = phi violated");
}

CornerElement::CornerElement(const DeformedProjection& p, StarMatrix matrix)
    : owner_(p.matrix()), matrix_(std::move(matrix)) {
    if (!corner_member(p, matrix_))
        throw PreconditionError("corner element: membership P*A*P = A violated");
}

ModuleElement project_to_module(const DeformedProjection& p, const StarMatrix& v) {
    return ModuleElement(ModuleElement::Unchecked{}, p.matrix(), p.matrix().star_mul(v));
}

CornerElement project_to_corner(const DeformedProjection& p, const StarMatrix& a) {
    return CornerElement(CornerElement::Unchecked{}, p.matrix(),
                         p.matrix().star_mul(a).star_mul(p.matrix()));
}

ModuleElement module_right_act(const DeformedProjection& p, const ModuleElement& phi,
                               const FormalSeries& f) {
    require_same_owner(p, phi.owner(), "module_right_act");
    StarMatrix rhs(phi.column().star(), 1, 1);
    rhs.set(0, 0, f);
    return ModuleElement(ModuleElement::Unchecked{}, p.matrix(), phi.column().star_mul(rhs));
}

CornerElement endo_product(const CornerElement& a, const CornerElement& b,
                           const DeformedProjection& p) {
    require_same_owner(p, a.owner(), "endo_product");
    require_same_owner(p, b.owner(), "endo_product");
    return CornerElement(CornerElement::Unchecked{}, p.matrix(), a.matrix().star_mul(b.matrix()));
}

ModuleElement endo_left_act(const CornerElement& a, const ModuleElement& phi,
                            const DeformedProjection& p) {
    require_same_owner(p, a.owner(), "endo_left_act");
    require_same_owner(p, phi.owner(), "endo_left_act");
    return ModuleElement(ModuleElement::Unchecked{}, p.matrix(), a.matrix().star_mul(phi.column()));
}

CornerElement corner_adjoint(const CornerElement& a, const DeformedProjection& p) {
    require_same_owner(p, a.owner(), "corner_adjoint");
    if (p.hermitian())
        return CornerElement(CornerElement::Unchecked{}, p.matrix(), a.matrix().adjoint());
    return CornerElement(p, a.matrix().adjoint());
}

FormalSeries hermitian_metric(const ModuleElement& phi, const ModuleElement& psi,
                              const DeformedProjection& p) {
    if (!p.hermitian())
        throw UnsupportedOperationError("hermitian_metric: projection is not Hermitian");
    require_same_owner(p, phi.owner(), "hermitian_metric");
    require_same_owner(p, psi.owner(), "hermitian_metric");
    return phi.column().adjoint().star_mul(psi.column()).at(0, 0);
}

StarMatrix module_equivalence(const DeformedProjection& p, const DeformedProjection& p_prime) {
    require_same_star(p.star(), p_prime.star(), "module_equivalence");
    if (p.size() != p_prime.size())
        throw DimensionMismatchError("module_equivalence: sizes differ");
    if (p.classical() != p_prime.classical())
        throw NoEquivalenceError("module_equivalence: classical projections differ");

    StarMatrix id = StarMatrix::identity(p.star(), p.size());
    StarMatrix v = p_prime.matrix().star_mul(p.matrix()) +
                   (id - p_prime.matrix()).star_mul(id - p.matrix());

    if (v.order_part(0) != ClassicalMatrix::identity(p.star()->descriptor(), p.size()))
        throw InconsistencyError("module_equivalence: intertwiner is not 1 + O(lambda)");
    if (v.star_mul(p.matrix()) != p_prime.matrix().star_mul(v))
        throw InconsistencyError("module_equivalence: intertwining identity failed");
    return v;
}

FullnessReport check_fullness(const ClassicalProjection& p0) {
    AlgebraElement tr = AlgebraElement::zero(p0.matrix().descriptor());
    for (int i = 0; i < p0.size(); ++i) tr += p0.matrix().at(i, i);
    if (!tr.is_constant())
        throw IndeterminateError("check_fullness: classical trace is not constant");
    GaussianRational c = tr.constant_part();
    if (!c.is_integer())
        throw IndeterminateError("check_fullness: classical trace is not an integer");
    long rank = c.re().get_num().get_si();
    return FullnessReport{rank > 0, rank};
}

const StarMatrix* CocycleData::find(const std::string& from, const std::string& to) const {
    for (const auto& o : overlaps)
        if (o.from == from && o.to == to) return &o.matrix;
    return nullptr;
}

namespace {

void check_identity_against_unit(const StarMatrix& product, CocycleCheck& check) {
    StarMatrix id = StarMatrix::identity(product.star(), product.rows());
    if (auto d = product.first_difference_order(id)) {
        check.pass = false;
        check.first_failing_order = d;
    }
}

} // namespace

CocycleReport verify_cocycle(const CocycleData& data, const StarProductPtr& star) {
    CocycleReport report;
    for (const auto& o : data.overlaps) {
        require_same_star(o.matrix.star(), star, "verify_cocycle");
        const StarMatrix* back = data.find(o.to, o.from);
        if (!back)
            throw PreconditionError("verify_cocycle: missing reverse overlap for (" + o.from + "," +
                                    o.to + ")");
        CocycleCheck check;
        check.identity = "pair(" + o.from + "," + o.to + ")";
        check_identity_against_unit(o.matrix.star_mul(*back), check);
        report.checks.push_back(std::move(check));
    }
    for (const auto& t : data.triples) {
        const StarMatrix* ab = data.find(t[0], t[1]);
        const StarMatrix* bc = data.find(t[1], t[2]);
        const StarMatrix* ca = data.find(t[2], t[0]);
        if (!ab || !bc || !ca)
            throw PreconditionError("verify_cocycle: triple (" + t[0] + "," + t[1] + "," + t[2] +
                                    ") references missing overlaps");
        CocycleCheck check;
        check.identity = "triple(" + t[0] + "," + t[1] + "," + t[2] + ")";
        check_identity_against_unit(ab->star_mul(*bc).star_mul(*ca), check);
        report.checks.push_back(std::move(check));
    }
    return report;
}

CocycleData solve_two_chart_cocycle(const StarMatrix& phi_ab, const std::string& from,
                                    const std::string& to) {
    StarMatrix phi_ba = phi_ab.star_inverse();
    CocycleData data;
    data.chart_ids = {from, to};
    data.overlaps.push_back({from, to, phi_ab});
    data.overlaps.push_back({to, from, std::move(phi_ba)});
    return data;
}

} // namespace starmod
