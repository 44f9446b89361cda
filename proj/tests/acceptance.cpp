// Acceptance gate: one all-or-nothing check per criterion, every comparison
// bit-exact. Prints one line per criterion and exits nonzero on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "starmod/sampling.hpp"
#include "starmod/scenario.hpp"
#include "starmod/trace.hpp"
#include "test_util.hpp"

using namespace starmod;
using namespace starmod::testutil;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
    double budget_seconds = 0.0; // 0 = no stated budget
};

bool check(bool cond, std::string& note, const std::string& msg) {
    if (!cond && note.empty()) note = msg;
    return cond;
}

// 1. axiom suite on Moyal plane (dim 2 and 4) and the torus Weyl product,
//    plus the deliberately broken product failing associativity at order 2
bool criterion_axioms(std::string& note) {
    bool ok = true;
    const std::uint64_t seed = 20240915;
    for (const auto& desc :
         {AlgebraDescriptor::plane_standard(2), AlgebraDescriptor::plane_standard(4),
          AlgebraDescriptor::torus(Rational(1))}) {
        StarAxiomReport r = check_star_axioms(StarProduct::moyal(desc, 4), 50, seed);
        ok = check(r.all_pass(), note, "a built-in product failed an axiom") && ok;
    }
    StarAxiomReport broken =
        check_star_axioms(StarProduct::truncated_demo(AlgebraDescriptor::torus(Rational(1)), 4), 50, seed);
    const AxiomCheck* assoc = broken.find("associativity");
    ok = check(assoc && !assoc->pass, note, "broken product did not fail associativity") && ok;
    ok = check(assoc && assoc->first_failing_order && *assoc->first_failing_order == 2, note,
               "broken product failed at the wrong order") &&
         ok;
    ok = check(broken.find("C1-antisymmetry")->pass, note,
               "broken product should keep the C1 antisymmetrization") &&
         ok;
    return ok;
}

// 2. projection deformation over the corpus at theta in {0, 1, 1/2}, K = 4
bool criterion_deformation(std::string& note) {
    bool ok = true;
    for (const Rational& theta : {Rational(0), Rational(1), Rational(1, 2)}) {
        auto desc = AlgebraDescriptor::torus(theta);
        auto star = StarProduct::moyal(desc, 4);
        for (const auto& entry : projection_corpus(desc)) {
            DeformedProjection d = deform_projection(entry.projection, star);
            ok = check(d.matrix().star_mul(d.matrix()) == d.matrix(), note,
                       entry.name + ": P*P != P") &&
                 ok;
            ok = check(d.matrix().order_part(0) == entry.projection.matrix(), note,
                       entry.name + ": classical limit changed") &&
                 ok;
            ok = check(d.hermitian(), note, entry.name + ": hermiticity lost") && ok;
            if (theta == 0)
                ok = check(d.matrix() == entry.projection.embed(star), note,
                           entry.name + ": theta = 0 must not deform") &&
                     ok;
        }
    }
    return ok;
}

// 3. five bimodule laws and three metric laws on >= 20 tuples per projection
bool criterion_bimodule(std::string& note) {
    auto desc = AlgebraDescriptor::torus(Rational(1));
    auto star = StarProduct::moyal(desc, 4);
    Xoshiro256 rng(7771);
    bool ok = true;
    for (const auto& entry : projection_corpus(desc)) {
        DeformedProjection d = deform_projection(entry.projection, star);
        const int n = d.size();
        FormalSeries one = FormalSeries::one(desc, 4);
        CornerElement unit = project_to_corner(d, d.matrix());
        for (int s = 0; s < 20; ++s) {
            ModuleElement phi = project_to_module(d, sample_star_matrix_classical(rng, star, n, 1));
            ModuleElement psi = project_to_module(d, sample_star_matrix_classical(rng, star, n, 1));
            CornerElement a = project_to_corner(d, sample_star_matrix_classical(rng, star, n, n));
            CornerElement b = project_to_corner(d, sample_star_matrix_classical(rng, star, n, n));
            FormalSeries f = sample_series(rng, desc, 4);
            FormalSeries g = sample_series(rng, desc, 4);

            ok = check(module_right_act(d, module_right_act(d, phi, f), g) ==
                           module_right_act(d, phi, star->multiply(f, g)),
                       note, entry.name + ": right associativity") &&
                 ok;
            ok = check(module_right_act(d, phi, one) == phi, note, entry.name + ": right unit") && ok;
            ok = check(endo_left_act(endo_product(a, b, d), phi, d) ==
                           endo_left_act(a, endo_left_act(b, phi, d), d),
                       note, entry.name + ": left associativity") &&
                 ok;
            ok = check(endo_left_act(unit, phi, d) == phi, note, entry.name + ": left unit") && ok;
            ok = check(endo_left_act(a, module_right_act(d, phi, f), d) ==
                           module_right_act(d, endo_left_act(a, phi, d), f),
                       note, entry.name + ": action compatibility") &&
                 ok;

            ok = check(hermitian_metric(phi, module_right_act(d, psi, f), d) ==
                           star->multiply(hermitian_metric(phi, psi, d), f),
                       note, entry.name + ": metric right linearity") &&
                 ok;
            ok = check(hermitian_metric(phi, psi, d) ==
                           hermitian_metric(psi, phi, d).conjugate(),
                       note, entry.name + ": metric symmetry") &&
                 ok;
            ok = check(hermitian_metric(endo_left_act(a, phi, d), psi, d) ==
                           hermitian_metric(phi, endo_left_act(corner_adjoint(a, d), psi, d), d),
                       note, entry.name + ": metric adjoint law") &&
                 ok;
            if (!ok) return ok;
        }
    }
    return ok;
}

// 4. uniqueness up to equivalence: direct vs conjugated deformations
bool criterion_uniqueness(std::string& note) {
    auto desc = AlgebraDescriptor::torus(Rational(1));
    auto star = StarProduct::moyal(desc, 4);
    Xoshiro256 rng(8882);
    bool ok = true;
    for (const auto& entry : projection_corpus(desc)) {
        DeformedProjection d = deform_projection(entry.projection, star);
        std::vector<StarMatrix> conjugators = {conj_nilpotent(star, d.size())};
        if (entry.name == "constant")
            conjugators.push_back(conj_monomial_diag(star));
        else
            conjugators.push_back(conj_scalar_monomial(star, d.size()));
        for (const auto& u : conjugators) {
            StarMatrix p_prime = u.star_mul(d.matrix()).star_mul(u.star_inverse());
            DeformedProjection d_prime = DeformedProjection::from_matrix(p_prime);
            ok = check(d_prime.classical() == d.classical(), note,
                       entry.name + ": conjugator moved the classical part") &&
                 ok;
            StarMatrix v = module_equivalence(d, d_prime);
            ok = check(v.order_part(0) == ClassicalMatrix::identity(desc, d.size()), note,
                       entry.name + ": V != 1 + O(lambda)") &&
                 ok;
            ok = check(v.star_mul(d.matrix()) == d_prime.matrix().star_mul(v), note,
                       entry.name + ": intertwining failed") &&
                 ok;
            for (int t = 0; t < 3; ++t) {
                ModuleElement phi =
                    project_to_module(d, sample_star_matrix_classical(rng, star, d.size(), 1));
                FormalSeries f = sample_series(rng, desc, 4);
                StarMatrix lhs = v.star_mul(module_right_act(d, phi, f).column());
                ModuleElement t_phi(d_prime, v.star_mul(phi.column()));
                ok = check(lhs == module_right_act(d_prime, t_phi, f).column(), note,
                           entry.name + ": T is not a module morphism") &&
                     ok;
            }
            if (!ok) return ok;
        }
    }
    return ok;
}

// 5. trace cyclicity, index order-0 = rank, conjugation invariance, additivity
bool criterion_trace_index(std::string& note) {
    auto desc = AlgebraDescriptor::torus(Rational(1));
    auto star = StarProduct::moyal(desc, 4);
    Xoshiro256 rng(9993);
    bool ok = true;
    for (int t = 0; t < 50; ++t) {
        StarMatrix a = sample_star_matrix(rng, star, 2, 2);
        StarMatrix b = sample_star_matrix(rng, star, 2, 2);
        ok = check(trace_functional(a.star_mul(b).trace()) ==
                       trace_functional(b.star_mul(a).trace()),
                   note, "trace cyclicity failed") &&
             ok;
        if (!ok) return ok;
    }

    std::vector<DeformedProjection> deformed;
    for (const auto& entry : projection_corpus(desc)) {
        DeformedProjection d = deform_projection(entry.projection, star);
        ok = check(index_of(d).coeff(0) == GaussianRational(entry.rank), note,
                   entry.name + ": index order 0 is not the rank") &&
             ok;
        deformed.push_back(std::move(d));
    }

    const DeformedProjection& two_angle = deformed[2];
    for (const StarMatrix& u : {conj_nilpotent(star, 2), conj_monomial_diag(star),
                                conj_scalar_monomial(star, 2)}) {
        ok = check(index_invariance_check(two_angle, u).equal, note,
                   "index changed under conjugation") &&
             ok;
    }

    DeformedProjection sum = DeformedProjection::direct_sum(two_angle, deformed[0]);
    ok = check(index_of(sum) == index_of(two_angle) + index_of(deformed[0]), note,
               "index not additive over direct sums") &&
         ok;
    return ok;
}

// 6. two-chart cocycle solver across seeds, perturbations located exactly
bool criterion_cocycle(std::string& note) {
    auto desc = AlgebraDescriptor::torus(Rational(1));
    auto star = StarProduct::moyal(desc, 4);
    bool ok = true;
    for (std::uint64_t seed : {11u, 22u, 33u}) {
        Xoshiro256 rng(seed);
        StarMatrix phi = sample_star_matrix(rng, star, 2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                FormalSeries e = phi.at(i, j);
                e.set_coeff(0, i == j ? mode(desc, static_cast<int>(rng.bounded(3)) - 1,
                                             static_cast<int>(rng.bounded(3)) - 1)
                                      : AlgebraElement::zero(desc));
                phi.set(i, j, std::move(e));
            }
        CocycleData data = solve_two_chart_cocycle(phi);
        ok = check(verify_cocycle(data, star).all_pass(), note, "solver output failed") && ok;

        for (int order : {1, 2, 3}) {
            CocycleData broken = data;
            broken.overlaps[1].matrix =
                broken.overlaps[1].matrix +
                StarMatrix::scalar_unit(star, 2, 1, 1, GaussianRational::of(1, 2), order);
            CocycleReport report = verify_cocycle(broken, star);
            std::optional<int> lowest;
            for (const auto& c : report.checks)
                if (!c.pass && (!lowest || *c.first_failing_order < *lowest))
                    lowest = c.first_failing_order;
            ok = check(lowest && *lowest == order, note,
                       "perturbation detected at the wrong order") &&
                 ok;
        }
        if (!ok) return ok;
    }
    return ok;
}

// 7. Morita lattice criterion and outer-equivalence group axioms
bool criterion_morita(std::string& note) {
    bool ok = true;
    CohomologyModel model(2, 1, true, {Rational(1)}, {});
    CharacteristicClass base = CharacteristicClass::of_model(model, 4);
    struct Case {
        Rational diff;
        bool equivalent;
    };
    for (const Case& c : {Case{Rational(-2), true}, Case{Rational(-1, 2), false},
                          Case{Rational(0), true}, Case{Rational(1, 2), false},
                          Case{Rational(3), true}}) {
        CharacteristicClass other = base;
        other.orders[0][0] = GaussianRational(c.diff);
        MoritaReport r = morita_check(base, other, model);
        ok = check(r.equivalent == c.equivalent, note, "lattice membership decided wrongly") && ok;
        if (c.equivalent)
            ok = check(r.witness->shift == IntVector{c.diff.get_num().get_si()}, note,
                       "wrong witness class") &&
                 ok;
    }

    IntMatrix swap2{{0, 1}, {1, 0}};
    CohomologyModel swap_model(2, 2, true, {Rational(1), Rational(2)},
                               {DiffeoAction{"swap", swap2, swap2}});
    CharacteristicClass c = CharacteristicClass::of_model(swap_model, 4);
    CharacteristicClass swapped = c;
    std::swap(swapped.leading[0], swapped.leading[1]);
    MoritaReport r = morita_check(c, swapped, swap_model);
    ok = check(r.equivalent && r.witness->action == "swap", note,
               "swap example must accept via the swap witness only") &&
         ok;
    CohomologyModel no_swap(2, 2, true, {Rational(1), Rational(2)}, {});
    ok = check(!morita_check(c, swapped, no_swap).equivalent, note,
               "swap example accepted without the swap action") &&
         ok;

    Xoshiro256 rng(777);
    auto coeff = [&rng]() {
        return GaussianRational(gr(static_cast<long>(rng.bounded(9)) - 4,
                                   1 + static_cast<long>(rng.bounded(4))).re(),
                                gr(static_cast<long>(rng.bounded(9)) - 4,
                                   1 + static_cast<long>(rng.bounded(3))).re());
    };
    for (int d1 : {1, 2, 3}) {
        CohomologyModel m(d1, 1, true, {Rational(0)}, {});
        for (int K : {0, 4}) {
            OutEquivElement id = OutEquivElement::zero(d1, K);
            for (int t = 0; t < 8; ++t) {
                ClassVector v0(d1);
                std::vector<ClassVector> higher(K, ClassVector(d1));
                for (auto& v : v0) v = coeff();
                for (auto& layer : higher)
                    for (auto& v : layer) v = coeff();
                OutEquivElement a = OutEquivElement(v0, higher).normal_form();
                for (auto& v : v0) v = coeff();
                for (auto& layer : higher)
                    for (auto& v : layer) v = coeff();
                OutEquivElement b = OutEquivElement(v0, higher).normal_form();
                for (auto& v : v0) v = coeff();
                for (auto& layer : higher)
                    for (auto& v : layer) v = coeff();
                OutEquivElement cc = OutEquivElement(v0, higher).normal_form();

                ok = check(outequiv_compose(outequiv_compose(a, b, m), cc, m) ==
                               outequiv_compose(a, outequiv_compose(b, cc, m), m),
                           note, "outer-equivalence associativity failed") &&
                     ok;
                ok = check(outequiv_compose(a, id, m) == a, note,
                           "outer-equivalence identity failed") &&
                     ok;
                ok = check(outequiv_compose(a, a.inverse(), m) == id, note,
                           "outer-equivalence inverses failed") &&
                     ok;
            }
        }
    }
    OutEquivElement half({GaussianRational(Rational(1, 2)), GaussianRational(0)},
                         std::vector<ClassVector>{});
    CohomologyModel m2(2, 1, true, {Rational(0)}, {});
    ok = check(outequiv_compose(half, half, m2) == OutEquivElement::zero(2, 0), note,
               "2-torsion example failed") &&
         ok;
    return ok;
}

// 8. byte-identical JSON reports across two runs of the scenario suite
bool criterion_determinism(std::string& note) {
    const std::string path = std::string(STARMOD_SCENARIO_DIR) + "/full_suite.json";
    ScenarioReport first = run_scenario_file(path);
    ScenarioReport second = run_scenario_file(path);
    std::string a = first.to_json().dump(2);
    std::string b = second.to_json().dump(2);
    bool ok = check(a == b, note, "reports differ between runs");
    ok = check(first.exit_status() == 0, note, "scenario suite did not pass") && ok;
    return ok;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"star-product axiom suite (plane dim 2/4, torus, broken demo)", criterion_axioms, 30.0},
        {"projection deformation corpus (theta 0, 1, 1/2; K = 4)", criterion_deformation, 60.0},
        {"bimodule and metric laws (20 tuples per projection)", criterion_bimodule, 0.0},
        {"uniqueness up to equivalence (conjugated deformations)", criterion_uniqueness, 0.0},
        {"trace cyclicity and index facts", criterion_trace_index, 0.0},
        {"two-chart cocycles and perturbation detection", criterion_cocycle, 0.0},
        {"morita criterion and outer-equivalence group", criterion_morita, 0.0},
        {"deterministic scenario reports", criterion_determinism, 0.0},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string note;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criteria[i].run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criteria[i].budget_seconds > 0.0 && seconds > criteria[i].budget_seconds) {
            ok = false;
            if (note.empty())
                note = "exceeded runtime budget of " + std::to_string(criteria[i].budget_seconds) + " s";
        }
        std::printf("[%s] criterion %zu: %s (%.1f s)%s%s\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name.c_str(), seconds, note.empty() ? "" : " -- ",
                    note.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
