#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "starmod/json_io.hpp"
#include "starmod/sampling.hpp"
#include "test_util.hpp"

using namespace starmod;
using namespace starmod::testutil;

namespace {
const DescriptorPtr torus1 = AlgebraDescriptor::torus(Rational(1));
} // namespace

TEST_CASE("descriptor json") {
    Json jt = to_json(*torus1);
    CHECK(jt.at("kind") == "torus");
    CHECK(jt.at("theta") == "1");
    CHECK(*descriptor_from_json(jt) == *torus1);

    auto plane = AlgebraDescriptor::plane_standard(4);
    CHECK(*descriptor_from_json(to_json(*plane)) == *plane);

    CHECK(*descriptor_from_json(Json::parse(R"({"kind":"torus","theta":"1/2"})")) ==
          *AlgebraDescriptor::torus(Rational(1, 2)));
    CHECK_THROWS_AS(descriptor_from_json(Json::parse(R"({"kind":"sphere"})")), ParseError);
}

TEST_CASE("element and series round trips") {
    Xoshiro256 rng(7);
    for (const auto& desc : {torus1, AlgebraDescriptor::plane_standard(2)}) {
        for (int t = 0; t < 10; ++t) {
            AlgebraElement e = sample_element(rng, desc);
            CHECK(element_from_json(to_json(e), desc) == e);
            FormalSeries s = sample_series(rng, desc, 4);
            CHECK(series_from_json(to_json(s), desc) == s);
        }
    }

    // wire shape from the interface contract
    Json j = Json::parse(R"([{"mode":[1,0],"coeff":"1/2"},{"mode":[0,-1],"coeff":"-i"}])");
    AlgebraElement e = element_from_json(j, torus1);
    CHECK(e == mode(torus1, 1, 0, gr(1, 2)) + mode(torus1, 0, -1, gi(-1)));
    CHECK_THROWS_AS(element_from_json(Json::parse(R"([{"mode":[1],"coeff":"1"}])"), torus1),
                    ParseError);
}

TEST_CASE("matrix round trip") {
    auto star = StarProduct::moyal(torus1, 3);
    Xoshiro256 rng(13);
    StarMatrix m = sample_star_matrix(rng, star, 2, 3);
    Json j = to_json(m);
    CHECK(j.at("rows") == 2);
    CHECK(j.at("cols") == 3);
    CHECK(star_matrix_from_json(j, star) == m);
}

TEST_CASE("transform round trip") {
    EquivalenceTransform t(torus1, 3);
    DifferentialOperator d(torus1);
    d.add_term({1, 0}, mode(torus1, 0, 1, gi(1)));
    d.add_term({0, 2}, AlgebraElement::one(torus1));
    t.set_op(1, d);
    t.set_op(2, DifferentialOperator::partial(torus1, 2));
    CHECK(transform_from_json(to_json(t), torus1, 3) == t);
    CHECK_THROWS_AS(transform_from_json(Json::parse(R"({"ops":[{"order":9,"terms":[]}]})"),
                                        torus1, 3),
                    ParseError);
}

TEST_CASE("projection json") {
    ClassicalProjection p = corpus_two_angle(torus1);
    Json j = projection_to_json(p);
    CHECK(j.at("hermitian") == true);
    CHECK(projection_from_json(j, torus1) == p);

    Json wrong_flag = j;
    wrong_flag["hermitian"] = false;
    CHECK_THROWS_AS(projection_from_json(wrong_flag, torus1), ParseError);
}

TEST_CASE("cocycle json") {
    auto star = StarProduct::moyal(torus1, 4);
    CocycleData data = solve_two_chart_cocycle(conj_nilpotent(star, 2));
    Json j = to_json(data);
    CHECK(j.at("charts") == Json::parse(R"(["a","b"])"));
    CocycleData back = cocycle_from_json(j, star);
    CHECK(back.overlaps.size() == 2);
    CHECK(*back.find("a", "b") == *data.find("a", "b"));
    CHECK(verify_cocycle(back, star).all_pass());
}

TEST_CASE("model and class json from the documented shapes") {
    CohomologyModel m = model_from_json(Json::parse(
        R"({"d1":2,"d2":1,"omega":["1"],"actions":[{"name":"id","A1":[[1,0],[0,1]],"A2":[[1]]}],"symplectic":true})"));
    CHECK(m.d1() == 2);
    CHECK(m.d2() == 1);
    CHECK(m.symplectic());

    CharacteristicClass c = class_from_json(Json::parse(R"({"leading":["-i"],"orders":[["3"],["0"]]})"));
    CHECK(c.leading[0] == gi(-1));
    CHECK(c.orders[0][0] == gr(3));
    CHECK(c.truncation_order() == 1);

    CharacteristicClass base = CharacteristicClass::of_model(m, 1);
    MoritaReport r = morita_check(base, c, m);
    Json rj = to_json(r);
    CHECK(rj.at("equivalent") == true);
    CHECK(rj.at("witness").at("action") == "id");
    CHECK(rj.at("witness").at("class") == Json::parse("[3]"));

    CHECK(model_from_json(to_json(m)).d2() == 1);
    CHECK(class_from_json(to_json(c)) == c);
}

TEST_CASE("outequiv and kernel json") {
    OutEquivElement e({gr(5, 2), gr(-1, 3)}, {{gr(1), gr(0)}});
    CHECK(outequiv_from_json(to_json(e)) == e);

    CohomologyModel m(2, 1, true, {Rational(1)}, {});
    Json k = to_json(kernel_description(m, 3));
    CHECK(k.at("order0").at("dim") == 2);
    CHECK(k.at("free").at("layers") == 3);
    CHECK(k.at("generators").at("free") == 6);
}

TEST_CASE("axiom report json") {
    StarAxiomReport report = check_star_axioms(StarProduct::truncated_demo(torus1, 4), 10, 3);
    Json j = to_json(report);
    CHECK(j.at("convention") == "weyl");
    CHECK(j.at("pass") == false);
    bool found = false;
    for (const auto& entry : j.at("checks")) {
        if (entry.at("axiom") == "associativity") {
            found = true;
            CHECK(entry.at("pass") == false);
            CHECK(entry.at("first_failing_order") == 2);
            CHECK(entry.contains("witness"));
        }
    }
    CHECK(found);
}
