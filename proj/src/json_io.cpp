#include "starmod/json_io.hpp"

#include <fstream>

#include "starmod/error.hpp"

namespace starmod {

namespace {

void expect(bool cond, const std::string& what) {
    if (!cond) throw ParseError(what);
}

std::vector<int> int_vector_from_json(const Json& j, const std::string& what) {
    expect(j.is_array(), what + " must be an array");
    std::vector<int> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        expect(v.is_number_integer(), what + " entries must be integers");
        out.push_back(v.get<int>());
    }
    return out;
}

Rational rational_from_json(const Json& j, const std::string& what) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    expect(j.is_string(), what + " must be a rational string");
    return rational_from_string(j.get<std::string>());
}

} // namespace

Json to_json(const GaussianRational& c) { return c.to_string(); }

GaussianRational gaussian_from_json(const Json& j) {
    if (j.is_number_integer()) return GaussianRational(j.get<long>());
    expect(j.is_string(), "coefficient must be a string");
    return GaussianRational::from_string(j.get<std::string>());
}

Json to_json(const AlgebraDescriptor& desc) {
    Json j;
    if (desc.kind() == AlgebraKind::torus) {
        j["kind"] = "torus";
        j["theta"] = rational_to_string(desc.theta());
    } else {
        j["kind"] = "plane";
        j["dim"] = desc.dim();
        Json rows = Json::array();
        for (int a = 0; a < desc.dim(); ++a) {
            Json row = Json::array();
            for (int b = 0; b < desc.dim(); ++b) row.push_back(rational_to_string(desc.poisson(a, b)));
            rows.push_back(std::move(row));
        }
        j["poisson"] = std::move(rows);
    }
    return j;
}

DescriptorPtr descriptor_from_json(const Json& j) {
    expect(j.is_object() && j.contains("kind"), "algebra descriptor needs a 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "torus") {
        expect(j.contains("theta"), "torus descriptor needs 'theta'");
        return AlgebraDescriptor::torus(rational_from_json(j.at("theta"), "theta"));
    }
    if (kind == "plane") {
        expect(j.contains("dim"), "plane descriptor needs 'dim'");
        int dim = j.at("dim").get<int>();
        if (j.contains("poisson")) {
            const Json& rows = j.at("poisson");
            expect(rows.is_array() && static_cast<int>(rows.size()) == dim,
                   "poisson matrix must have 'dim' rows");
            std::vector<std::vector<Rational>> pi;
            for (const auto& row : rows) {
                expect(row.is_array() && static_cast<int>(row.size()) == dim,
                       "poisson matrix must be dim x dim");
                std::vector<Rational> r;
                for (const auto& v : row) r.push_back(rational_from_json(v, "poisson entry"));
                pi.push_back(std::move(r));
            }
            return AlgebraDescriptor::plane(dim, std::move(pi));
        }
        return AlgebraDescriptor::plane_standard(dim);
    }
    throw ParseError("unknown algebra kind '" + kind + "'");
}

Json to_json(const AlgebraElement& e) {
    const char* key = e.descriptor()->kind() == AlgebraKind::torus ? "mode" : "exp";
    Json out = Json::array();
    for (const auto& [k, c] : e.terms()) {
        Json term;
        term[key] = k;
        term["coeff"] = c.to_string();
        out.push_back(std::move(term));
    }
    return out;
}

AlgebraElement element_from_json(const Json& j, const DescriptorPtr& desc) {
    expect(j.is_array(), "algebra element must be an array of terms");
    const char* key = desc->kind() == AlgebraKind::torus ? "mode" : "exp";
    AlgebraElement out = AlgebraElement::zero(desc);
    for (const auto& term : j) {
        expect(term.is_object() && term.contains(key) && term.contains("coeff"),
               std::string("element term needs '") + key + "' and 'coeff'");
        std::vector<int> k = int_vector_from_json(term.at(key), key);
        expect(static_cast<int>(k.size()) == desc->dim(), "term key length must equal dim");
        out.add_term(k, gaussian_from_json(term.at("coeff")));
    }
    return out;
}

Json to_json(const FormalSeries& f) {
    Json j;
    j["K"] = f.truncation_order();
    Json coeffs = Json::array();
    for (int r = 0; r <= f.truncation_order(); ++r) coeffs.push_back(to_json(f.coeff(r)));
    j["coeffs"] = std::move(coeffs);
    return j;
}

FormalSeries series_from_json(const Json& j, const DescriptorPtr& desc) {
    expect(j.is_object() && j.contains("K") && j.contains("coeffs"),
           "series needs 'K' and 'coeffs'");
    int K = j.at("K").get<int>();
    const Json& coeffs = j.at("coeffs");
    expect(coeffs.is_array() && static_cast<int>(coeffs.size()) == K + 1,
           "series must carry exactly K+1 coefficients");
    FormalSeries out(desc, K);
    for (int r = 0; r <= K; ++r) out.set_coeff(r, element_from_json(coeffs.at(r), desc));
    return out;
}

Json to_json(const ScalarSeries& s) {
    Json out = Json::array();
    for (int r = 0; r <= s.truncation_order(); ++r) out.push_back(s.coeff(r).to_string());
    return out;
}

Json to_json(const StarMatrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(to_json(m.at(i, c)));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

StarMatrix star_matrix_from_json(const Json& j, const StarProductPtr& star) {
    expect(j.is_object() && j.contains("rows") && j.contains("cols") && j.contains("entries"),
           "matrix needs 'rows', 'cols', 'entries'");
    int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
    const Json& entries = j.at("entries");
    expect(entries.is_array() && static_cast<int>(entries.size()) == rows,
           "matrix entry grid must have 'rows' rows");
    StarMatrix out(star, rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& row = entries.at(i);
        expect(row.is_array() && static_cast<int>(row.size()) == cols,
               "matrix entry grid must have 'cols' columns");
        for (int c = 0; c < cols; ++c) out.set(i, c, series_from_json(row.at(c), star->descriptor()));
    }
    return out;
}

Json to_json(const EquivalenceTransform& t) {
    Json ops = Json::array();
    for (int r = 1; r <= t.truncation_order(); ++r) {
        if (t.op(r).is_zero()) continue;
        Json op;
        op["order"] = r;
        Json terms = Json::array();
        for (const auto& [alpha, coeff] : t.op(r).terms()) {
            Json term;
            term["coeff"] = to_json(coeff);
            term["alpha"] = alpha;
            terms.push_back(std::move(term));
        }
        op["terms"] = std::move(terms);
        ops.push_back(std::move(op));
    }
    Json j;
    j["ops"] = std::move(ops);
    return j;
}

EquivalenceTransform transform_from_json(const Json& j, const DescriptorPtr& desc, int K) {
    expect(j.is_object() && j.contains("ops"), "transform needs 'ops'");
    EquivalenceTransform out(desc, K);
    for (const auto& op : j.at("ops")) {
        expect(op.is_object() && op.contains("order") && op.contains("terms"),
               "transform op needs 'order' and 'terms'");
        int order = op.at("order").get<int>();
        expect(order >= 1 && order <= K, "transform op order must lie in 1..K");
        DifferentialOperator d(desc);
        for (const auto& term : op.at("terms")) {
            expect(term.is_object() && term.contains("coeff") && term.contains("alpha"),
                   "operator term needs 'coeff' and 'alpha'");
            d.add_term(int_vector_from_json(term.at("alpha"), "alpha"),
                       element_from_json(term.at("coeff"), desc));
        }
        out.set_op(order, std::move(d));
    }
    return out;
}

Json to_json(const Automorphism& a) {
    Json j;
    j["lattice"] = {{a.lattice()[0][0], a.lattice()[0][1]}, {a.lattice()[1][0], a.lattice()[1][1]}};
    j["quarter_shift"] = {a.quarter_shift()[0], a.quarter_shift()[1]};
    return j;
}

Automorphism automorphism_from_json(const Json& j) {
    expect(j.is_object(), "automorphism must be an object");
    std::array<std::array<int, 2>, 2> lattice{{{1, 0}, {0, 1}}};
    std::array<int, 2> shift{0, 0};
    if (j.contains("lattice")) {
        const Json& rows = j.at("lattice");
        expect(rows.is_array() && rows.size() == 2, "automorphism lattice must be 2x2");
        for (int r = 0; r < 2; ++r) {
            auto row = int_vector_from_json(rows.at(r), "lattice row");
            expect(row.size() == 2, "automorphism lattice must be 2x2");
            lattice[r] = {row[0], row[1]};
        }
    }
    if (j.contains("quarter_shift")) {
        auto s = int_vector_from_json(j.at("quarter_shift"), "quarter_shift");
        expect(s.size() == 2, "quarter_shift must have two entries");
        shift = {s[0], s[1]};
    }
    return Automorphism(lattice, shift);
}

Json projection_to_json(const ClassicalProjection& p) {
    Json inner;
    inner["N"] = p.size();
    Json rows = Json::array();
    for (int i = 0; i < p.size(); ++i) {
        Json row = Json::array();
        for (int c = 0; c < p.size(); ++c) row.push_back(to_json(p.matrix().at(i, c)));
        rows.push_back(std::move(row));
    }
    inner["entries"] = std::move(rows);
    Json j;
    j["projection"] = std::move(inner);
    j["hermitian"] = p.hermitian();
    return j;
}

ClassicalProjection projection_from_json(const Json& j, const DescriptorPtr& desc) {
    expect(j.is_object() && j.contains("projection"), "projection file needs a 'projection' object");
    const Json& inner = j.at("projection");
    expect(inner.contains("N") && inner.contains("entries"), "projection needs 'N' and 'entries'");
    int n = inner.at("N").get<int>();
    const Json& entries = inner.at("entries");
    expect(entries.is_array() && static_cast<int>(entries.size()) == n,
           "projection entries must be N rows");
    ClassicalMatrix m(desc, n, n);
    for (int i = 0; i < n; ++i) {
        const Json& row = entries.at(i);
        expect(row.is_array() && static_cast<int>(row.size()) == n,
               "projection entries must be N x N");
        for (int c = 0; c < n; ++c) m.set(i, c, element_from_json(row.at(c), desc));
    }
    ClassicalProjection p(std::move(m));
    if (j.contains("hermitian")) {
        expect(j.at("hermitian").get<bool>() == p.hermitian(),
               "projection 'hermitian' flag contradicts the matrix");
    }
    return p;
}

Json to_json(const CocycleData& c) {
    Json j;
    j["charts"] = c.chart_ids;
    Json overlaps = Json::array();
    for (const auto& o : c.overlaps) {
        Json entry;
        entry["pair"] = {o.from, o.to};
        entry["matrix"] = to_json(o.matrix);
        overlaps.push_back(std::move(entry));
    }
    j["overlaps"] = std::move(overlaps);
    Json triples = Json::array();
    for (const auto& t : c.triples) triples.push_back({t[0], t[1], t[2]});
    j["triples"] = std::move(triples);
    return j;
}

CocycleData cocycle_from_json(const Json& j, const StarProductPtr& star) {
    expect(j.is_object() && j.contains("charts") && j.contains("overlaps"),
           "cocycle needs 'charts' and 'overlaps'");
    CocycleData out;
    for (const auto& c : j.at("charts")) out.chart_ids.push_back(c.get<std::string>());
    for (const auto& o : j.at("overlaps")) {
        expect(o.is_object() && o.contains("pair") && o.contains("matrix"),
               "overlap needs 'pair' and 'matrix'");
        const Json& pair = o.at("pair");
        expect(pair.is_array() && pair.size() == 2, "overlap pair must have two chart ids");
        out.overlaps.push_back({pair.at(0).get<std::string>(), pair.at(1).get<std::string>(),
                                star_matrix_from_json(o.at("matrix"), star)});
    }
    if (j.contains("triples")) {
        for (const auto& t : j.at("triples")) {
            expect(t.is_array() && t.size() == 3, "triple must have three chart ids");
            out.triples.push_back({t.at(0).get<std::string>(), t.at(1).get<std::string>(),
                                   t.at(2).get<std::string>()});
        }
    }
    return out;
}

Json to_json(const StarAxiomReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json entry;
        entry["axiom"] = c.axiom;
        entry["pass"] = c.pass;
        if (!c.pass) {
            entry["first_failing_order"] = *c.first_failing_order;
            Json witness = Json::array();
            for (const auto& w : c.witness) witness.push_back(to_json(w));
            entry["witness"] = std::move(witness);
        }
        checks.push_back(std::move(entry));
    }
    Json j;
    j["convention"] = r.convention;
    j["checks"] = std::move(checks);
    j["pass"] = r.all_pass();
    return j;
}

Json to_json(const CocycleReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json entry;
        entry["identity"] = c.identity;
        entry["pass"] = c.pass;
        if (!c.pass) entry["first_failing_order"] = *c.first_failing_order;
        checks.push_back(std::move(entry));
    }
    Json j;
    j["checks"] = std::move(checks);
    j["pass"] = r.all_pass();
    return j;
}

Json to_json(const FullnessReport& r) {
    Json j;
    j["full"] = r.full;
    j["rank"] = r.rank;
    return j;
}

Json to_json(const IndexInvarianceReport& r) {
    Json j;
    j["equal"] = r.equal;
    j["index"] = to_json(r.reference);
    j["conjugated_index"] = to_json(r.conjugated);
    return j;
}

Json to_json(const CohomologyModel& m) {
    Json j;
    j["d1"] = m.d1();
    j["d2"] = m.d2();
    Json omega = Json::array();
    for (const auto& w : m.omega()) omega.push_back(rational_to_string(w));
    j["omega"] = std::move(omega);
    Json actions = Json::array();
    for (const auto& a : m.actions()) {
        Json entry;
        entry["name"] = a.name;
        entry["A1"] = a.a1;
        entry["A2"] = a.a2;
        actions.push_back(std::move(entry));
    }
    j["actions"] = std::move(actions);
    j["symplectic"] = m.symplectic();
    return j;
}

namespace {

IntMatrix int_matrix_from_json(const Json& j, const std::string& what) {
    expect(j.is_array(), what + " must be an array of rows");
    IntMatrix out;
    for (const auto& row : j) {
        expect(row.is_array(), what + " rows must be arrays");
        IntVector r;
        for (const auto& v : row) {
            expect(v.is_number_integer(), what + " entries must be integers");
            r.push_back(v.get<long>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

CohomologyModel model_from_json(const Json& j) {
    expect(j.is_object() && j.contains("d1") && j.contains("d2") && j.contains("omega"),
           "model needs 'd1', 'd2', 'omega'");
    int d1 = j.at("d1").get<int>(), d2 = j.at("d2").get<int>();
    std::vector<Rational> omega;
    for (const auto& w : j.at("omega")) omega.push_back(rational_from_json(w, "omega entry"));
    std::vector<DiffeoAction> actions;
    if (j.contains("actions")) {
        for (const auto& a : j.at("actions")) {
            expect(a.is_object() && a.contains("name") && a.contains("A1") && a.contains("A2"),
                   "action needs 'name', 'A1', 'A2'");
            actions.push_back(DiffeoAction{a.at("name").get<std::string>(),
                                           int_matrix_from_json(a.at("A1"), "A1"),
                                           int_matrix_from_json(a.at("A2"), "A2")});
        }
    }
    bool symplectic = j.value("symplectic", true);
    return CohomologyModel(d1, d2, symplectic, std::move(omega), std::move(actions));
}

Json to_json(const CharacteristicClass& c) {
    Json leading = Json::array();
    for (const auto& v : c.leading) leading.push_back(v.to_string());
    Json orders = Json::array();
    for (const auto& layer : c.orders) {
        Json row = Json::array();
        for (const auto& v : layer) row.push_back(v.to_string());
        orders.push_back(std::move(row));
    }
    Json j;
    j["leading"] = std::move(leading);
    j["orders"] = std::move(orders);
    return j;
}

CharacteristicClass class_from_json(const Json& j) {
    expect(j.is_object() && j.contains("leading") && j.contains("orders"),
           "class needs 'leading' and 'orders'");
    if (j.contains("order0_units"))
        expect(j.at("order0_units").get<std::string>() == "2pii",
               "order-0 class components must be given in 2 pi i units");
    CharacteristicClass c;
    for (const auto& v : j.at("leading")) c.leading.push_back(gaussian_from_json(v));
    for (const auto& layer : j.at("orders")) {
        expect(layer.is_array() && layer.size() == c.leading.size(),
               "class order vectors must match the leading dimension");
        ClassVector row;
        for (const auto& v : layer) row.push_back(gaussian_from_json(v));
        c.orders.push_back(std::move(row));
    }
    expect(!c.orders.empty(), "class needs at least the order-0 vector");
    return c;
}

Json to_json(const MoritaReport& r) {
    Json j;
    j["equivalent"] = r.equivalent;
    if (r.witness) {
        Json w;
        w["action"] = r.witness->action;
        w["class"] = r.witness->shift;
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json to_json(const OutEquivElement& e) {
    Json v0 = Json::array();
    for (const auto& v : e.v0()) v0.push_back(v.to_string());
    Json higher = Json::array();
    for (const auto& layer : e.higher()) {
        Json row = Json::array();
        for (const auto& v : layer) row.push_back(v.to_string());
        higher.push_back(std::move(row));
    }
    Json j;
    j["v0"] = std::move(v0);
    j["higher"] = std::move(higher);
    return j;
}

OutEquivElement outequiv_from_json(const Json& j) {
    expect(j.is_object() && j.contains("v0"), "outer-equivalence element needs 'v0'");
    ClassVector v0;
    for (const auto& v : j.at("v0")) v0.push_back(gaussian_from_json(v));
    std::vector<ClassVector> higher;
    if (j.contains("higher")) {
        for (const auto& layer : j.at("higher")) {
            ClassVector row;
            for (const auto& v : layer) row.push_back(gaussian_from_json(v));
            higher.push_back(std::move(row));
        }
    }
    return OutEquivElement(std::move(v0), std::move(higher));
}

Json to_json(const KernelDescription& d) {
    Json j;
    j["d1"] = d.d1;
    j["K"] = d.truncation_order;
    j["trivial"] = d.trivial;
    Json order0;
    order0["type"] = "quotient-torus";
    order0["dim"] = d.torus_factor_dim;
    order0["lattice"] = "Z^d1 in 2 pi i units";
    j["order0"] = std::move(order0);
    Json free;
    free["layers"] = d.free_layer_count;
    free["dim_per_layer"] = d.free_layer_dim;
    j["free"] = std::move(free);
    j["generators"] = Json{{"torsion_directions", d.torus_factor_dim},
                           {"free", d.free_layer_count * d.free_layer_dim}};
    j["summary"] = d.summary;
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("JSON parse error in " + path + ": " + e.what());
    }
    return j;
}

} // namespace starmod
