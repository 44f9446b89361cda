#include "starmod/scenario.hpp"

#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include "starmod/error.hpp"
#include "starmod/rng.hpp"
#include "starmod/sampling.hpp"

namespace starmod {

namespace {

const std::set<std::string> kTaskKinds = {
    "check-star", "deform-projection", "bimodule-suite", "metric-suite", "cocycle",
    "index",      "index-invariance",  "morita-check",   "outequiv",     "kernel"};

const std::set<std::string> kObjectKinds = {"projection", "matrix",   "model",
                                            "class",      "transform", "cocycle"};

struct NamedObject {
    std::string kind;
    Json value;
};

struct ScenarioContext {
    DescriptorPtr desc;
    int K = 4;
    std::uint64_t seed = 0;
    StarProductPtr star;
    std::map<std::string, NamedObject> objects;

    const Json& resolve(const Json& param, const std::string& kind, const std::string& what) const {
        if (!param.is_string()) return param;
        auto it = objects.find(param.get<std::string>());
        if (it == objects.end())
            throw ParseError(what + ": unknown object '" + param.get<std::string>() + "'");
        if (it->second.kind != kind)
            throw ParseError(what + ": object '" + param.get<std::string>() + "' has kind '" +
                             it->second.kind + "', expected '" + kind + "'");
        return it->second.value;
    }
};

/// pass/fail against the task's "expect" block; tasks with no expectations
/// and no intrinsic verdict report "computed".
std::string verdict(const Json& task, const Json& actuals, Json& details) {
    if (!task.contains("expect")) return "computed";
    const Json& expect = task.at("expect");
    Json mismatch = Json::object();
    bool ok = true;
    for (auto it = expect.begin(); it != expect.end(); ++it) {
        Json actual = actuals.contains(it.key()) ? actuals.at(it.key()) : Json(nullptr);
        if (actual != it.value()) {
            mismatch[it.key()] = Json{{"expected", it.value()}, {"actual", actual}};
            ok = false;
        }
    }
    if (!ok) details["expect_mismatch"] = std::move(mismatch);
    return ok ? "pass" : "fail";
}

DeformedProjection load_deformed(const ScenarioContext& ctx, const Json& task) {
    if (!task.contains("projection")) throw ParseError("task needs a 'projection' parameter");
    const Json& pj = ctx.resolve(task.at("projection"), "projection", "projection parameter");
    ClassicalProjection p0 = projection_from_json(pj, ctx.desc);
    return deform_projection(p0, ctx.star);
}

TaskResult run_check_star(const ScenarioContext& ctx, const Json& task, std::uint64_t task_seed) {
    TaskResult out;
    StarProductPtr star = ctx.star;
    std::string product = task.value("product", "moyal");
    if (product == "truncated-demo")
        star = StarProduct::truncated_demo(ctx.desc, ctx.K);
    else if (product != "moyal")
        throw ParseError("check-star: unknown product '" + product + "'");
    if (task.contains("transform"))
        star = twist_star(
            transform_from_json(ctx.resolve(task.at("transform"), "transform", "check-star"),
                                ctx.desc, ctx.K),
            star);
    if (task.contains("automorphism"))
        star = twist_by_automorphism(automorphism_from_json(task.at("automorphism")), star);

    int samples = task.value("samples", 50);
    StarAxiomReport report = check_star_axioms(star, samples, task_seed);
    out.details = to_json(report);

    if (task.contains("expect")) {
        const Json& expect = task.at("expect");
        bool ok = true;
        if (expect.contains("pass")) ok = (report.all_pass() == expect.at("pass").get<bool>());
        if (ok && expect.contains("axiom")) {
            const AxiomCheck* check = report.find(expect.at("axiom").get<std::string>());
            ok = check && !check->pass;
            if (ok && expect.contains("first_failing_order"))
                ok = check->first_failing_order &&
                     *check->first_failing_order == expect.at("first_failing_order").get<int>();
        }
        out.status = ok ? "pass" : "fail";
    } else {
        out.status = report.all_pass() ? "pass" : "fail";
    }
    return out;
}

TaskResult run_deform_projection(const ScenarioContext& ctx, const Json& task) {
    TaskResult out;
    const Json& pj = ctx.resolve(task.at("projection"), "projection", "deform-projection");
    ClassicalProjection p0 = projection_from_json(pj, ctx.desc);
    DeformedProjection d = deform_projection(p0, ctx.star);

    bool idempotent = d.matrix().star_mul(d.matrix()) == d.matrix();
    bool classical_limit = d.matrix().order_part(0) == p0.matrix();
    bool hermitian_ok = !p0.hermitian() || d.hermitian();
    Json checks;
    checks["star_idempotent"] = idempotent;
    checks["classical_limit"] = classical_limit;
    checks["hermitian_preserved"] = hermitian_ok;
    out.details["checks"] = checks;
    out.details["hermitian"] = d.hermitian();
    if (task.value("emit", false)) out.details["deformed"] = to_json(d.matrix());
    out.status = (idempotent && classical_limit && hermitian_ok) ? "pass" : "fail";
    return out;
}

TaskResult run_bimodule_suite(const ScenarioContext& ctx, const Json& task, std::uint64_t task_seed) {
    TaskResult out;
    DeformedProjection d = load_deformed(ctx, task);
    int samples = task.value("samples", 20);
    Xoshiro256 rng(task_seed);

    const int n = d.size();
    bool right_assoc = true, right_unit = true, left_assoc = true, left_unit = true, compat = true;
    FormalSeries one = FormalSeries::one(ctx.desc, ctx.K);
    CornerElement unit = project_to_corner(d, d.matrix());
    for (int s = 0; s < samples; ++s) {
        ModuleElement phi = project_to_module(d, sample_star_matrix_classical(rng, ctx.star, n, 1));
        CornerElement a = project_to_corner(d, sample_star_matrix_classical(rng, ctx.star, n, n));
        CornerElement b = project_to_corner(d, sample_star_matrix_classical(rng, ctx.star, n, n));
        FormalSeries f = sample_series(rng, ctx.desc, ctx.K);
        FormalSeries g = sample_series(rng, ctx.desc, ctx.K);

        right_assoc = right_assoc && module_right_act(d, module_right_act(d, phi, f), g) ==
                                         module_right_act(d, phi, ctx.star->multiply(f, g));
        right_unit = right_unit && module_right_act(d, phi, one) == phi;
        left_assoc = left_assoc && endo_left_act(endo_product(a, b, d), phi, d) ==
                                       endo_left_act(a, endo_left_act(b, phi, d), d);
        left_unit = left_unit && endo_left_act(unit, phi, d) == phi;
        compat = compat && endo_left_act(a, module_right_act(d, phi, f), d) ==
                               module_right_act(d, endo_left_act(a, phi, d), f);
    }
    Json laws;
    laws["right_action_associative"] = right_assoc;
    laws["right_unit"] = right_unit;
    laws["left_action_associative"] = left_assoc;
    laws["left_unit"] = left_unit;
    laws["actions_compatible"] = compat;
    out.details["laws"] = laws;
    out.details["samples"] = samples;
    out.status = (right_assoc && right_unit && left_assoc && left_unit && compat) ? "pass" : "fail";
    return out;
}

TaskResult run_metric_suite(const ScenarioContext& ctx, const Json& task, std::uint64_t task_seed) {
    TaskResult out;
    DeformedProjection d = load_deformed(ctx, task);
    int samples = task.value("samples", 20);
    Xoshiro256 rng(task_seed);

    const int n = d.size();
    bool linearity = true, symmetry = true, adjointness = true;
    for (int s = 0; s < samples; ++s) {
        ModuleElement phi = project_to_module(d, sample_star_matrix_classical(rng, ctx.star, n, 1));
        ModuleElement psi = project_to_module(d, sample_star_matrix_classical(rng, ctx.star, n, 1));
        CornerElement a = project_to_corner(d, sample_star_matrix_classical(rng, ctx.star, n, n));
        FormalSeries f = sample_series(rng, ctx.desc, ctx.K);

        linearity = linearity && hermitian_metric(phi, module_right_act(d, psi, f), d) ==
                                     ctx.star->multiply(hermitian_metric(phi, psi, d), f);
        symmetry = symmetry &&
                   hermitian_metric(phi, psi, d) == hermitian_metric(psi, phi, d).conjugate();
        adjointness = adjointness && hermitian_metric(endo_left_act(a, phi, d), psi, d) ==
                                         hermitian_metric(phi, endo_left_act(corner_adjoint(a, d), psi, d), d);
    }
    Json laws;
    laws["right_linearity"] = linearity;
    laws["conjugate_symmetry"] = symmetry;
    laws["adjoint_compatibility"] = adjointness;
    out.details["laws"] = laws;
    out.details["samples"] = samples;
    out.status = (linearity && symmetry && adjointness) ? "pass" : "fail";
    return out;
}

TaskResult run_cocycle(const ScenarioContext& ctx, const Json& task) {
    TaskResult out;
    CocycleData data;
    if (task.contains("solve_from")) {
        StarMatrix phi =
            star_matrix_from_json(ctx.resolve(task.at("solve_from"), "matrix", "cocycle"), ctx.star);
        data = solve_two_chart_cocycle(phi);
    } else if (task.contains("cocycle")) {
        data = cocycle_from_json(ctx.resolve(task.at("cocycle"), "cocycle", "cocycle"), ctx.star);
    } else {
        throw ParseError("cocycle task needs 'cocycle' or 'solve_from'");
    }
    CocycleReport report = verify_cocycle(data, ctx.star);
    out.details = to_json(report);

    if (task.contains("expect")) {
        const Json& expect = task.at("expect");
        bool ok = true;
        if (expect.contains("pass")) ok = (report.all_pass() == expect.at("pass").get<bool>());
        if (ok && expect.contains("first_failing_order")) {
            std::optional<int> lowest;
            for (const auto& c : report.checks)
                if (!c.pass && (!lowest || *c.first_failing_order < *lowest))
                    lowest = c.first_failing_order;
            ok = lowest && *lowest == expect.at("first_failing_order").get<int>();
        }
        out.status = ok ? "pass" : "fail";
    } else {
        out.status = report.all_pass() ? "pass" : "fail";
    }
    return out;
}

TaskResult run_index(const ScenarioContext& ctx, const Json& task) {
    TaskResult out;
    DeformedProjection d = load_deformed(ctx, task);
    ScalarSeries idx = index_of(d);
    out.details["index"] = to_json(idx);
    out.details["normalization"] = "integral(1) = 1";
    Json actual;
    actual["order0"] = idx.coeff(0).to_string();
    out.status = verdict(task, actual, out.details);
    return out;
}

TaskResult run_index_invariance(const ScenarioContext& ctx, const Json& task) {
    TaskResult out;
    DeformedProjection d = load_deformed(ctx, task);
    if (!task.contains("conjugator")) throw ParseError("index-invariance needs a 'conjugator'");
    StarMatrix u = star_matrix_from_json(
        ctx.resolve(task.at("conjugator"), "matrix", "index-invariance"), ctx.star);
    IndexInvarianceReport report = index_invariance_check(d, u);
    out.details = to_json(report);
    out.status = report.equal ? "pass" : "fail";
    return out;
}

TaskResult run_morita_check(const ScenarioContext& ctx, const Json& task) {
    TaskResult out;
    CohomologyModel model = model_from_json(ctx.resolve(task.at("model"), "model", "morita-check"));
    CharacteristicClass a = class_from_json(ctx.resolve(task.at("classA"), "class", "morita-check"));
    CharacteristicClass b = class_from_json(ctx.resolve(task.at("classB"), "class", "morita-check"));
    MoritaReport report = morita_check(a, b, model);
    out.details = to_json(report);
    Json actual;
    actual["equivalent"] = report.equivalent;
    if (report.witness) actual["witness_action"] = report.witness->action;
    out.status = verdict(task, actual, out.details);
    return out;
}

TaskResult run_outequiv(const ScenarioContext& ctx, const Json& task) {
    TaskResult out;
    CohomologyModel model = model_from_json(ctx.resolve(task.at("model"), "model", "outequiv"));
    std::string op = task.value("op", "compose");
    OutEquivElement result = OutEquivElement::zero(model.d1(), 0);
    if (op == "normal-form") {
        result = outequiv_from_json(task.at("element")).normal_form();
    } else if (op == "compose") {
        const Json& elems = task.at("elements");
        if (!elems.is_array() || elems.size() < 2)
            throw ParseError("outequiv compose needs at least two elements");
        result = outequiv_from_json(elems.at(0)).normal_form();
        for (std::size_t t = 1; t < elems.size(); ++t)
            result = outequiv_compose(result, outequiv_from_json(elems.at(t)), model);
    } else {
        throw ParseError("outequiv: unknown op '" + op + "'");
    }
    out.details["result"] = to_json(result);
    Json actual;
    actual["result"] = to_json(result);
    out.status = verdict(task, actual, out.details);
    return out;
}

TaskResult run_kernel(const ScenarioContext& ctx, const Json& task) {
    TaskResult out;
    CohomologyModel model = model_from_json(ctx.resolve(task.at("model"), "model", "kernel"));
    int K = task.value("K", ctx.K);
    out.details = to_json(kernel_description(model, K));
    out.status = "computed";
    return out;
}

TaskResult dispatch_task(const ScenarioContext& ctx, const Json& task, std::uint64_t task_seed) {
    const std::string kind = task.at("kind").get<std::string>();
    if (kind == "check-star") return run_check_star(ctx, task, task_seed);
    if (kind == "deform-projection") return run_deform_projection(ctx, task);
    if (kind == "bimodule-suite") return run_bimodule_suite(ctx, task, task_seed);
    if (kind == "metric-suite") return run_metric_suite(ctx, task, task_seed);
    if (kind == "cocycle") return run_cocycle(ctx, task);
    if (kind == "index") return run_index(ctx, task);
    if (kind == "index-invariance") return run_index_invariance(ctx, task);
    if (kind == "morita-check") return run_morita_check(ctx, task);
    if (kind == "outequiv") return run_outequiv(ctx, task);
    if (kind == "kernel") return run_kernel(ctx, task);
    throw ParseError("unknown task kind '" + kind + "'");
}

ScenarioContext build_context(const Json& scenario) {
    if (!scenario.is_object()) throw ParseError("/: scenario must be a JSON object");
    if (!scenario.contains("algebra")) throw ParseError("/algebra: missing");
    if (!scenario.contains("tasks")) throw ParseError("/tasks: missing");
    ScenarioContext ctx;
    ctx.desc = descriptor_from_json(scenario.at("algebra"));
    ctx.K = scenario.value("K", 4);
    ctx.seed = scenario.value("seed", std::uint64_t{0});
    ctx.star = StarProduct::moyal(ctx.desc, ctx.K);
    if (scenario.contains("objects")) {
        const Json& objects = scenario.at("objects");
        if (!objects.is_array()) throw ParseError("/objects: must be an array");
        for (const auto& o : objects) {
            if (!o.is_object() || !o.contains("id") || !o.contains("kind") || !o.contains("value"))
                throw ParseError("/objects: each entry needs 'id', 'kind', 'value'");
            ctx.objects[o.at("id").get<std::string>()] =
                NamedObject{o.at("kind").get<std::string>(), o.at("value")};
        }
    }
    return ctx;
}

} // namespace

ScenarioReport run_scenario(const Json& scenario) {
    ScenarioContext ctx = build_context(scenario);
    ScenarioReport report;
    report.seed = ctx.seed;
    const Json& tasks = scenario.at("tasks");
    if (!tasks.is_array()) throw ParseError("/tasks: must be an array");

    std::uint64_t task_index = 0;
    for (const auto& task : tasks) {
        TaskResult result;
        result.id = task.is_object() ? task.value("id", "task[" + std::to_string(task_index) + "]")
                                     : "task[" + std::to_string(task_index) + "]";
        result.kind = task.is_object() ? task.value("kind", "?") : "?";
        auto start = std::chrono::steady_clock::now();
        try {
            if (!task.is_object() || !task.contains("kind"))
                throw ParseError("task must be an object with a 'kind'");
            TaskResult computed = dispatch_task(ctx, task, derive_stream_seed(ctx.seed, task_index));
            result.status = computed.status;
            result.details = std::move(computed.details);
        } catch (const Error& e) {
            result.status = "error";
            result.details = Json{{"error", e.what()}};
        } catch (const nlohmann::json::exception& e) {
            result.status = "error";
            result.details = Json{{"error", std::string("malformed task parameters: ") + e.what()}};
        }
        result.runtime_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - start)
                                .count();
        report.tasks.push_back(std::move(result));
        ++task_index;
    }
    return report;
}

ScenarioReport run_scenario_file(const std::string& path) {
    return run_scenario(load_json_file(path));
}

Json ScenarioReport::to_json() const {
    Json j;
    j["seed"] = seed;
    Json list = Json::array();
    for (const auto& t : tasks) {
        Json entry;
        entry["id"] = t.id;
        entry["kind"] = t.kind;
        entry["status"] = t.status;
        entry["details"] = t.details;
        list.push_back(std::move(entry));
    }
    j["tasks"] = std::move(list);
    j["status"] = ok() ? "pass" : "fail";
    return j;
}

std::string ScenarioReport::to_text() const {
    std::ostringstream os;
    for (const auto& t : tasks) {
        os << "[" << t.status << "] " << t.id << " (" << t.kind << ", " << t.runtime_ms << " ms)";
        if (t.status == "error") os << " -- " << t.details.value("error", "");
        os << "\n";
    }
    os << "overall: " << (ok() ? "pass" : "fail") << "\n";
    return os.str();
}

std::vector<std::string> validate_scenario(const Json& scenario) {
    std::vector<std::string> diags;
    if (!scenario.is_object()) return {"/: scenario must be a JSON object"};

    DescriptorPtr desc;
    if (!scenario.contains("algebra")) {
        diags.push_back("/algebra: missing");
    } else {
        try {
            desc = descriptor_from_json(scenario.at("algebra"));
        } catch (const Error& e) {
            diags.push_back(std::string("/algebra: ") + e.what());
        } catch (const nlohmann::json::exception& e) {
            diags.push_back(std::string("/algebra: ") + e.what());
        }
        // friendlier message for the common mistake
        if (scenario.at("algebra").is_object() &&
            scenario.at("algebra").value("kind", "") == "plane" &&
            scenario.at("algebra").contains("dim") &&
            scenario.at("algebra").at("dim").is_number_integer() &&
            scenario.at("algebra").at("dim").get<int>() % 2 != 0)
            diags.push_back("/algebra/dim: dim must be even");
    }
    if (scenario.contains("K") && (!scenario.at("K").is_number_integer() || scenario.at("K").get<int>() < 0))
        diags.push_back("/K: must be a non-negative integer");
    if (scenario.contains("seed") && !scenario.at("seed").is_number())
        diags.push_back("/seed: must be a number");

    std::map<std::string, std::string> object_kinds;
    if (scenario.contains("objects")) {
        const Json& objects = scenario.at("objects");
        if (!objects.is_array()) {
            diags.push_back("/objects: must be an array");
        } else {
            for (std::size_t t = 0; t < objects.size(); ++t) {
                const Json& o = objects.at(t);
                std::string at = "/objects/" + std::to_string(t);
                if (!o.is_object() || !o.contains("id") || !o.contains("kind") || !o.contains("value")) {
                    diags.push_back(at + ": needs 'id', 'kind', 'value'");
                    continue;
                }
                std::string id = o.at("id").get<std::string>();
                std::string kind = o.at("kind").get<std::string>();
                if (!kObjectKinds.count(kind))
                    diags.push_back(at + ": unknown object kind '" + kind + "'");
                if (object_kinds.count(id)) diags.push_back(at + ": duplicate object id '" + id + "'");
                object_kinds[id] = kind;
            }
        }
    }

    auto check_ref = [&](const Json& task, std::size_t t, const char* field, const char* kind) {
        if (!task.contains(field) || !task.at(field).is_string()) return;
        std::string at = "/tasks/" + std::to_string(t) + "/" + field;
        std::string id = task.at(field).get<std::string>();
        auto it = object_kinds.find(id);
        if (it == object_kinds.end())
            diags.push_back(at + ": reference to undefined object '" + id + "'");
        else if (it->second != kind)
            diags.push_back(at + ": object '" + id + "' has kind '" + it->second + "', expected '" +
                            kind + "'");
    };

    if (!scenario.contains("tasks")) {
        diags.push_back("/tasks: missing");
    } else if (!scenario.at("tasks").is_array()) {
        diags.push_back("/tasks: must be an array");
    } else {
        const Json& tasks = scenario.at("tasks");
        for (std::size_t t = 0; t < tasks.size(); ++t) {
            const Json& task = tasks.at(t);
            std::string at = "/tasks/" + std::to_string(t);
            if (!task.is_object() || !task.contains("kind")) {
                diags.push_back(at + ": task must be an object with a 'kind'");
                continue;
            }
            std::string kind = task.at("kind").get<std::string>();
            if (!kTaskKinds.count(kind)) {
                diags.push_back(at + ": unknown task kind '" + kind + "'");
                continue;
            }
            check_ref(task, t, "projection", "projection");
            check_ref(task, t, "conjugator", "matrix");
            check_ref(task, t, "solve_from", "matrix");
            check_ref(task, t, "cocycle", "cocycle");
            check_ref(task, t, "transform", "transform");
            check_ref(task, t, "model", "model");
            check_ref(task, t, "classA", "class");
            check_ref(task, t, "classB", "class");
        }
    }
    return diags;
}

std::vector<std::string> validate_scenario_file(const std::string& path) {
    Json j;
    try {
        j = load_json_file(path);
    } catch (const Error& e) {
        return {e.what()};
    }
    return validate_scenario(j);
}

} // namespace starmod
