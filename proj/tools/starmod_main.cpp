// starmod: scenario runner and one-shot computations for deformed projective
// modules over exact star-product algebras.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "starmod/scenario.hpp"

namespace {

int write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot open output file: " << out_path << "\n";
        return 2;
    }
    out << text;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact star-product module engine"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, format = "json";
    auto* run = app.add_subcommand("run", "execute a scenario file and emit a report");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--format", format, "report format: json | text")
        ->check(CLI::IsMember({"json", "text"}));
    run->add_option("--out", out_path, "write the report to a file instead of stdout");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "schema-check a scenario file");
    validate->add_option("scenario", validate_path, "scenario JSON file")->required();

    std::string proj_path, algebra_path;
    int K = 4;
    auto* index_cmd = app.add_subcommand("index", "deform a projection and print its index series");
    index_cmd->add_option("projection", proj_path, "projection JSON file")->required();
    index_cmd->add_option("--algebra", algebra_path, "algebra descriptor JSON file")->required();
    index_cmd->add_option("--K", K, "truncation order");

    std::string model_path, class_a_path, class_b_path;
    auto* morita = app.add_subcommand("morita", "decide Morita equivalence of two classes");
    morita->add_option("model", model_path, "cohomology model JSON file")->required();
    morita->add_option("classA", class_a_path, "first characteristic class")->required();
    morita->add_option("classB", class_b_path, "second characteristic class")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            starmod::ScenarioReport report = starmod::run_scenario_file(scenario_path);
            std::string text =
                format == "json" ? report.to_json().dump(2) + "\n" : report.to_text();
            int rc = write_output(text, out_path);
            return rc != 0 ? rc : report.exit_status();
        }
        if (*validate) {
            auto diags = starmod::validate_scenario_file(validate_path);
            for (const auto& d : diags) std::cout << d << "\n";
            return diags.empty() ? 0 : 1;
        }
        if (*index_cmd) {
            auto desc = starmod::descriptor_from_json(starmod::load_json_file(algebra_path));
            auto p0 = starmod::projection_from_json(starmod::load_json_file(proj_path), desc);
            auto star = starmod::StarProduct::moyal(desc, K);
            starmod::ScalarSeries idx = starmod::index_of(starmod::deform_projection(p0, star));
            starmod::Json out;
            out["index"] = starmod::to_json(idx);
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (*morita) {
            auto model = starmod::model_from_json(starmod::load_json_file(model_path));
            auto a = starmod::class_from_json(starmod::load_json_file(class_a_path));
            auto b = starmod::class_from_json(starmod::load_json_file(class_b_path));
            starmod::MoritaReport report = starmod::morita_check(a, b, model);
            std::cout << starmod::to_json(report).dump(2) << "\n";
            return 0;
        }
    } catch (const starmod::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
