// Command-line front end: check/correct/iso on bundle files, the bundled
// fixtures, and fixture export. Exit codes: 0 all checks pass, 1 a
// mathematical check failed, 2 input or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crepant/pipeline.hpp"

namespace {

crepant::ReportFormat parse_format(const std::string& format) {
    if (format == "text") return crepant::ReportFormat::text;
    if (format == "json") return crepant::ReportFormat::json;
    throw crepant::SchemaViolation("unknown format '" + format + "' (expected text or json)");
}

std::map<std::string, std::string> parse_overrides(const std::vector<std::string>& sets) {
    std::map<std::string, std::string> out;
    for (const auto& s : sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw crepant::SchemaViolation("--set expects key=value, got '" + s + "'");
        out[s.substr(0, eq)] = s.substr(eq + 1);
    }
    return out;
}

int finish(const crepant::Report& report, const std::string& format) {
    std::cout << crepant::emit_report(report, parse_format(format));
    return report.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact quantum-corrected cohomology ring checks"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string q_value = "-1";
    app.add_option("--format", format, "report format: text or json")
        ->capture_default_str();
    app.add_option("--q-value", q_value,
                   "evaluation point of the correction series; only -1 is defined")
        ->capture_default_str();

    auto* check = app.add_subcommand("check", "structure and associativity checks on a bundle");
    std::string check_path;
    check->add_option("bundle", check_path, "bundle JSON file")->required();

    auto* correct = app.add_subcommand("correct", "emit the quantum-corrected triple tensor");
    std::string correct_path;
    correct->add_option("bundle", correct_path, "bundle JSON file")->required();

    auto* iso = app.add_subcommand("iso", "diagonal ring isomorphism search between two bundles");
    std::string iso_a, iso_b;
    iso->add_option("bundleA", iso_a, "source bundle JSON file")->required();
    iso->add_option("bundleB", iso_b, "target bundle JSON file")->required();

    auto* fixture = app.add_subcommand("fixture", "run a bundled verification");
    std::string fixture_name;
    std::vector<std::string> fixture_sets;
    fixture->add_option("name", fixture_name, "fixture name")->required();
    fixture->add_option("--set", fixture_sets, "parameter override key=value (repeatable)");

    auto* dump = app.add_subcommand("dump-fixtures", "write the bundled fixture files");
    std::string dump_dir;
    dump->add_option("dir", dump_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // command-line misuse is an input error
    }

    try {
        parse_format(format);
        if (crepant::parse_scalar(q_value) != crepant::GaussRational(-1))
            throw crepant::SchemaViolation(
                "--q-value " + q_value +
                " rejected: the corrected product is defined at q = -1 only");

        if (check->parsed())
            return finish(crepant::run_check(crepant::parse_bundle(check_path)), format);
        if (correct->parsed())
            return finish(crepant::run_correct(crepant::parse_bundle(correct_path)), format);
        if (iso->parsed())
            return finish(crepant::run_iso(crepant::parse_bundle(iso_a),
                                           crepant::parse_bundle(iso_b)),
                          format);
        if (fixture->parsed())
            return finish(crepant::run_fixture(fixture_name, parse_overrides(fixture_sets)),
                          format);
        if (dump->parsed()) {
            std::filesystem::create_directories(dump_dir);
            crepant::Report report;
            report.title = "dump-fixtures " + dump_dir;
            for (const auto& f : crepant::fixtures::all_files()) {
                auto path = std::filesystem::path(dump_dir) / f.filename;
                std::ofstream out(path);
                if (!out)
                    throw crepant::ParseError("cannot write '" + path.string() + "'");
                out << f.content;
                report.add("written", f.filename, crepant::CheckStatus::pass, path.string());
            }
            return finish(report, format);
        }
    } catch (const crepant::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
