#include "cover/congruence.hpp"
#include "cover/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitSemantic = 3;
constexpr int kExitRejected = 4;

int emit(const cover::Report& rep, bool as_json, const std::string& out_path) {
    const std::string& text = as_json ? rep.json : rep.human;
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream os(out_path, std::ios::binary);
        if (!os) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return 1;
        }
        os << text;
        if (!text.empty() && text.back() != '\n') os << '\n';
    }
    return rep.ok ? 0 : kExitSemantic;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation of fundamental-group kernels, deck groups and extension "
                 "classes of totally ramified abelian covers"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path;
    bool as_json = false;

    const std::vector<std::string> commands = {"validate", "kernel", "gtilde", "decompose",
                                               "class",    "icf",    "realize"};
    std::vector<CLI::App*> subs;
    for (const std::string& name : commands) {
        CLI::App* sub = app.add_subcommand(name, name + " the scenario");
        sub->add_option("scenario", scenario_path, "scenario file (JSON)")->required();
        sub->add_flag("--json", as_json, "emit canonical JSON instead of text");
        sub->add_option("--out", out_path, "write the report to a file");
        subs.push_back(sub);
    }
    CLI::App* selftest = app.add_subcommand("selftest", "run the bundled corpus and oracle suite");
    selftest->add_flag("--json", as_json, "emit canonical JSON instead of text");
    selftest->add_option("--out", out_path, "write the report to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (selftest->parsed()) {
            cover::Report rep = cover::run_selftest();
            int rc = emit(rep, as_json, out_path);
            return rep.ok ? rc : 1;
        }
        std::ifstream in(scenario_path, std::ios::binary);
        if (!in) {
            std::cerr << "cannot open scenario file: " << scenario_path << "\n";
            return kExitSchema;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        cover::Scenario sc = cover::parse_input(buf.str());
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (subs[i]->parsed()) return emit(cover::run_command(commands[i], sc), as_json, out_path);
        }
        std::cerr << "no command selected\n";
        return 1;
    } catch (const cover::SchemaError& e) {
        std::cerr << e.what() << "\n";
        return kExitSchema;
    } catch (const cover::SemanticError& e) {
        std::cerr << e.what() << "\n";
        return kExitSemantic;
    } catch (const cover::RhoNotInN& e) {
        std::cerr << "computation rejected: " << e.what() << "\n";
        return kExitRejected;
    } catch (const cover::DecompositionFailure& e) {
        std::cerr << "computation rejected: " << e.what() << "\n";
        return kExitRejected;
    } catch (const cover::InvalidHypotheses& e) {
        std::cerr << "computation rejected: " << e.what() << "\n";
        return kExitRejected;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
