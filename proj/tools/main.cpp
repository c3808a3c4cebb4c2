#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "wittenlab/config.hpp"
#include "wittenlab/errors.hpp"
#include "wittenlab/runner.hpp"
#include "wittenlab/version.hpp"

namespace {

struct FlagStore {
    std::map<std::string, std::string> values;
    std::string config_path;
};

// Every flag funnels into the shared key=value table that the config file
// also fills; flags win over file entries.
void add_common_options(CLI::App* cmd, FlagStore& store) {
    cmd->add_option("--config", store.config_path, "INI config file (flags override it)");
    const std::pair<const char*, const char*> options[] = {
        {"--model", "circle | torus | mesh:<path>"},
        {"--n", "circle vertices, or torus points per axis"},
        {"--n1", "torus points along the first axis"},
        {"--n2", "torus points along the second axis"},
        {"--radius", "circle radius"},
        {"--L1", "torus length along the first axis"},
        {"--L2", "torus length along the second axis"},
        {"--field", "scalar field catalog name"},
        {"--field-k", "harmonic index for cos-k-theta"},
        {"--field-epsilon", "tilt amplitude for the tilted field"},
        {"--t", "deformation parameter"},
        {"--t-grid", "schedule geom:first:last:count"},
        {"--degree", "form degree"},
        {"--k", "number of eigenvalues"},
        {"--tol", "relative residual tolerance"},
        {"--seed", "eigensolver start seed"},
        {"--oracle-mode", "standard | paper"},
        {"--cutoff", "oracle enumeration cutoff"},
        {"--threshold", "cluster threshold on the t*lambda axis"},
        {"--slope", "foliation slope a/b"},
        {"--n-leaf", "leaf mesh resolution"},
        {"--n-trans", "transversal sample count"},
        {"--phi-a1", "test function support start"},
        {"--phi-a2", "test function plateau start"},
        {"--phi-b1", "test function plateau end"},
        {"--phi-b2", "test function support end"},
        {"--workers", "parallel leaf solves"},
        {"--out", "output directory"},
    };
    for (const auto& [flag, help] : options) {
        std::string key = std::string(flag).substr(2);
        if (key == "field-k") key = "field.k";
        if (key == "field-epsilon") key = "field.epsilon";
        if (key.rfind("phi-", 0) == 0) key = "phi." + key.substr(4);
        cmd->add_option_function<std::string>(
            flag, [&store, key](const std::string& value) { store.values[key] = value; }, help);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Witten deformation laboratory on model manifolds"};
    app.set_version_flag("--version", wittenlab::kVersion);
    app.require_subcommand(1);

    FlagStore store;
    const std::pair<const char*, const char*> subcommands[] = {
        {"spectrum", "smallest deformed Laplacian eigenvalues at one t"},
        {"flow", "rescaled spectrum over a decreasing t schedule"},
        {"morse-check", "critical points, Betti numbers, counting inequalities"},
        {"oracle", "aggregated oscillator limit spectrum"},
        {"foliation", "leafwise spectra integrated over a Kronecker transversal"},
    };
    for (const auto& [name, description] : subcommands)
        add_common_options(app.add_subcommand(name, description), store);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << std::endl;
        return 2;
    }

    try {
        std::map<std::string, std::string> file_keys;
        if (!store.config_path.empty()) {
            std::ifstream in(store.config_path);
            if (!in)
                throw wittenlab::Error(wittenlab::ErrorCode::config_error,
                                       "cannot open config file " + store.config_path);
            file_keys = wittenlab::parse_ini(in, store.config_path);
        }
        const std::string command = app.get_subcommands().front()->get_name();
        const wittenlab::RunConfig config =
            wittenlab::resolve_config(command, file_keys, store.values);
        wittenlab::run_command(config);
        return 0;
    } catch (const wittenlab::Error& e) {
        std::cerr << "error (" << wittenlab::error_code_name(e.code()) << "): " << e.what()
                  << std::endl;
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 3;
    }
}
