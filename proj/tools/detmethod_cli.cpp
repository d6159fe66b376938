#include "detmethod/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitHypothesis = 2;

detm::json read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw detm::ConfigError("cannot open config file '" + path + "'");
    try {
        return detm::json::parse(in);
    } catch (const detm::json::parse_error& e) {
        throw detm::ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integer points on affine surfaces with a congruence side condition"};
    app.require_subcommand(1, 1);

    std::string config_path, out_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    const std::map<std::string, std::string> about = {
        {"enumerate", "list the points of f = 0 in a box, optionally with g = 0 mod q"},
        {"certify", "build the monomial matrix and check minor divisibility by q"},
        {"aux", "run the residue-class pipeline and emit auxiliary polynomials"},
        {"quadric", "count points on a diagonal quadric"},
        {"unlike", "count solutions of x1^k + x2^l + x3^m + x4^k = N"},
        {"fit", "fit a power law to counts over a range of boxes"},
    };
    for (const char* name : detm::kCommands) {
        auto* sub = app.add_subcommand(name, about.at(name));
        sub->add_option("--config", config_path, "JSON instance document")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "report path (stdout when omitted)");
        sub->add_option("--seed", seed, "overrides the config seed");
        sub->add_option("--threads", threads, "overrides the config thread count")->check(CLI::Range(1u, 256u));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        detm::json doc = read_document(config_path);
        if (seed) doc["seed"] = *seed;
        if (threads) doc["threads"] = *threads;
        detm::RunConfig cfg = detm::report::parse_config(doc, command);
        const std::string text = detm::run(cfg).dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw detm::ConfigError("cannot write '" + out_path + "'");
            out << text;
        }
        return 0;
    } catch (const detm::HypothesisViolation& e) {
        std::cerr << "hypothesis violation (" << command << ", " << config_path << "): " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const detm::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
