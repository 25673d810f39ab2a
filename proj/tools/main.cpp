// Command line front end: run presets or config files and write CSV/JSON.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rdiff/errors.hpp"
#include "rdiff/scenario.hpp"

namespace {

struct CommonOptions {
    std::string preset;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    std::optional<std::int64_t> iterations;
    std::string record;
    std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--preset", o.preset, "Named preset (see `presets`)");
    cmd->add_option("--config", o.config_path, "Scenario config file (JSON)");
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--runs", o.runs, "Number of independent runs");
    cmd->add_option("--iterations", o.iterations, "Override the iteration count");
    cmd->add_option("--record", o.record,
                    "Comma separated outputs: states,weights,topology_events,msd (or none)");
    cmd->add_option("--out-dir", o.out_dir, "Output directory");
}

rdiff::ScenarioConfig resolve(const CommonOptions& o) {
    if (!o.preset.empty() && !o.config_path.empty())
        throw rdiff::ConfigError("--config", "use either --preset or --config");
    rdiff::ScenarioConfig c;
    if (!o.config_path.empty())
        c = rdiff::load_config(o.config_path);
    else if (!o.preset.empty())
        c = rdiff::preset(o.preset);
    else
        throw rdiff::ConfigError("--config", "one of --preset or --config is required");
    if (o.seed) c.seed = *o.seed;
    if (o.runs) c.runs = *o.runs;
    if (o.iterations) c.iterations = *o.iterations;
    if (!o.record.empty()) {
        c.record.states = c.record.weights = c.record.topology_events = c.record.msd = false;
        std::stringstream ss(o.record);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "states")
                c.record.states = true;
            else if (item == "weights")
                c.record.weights = true;
            else if (item == "topology_events")
                c.record.topology_events = true;
            else if (item == "msd")
                c.record.msd = true;
            else if (item != "none")
                throw rdiff::ConfigError("--record", "unknown series '" + item + "'");
        }
    }
    c.validate();
    return c;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir + ": " + ec.message());
}

std::vector<int> parse_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw rdiff::ConfigError("--f", "not an integer list: " + s);
        }
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot write " + path);
    std::fputs(text.c_str(), f);
    std::fclose(f);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-task diffusion LMS simulator with deception attacks and resilient combination"};
    app.require_subcommand(1);

    CommonOptions run_opts, sweep_opts, plan_opts;
    auto* run = app.add_subcommand("run", "Run a scenario and write summary.json plus CSV traces");
    add_common(run, run_opts);

    std::string f_list = "0,1,2,3,4,5";
    auto* sweep = app.add_subcommand("sweep-f", "Steady-state MSD for each resilience parameter F");
    add_common(sweep, sweep_opts);
    sweep->add_option("--f", f_list, "Comma separated F values");

    auto* plan = app.add_subcommand("plan-attack", "Print the greedy dominating set and victim assignment");
    add_common(plan, plan_opts);

    std::string show;
    auto* presets = app.add_subcommand("presets", "List presets");
    presets->add_option("--show", show, "Print the full config of one preset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*presets) {
            if (!show.empty()) {
                std::cout << rdiff::config_to_json(rdiff::preset(show)).dump(2) << "\n";
            } else {
                for (const auto& n : rdiff::preset_names())
                    std::cout << n << "\t" << rdiff::preset_description(n) << "\n";
            }
            return 0;
        }
        if (*run) {
            const rdiff::ScenarioConfig c = resolve(run_opts);
            const bool keep = c.record.states || c.record.weights || c.record.topology_events;
            const rdiff::ScenarioResult res = rdiff::run_scenario(c, keep);
            ensure_dir(run_opts.out_dir);
            rdiff::write_outputs(run_opts.out_dir, c, res);
            const rdiff::json summary = rdiff::summary_json(c, res);
            std::cout << summary.at("aggregate").dump(2) << "\n";
            return 0;
        }
        if (*sweep) {
            const rdiff::ScenarioConfig c = resolve(sweep_opts);
            const auto sr = rdiff::sweep_F(c, parse_list(f_list));
            ensure_dir(sweep_opts.out_dir);
            const rdiff::json j = rdiff::sweep_json(c, sr);
            write_text(sweep_opts.out_dir + "/sweep.json", j.dump(2) + "\n");
            std::string csv = "F,msd,msd_db\n";
            char buf[128];
            for (const auto& row : sr.rows) {
                std::snprintf(buf, sizeof buf, "%d,%.15g,%.15g\n", row.F, row.msd, rdiff::to_db(row.msd));
                csv += buf;
            }
            write_text(sweep_opts.out_dir + "/sweep.csv", csv);
            std::cout << csv;
            std::printf("noncooperative,%.15g,%.15g\n", sr.noncooperative_msd, rdiff::to_db(sr.noncooperative_msd));
            std::printf("no_attack,%.15g,%.15g\n", sr.no_attack_msd, rdiff::to_db(sr.no_attack_msd));
            return 0;
        }
        if (*plan) {
            const rdiff::ScenarioConfig c = resolve(plan_opts);
            const rdiff::NetworkBuild net = rdiff::build_network(c, 0);
            const auto dom = rdiff::greedy_dominating_set(net.topology);
            rdiff::json j{{"n_agents", c.n_agents},
                          {"links", net.topology.link_count()},
                          {"dominating_set", dom},
                          {"dominating_set_size", dom.size()}};
            rdiff::json victims = rdiff::json::array();
            const auto p = rdiff::plan_network_attack(
                net.topology, [&](rdiff::AgentId) { return rdiff::AttackGoal{c.attack ? c.attack->goal : rdiff::StateVector(c.M, 0.0), {}}; });
            for (const auto& v : p.victims) victims.push_back({{"victim", v.victim}, {"attacker", v.attacker}});
            j["victims"] = victims;
            if (c.attack) j["scenario_compromised"] = net.compromised;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
    } catch (const rdiff::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
