#include "imgnn/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "imgnn/harness.hpp"

namespace imgnn {

namespace {

/// A network argument is either an edge-list path or a generator spec:
/// "ba:<n>:<m_attach>[:<seed>]" or "er:<n>:<p>[:<seed>]".
Graph resolve_network(const std::string& spec, std::uint64_t default_seed) {
    if (spec.rfind("ba:", 0) == 0 || spec.rfind("er:", 0) == 0) {
        std::istringstream ss(spec);
        std::string kind, n_s, param_s, seed_s;
        std::getline(ss, kind, ':');
        std::getline(ss, n_s, ':');
        std::getline(ss, param_s, ':');
        const std::uint64_t seed =
            std::getline(ss, seed_s, ':') ? std::stoull(seed_s) : default_seed;
        if (kind == "ba") return generate_ba(std::stoi(n_s), std::stoi(param_s), seed);
        return generate_er(std::stoi(n_s), std::stod(param_s), seed);
    }
    return load_edge_list_file(spec);
}

CorpusSpec resolve_corpus_spec(const std::string& preset,
                               const std::vector<std::string>& groups) {
    if (!groups.empty()) {
        CorpusSpec spec;
        for (const auto& gstr : groups) {
            std::istringstream ss(gstr);
            std::string gen, n_s, param_s, count_s;
            if (!std::getline(ss, gen, ':') || !std::getline(ss, n_s, ':') ||
                !std::getline(ss, param_s, ':') || !std::getline(ss, count_s, ':'))
                throw CLI::ValidationError(
                    "--group", "expected <gen>:<n>:<param>:<count>, got " + gstr);
            spec.groups.push_back(
                {gen, std::stoi(n_s), std::stod(param_s), std::stoi(count_s)});
        }
        return spec;
    }
    if (preset == "paper") return CorpusSpec::paper_default();
    if (preset == "desk") return CorpusSpec::desk_default();
    throw CLI::ValidationError("--preset", "must be 'paper' or 'desk'");
}

ThresholdKind resolve_mu_c(const std::string& name) {
    if (name == "heterogeneous") return ThresholdKind::heterogeneous;
    if (name == "mean_degree" || name == "mean-degree")
        return ThresholdKind::mean_degree;
    throw CLI::ValidationError("--mu-c", "must be 'heterogeneous' or 'mean_degree'");
}

void write_or_print(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

ModelParams load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return ModelParams::from_json(buf.str());
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"IMGNN influence-maximization pipeline"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    // Config must live on the root app; keys go in [subcommand] sections.
    app.set_config("--config", "",
                   "Read defaults from an INI file ([subcommand] sections)");
    app.allow_config_extras(CLI::config_extras_mode::error);

    std::uint64_t seed = 0;
    std::string input, out_path, model_path, method, mu_c_name = "mean_degree";
    std::string corpus_dir, preset = "desk", log_path;
    std::vector<std::string> groups, networks, methods;
    std::vector<double> ratios{1.0, 1.5, 2.0};
    double mu = -1.0, mu_ratio = -1.0, lr = 0.001, threshold = 0.8, target = 0.8;
    double ratio = 1.5;
    int runs = 1000, epochs = 10, k = 1, cap = 18;
    bool override_cap = false, use_sgd = false, save_graph = false;
    bool label_timing = false, minmax = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "Master RNG seed");
        return sub;
    };

    auto* stats_cmd = add_common(app.add_subcommand("stats", "Summary statistics of a network"));
    stats_cmd->add_option("--input", input, "Edge-list path or ba:/er: generator spec")->required();
    stats_cmd->add_option("--save", out_path, "Also save the graph as an edge list");

    auto* oracle_cmd = add_common(app.add_subcommand("oracle", "Exhaustively search all minimum seed sets"));
    oracle_cmd->add_option("--input", input)->required();
    oracle_cmd->add_option("--mu", mu, "Infection probability")->required();
    oracle_cmd->add_option("--runs", runs, "Monte Carlo runs per candidate");
    oracle_cmd->add_option("--threshold", threshold, "Target infected fraction");
    oracle_cmd->add_option("--cap", cap, "Node-count cap for the exhaustive search");
    oracle_cmd->add_flag("--override-cap", override_cap, "Search above the cap anyway");

    auto* gen_cmd = add_common(app.add_subcommand("gen-data", "Generate a labeled training corpus"));
    gen_cmd->add_option("--out", out_path, "Corpus output directory")->required();
    gen_cmd->add_option("--ratio", ratio, "mu_t as a multiple of the epidemic threshold");
    gen_cmd->add_option("--runs", runs);
    gen_cmd->add_option("--preset", preset, "Corpus preset: paper or desk");
    gen_cmd->add_option("--group", groups, "Explicit group <gen>:<n>:<param>:<count> (repeatable)");

    auto* train_cmd = add_common(app.add_subcommand("train", "Train the scoring model on a corpus"));
    train_cmd->add_option("--corpus", corpus_dir, "Corpus directory from gen-data")->required();
    train_cmd->add_option("--out", out_path, "Model JSON output path")->required();
    train_cmd->add_option("--epochs", epochs);
    train_cmd->add_option("--lr", lr, "Learning rate");
    train_cmd->add_option("--log", log_path, "Training log CSV path");
    train_cmd->add_flag("--sgd", use_sgd, "Plain gradient descent instead of Adam");

    auto* score_cmd = add_common(app.add_subcommand("score", "Score nodes with a trained model"));
    score_cmd->add_option("--input", input)->required();
    score_cmd->add_option("--model", model_path)->required();
    score_cmd->add_option("--out", out_path, "Output CSV (stdout when omitted)");

    auto* rank_cmd = add_common(app.add_subcommand("rank", "Static node ranking by a named method"));
    rank_cmd->add_option("--input", input)->required();
    rank_cmd->add_option("--method", method,
                         "degree|pagerank|kshell|h-index|clustering|imgnn")->required();
    rank_cmd->add_option("--model", model_path, "Model JSON (imgnn only)");
    rank_cmd->add_option("--out", out_path);
    rank_cmd->add_flag("--min-max-scale", minmax, "Min-max scale feature columns");

    auto* base_cmd = add_common(app.add_subcommand("baseline", "Iterative selection baselines"));
    base_cmd->add_option("--input", input)->required();
    base_cmd->add_option("--method", method,
                         "voterank|ncvoterank|enrenew|improved-kshell|rinf:<base>")->required();
    base_cmd->add_option("--k", k, "Number of nodes to select")->required();
    base_cmd->add_option("--model", model_path, "Model JSON (rinf:imgnn)");
    base_cmd->add_option("--out", out_path);

    auto* eval_cmd = add_common(app.add_subcommand("evaluate", "Minimal seed fraction for one cell"));
    eval_cmd->add_option("--network", input)->required();
    eval_cmd->add_option("--method", method)->required();
    eval_cmd->add_option("--mu", mu, "Infection probability");
    eval_cmd->add_option("--mu-ratio", mu_ratio, "mu as a multiple of mu_c");
    eval_cmd->add_option("--mu-c", mu_c_name, "heterogeneous|mean_degree");
    eval_cmd->add_option("--runs", runs);
    eval_cmd->add_option("--target", target, "Target infected fraction");
    eval_cmd->add_option("--model", model_path);

    auto* sweep_cmd = add_common(app.add_subcommand("sweep", "Cross-product evaluation sweep"));
    sweep_cmd->add_option("--networks", networks, "Network specs (repeatable)");
    sweep_cmd->add_option("--methods", methods, "Method names (repeatable)");
    sweep_cmd->add_option("--ratios", ratios, "mu/mu_c ratios");
    sweep_cmd->add_option("--mu-c", mu_c_name);
    sweep_cmd->add_option("--out", out_path, "Run directory")->required();
    sweep_cmd->add_option("--runs", runs);
    sweep_cmd->add_option("--target", target);
    sweep_cmd->add_option("--model", model_path);
    sweep_cmd->add_flag("--label-timing", label_timing,
                        "Time corpus generation per ratio instead of evaluating");
    sweep_cmd->add_option("--preset", preset, "Corpus preset for --label-timing");
    sweep_cmd->add_option("--group", groups, "Corpus groups for --label-timing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\nRun with --help for usage.\n";
        return 2;
    }

    try {
        if (*stats_cmd) {
            const Graph g = resolve_network(input, seed);
            const GraphStats s = stats(g);
            std::cout << "n=" << s.n << " m=" << s.m << " mean_degree="
                      << s.mean_degree << " max_degree=" << s.max_degree
                      << " mean_clustering=" << s.mean_clustering
                      << " heterogeneity=" << s.heterogeneity
                      << " connected=" << (s.connected ? "yes" : "no") << '\n';
            if (!out_path.empty()) save_edge_list_file(g, out_path);
        } else if (*oracle_cmd) {
            const Graph g = resolve_network(input, seed);
            SirConfig cfg;
            cfg.runs = runs;
            cfg.rng_seed = seed;
            const auto sol = search_optimal_sets(g, mu, cfg, threshold, cap, override_cap);
            std::cout << "r=" << sol.r << " sets=" << sol.sets.size() << '\n';
            for (const auto& s : sol.sets) {
                for (std::size_t i = 0; i < s.size(); ++i)
                    std::cout << (i ? " " : "") << s[i];
                std::cout << '\n';
            }
        } else if (*gen_cmd) {
            const CorpusSpec spec = resolve_corpus_spec(preset, groups);
            SirConfig cfg;
            cfg.runs = runs;
            const auto corpus = build_training_corpus(spec, ratio, cfg, seed);
            save_corpus(corpus, out_path);
            std::cout << "wrote " << corpus.size() << " samples to " << out_path << '\n';
        } else if (*train_cmd) {
            const auto corpus = load_corpus(corpus_dir);
            TrainConfig cfg;
            cfg.epochs = epochs;
            cfg.learning_rate = lr;
            cfg.rng_seed = seed;
            cfg.use_adam = !use_sgd;
            const TrainResult result = train(corpus, cfg);
            write_or_print(result.params.to_json() + "\n", out_path);
            if (!log_path.empty()) write_or_print(result.log_csv(), log_path);
            std::cout << "final mean loss "
                      << result.epoch_mean_loss.back() << " after "
                      << epochs << " epochs\n";
        } else if (*score_cmd) {
            const Graph g = resolve_network(input, seed);
            const ModelParams model = load_model(model_path);
            write_or_print(score_nodes(g, model).to_csv(), out_path);
        } else if (*rank_cmd) {
            const Graph g = resolve_network(input, seed);
            ModelParams model;
            const ModelParams* model_ptr = nullptr;
            if (!model_path.empty()) {
                model = load_model(model_path);
                model_ptr = &model;
            }
            RankingResult r;
            if (method == "degree") {
                std::vector<double> deg(g.n);
                for (int i = 0; i < g.n; ++i) deg[i] = g.degree(i);
                r = rank(deg);
            } else if (method == "pagerank") {
                r = rank(pagerank(g).value);
            } else if (method == "kshell") {
                const auto c = coreness(g);
                r = rank(std::vector<double>(c.begin(), c.end()));
            } else if (method == "h-index") {
                const auto h = h_index(g);
                r = rank(std::vector<double>(h.begin(), h.end()));
            } else if (method == "clustering") {
                r = rank(clustering_coefficient(g));
            } else if (method == "imgnn") {
                if (!model_ptr) throw std::runtime_error("imgnn needs --model");
                r = score_nodes(g, *model_ptr);
            } else {
                throw std::runtime_error("unknown rank method: " + method);
            }
            write_or_print(r.to_csv(), out_path);
        } else if (*base_cmd) {
            const Graph g = resolve_network(input, seed);
            ModelParams model;
            const ModelParams* model_ptr = nullptr;
            if (!model_path.empty()) {
                model = load_model(model_path);
                model_ptr = &model;
            }
            SelectionTrace trace;
            if (method == "voterank") trace = voterank(g, k);
            else if (method == "ncvoterank") trace = ncvoterank(g, k);
            else if (method == "enrenew") trace = enrenew(g, k);
            else if (method == "improved-kshell") trace = improved_kshell(g, k);
            else {
                // rinf:<base> falls through to the provider machinery.
                const auto provider = make_provider(method, g, model_ptr);
                const auto order = provider(k);
                trace.method = method;
                trace.order = order;
                trace.score_at_selection.assign(order.size(), 0.0);
            }
            write_or_print(trace.to_csv(), out_path);
        } else if (*eval_cmd) {
            const Graph g = resolve_network(input, seed);
            ModelParams model;
            const ModelParams* model_ptr = nullptr;
            if (!model_path.empty()) {
                model = load_model(model_path);
                model_ptr = &model;
            }
            double mu_eff = mu, ratio_eff = 0.0;
            if (mu_eff <= 0.0) {
                if (mu_ratio <= 0.0)
                    throw std::runtime_error("evaluate needs --mu or --mu-ratio");
                const double mu_c = epidemic_threshold(g, resolve_mu_c(mu_c_name));
                mu_eff = std::min(1.0, mu_ratio * mu_c);
                ratio_eff = mu_ratio;
            }
            EvalConfig cfg;
            cfg.target_fraction = target;
            cfg.runs = runs;
            cfg.rng_seed = seed;
            auto rec = minimal_seed_fraction(g, make_provider(method, g, model_ptr),
                                            mu_eff, cfg);
            rec.network = input;
            rec.method = method;
            rec.mu_ratio = ratio_eff;
            std::cout << EvalRecord::csv_header() << '\n' << rec.to_csv_row() << '\n';
        } else if (*sweep_cmd) {
            if (label_timing) {
                const CorpusSpec spec = resolve_corpus_spec(preset, groups);
                SirConfig cfg;
                cfg.runs = runs;
                const auto rows = label_timing_sweep(spec, ratios, cfg, seed);
                std::cout << "mu_t_ratio,seconds,nonzero_label_nodes,"
                             "total_optimal_sets,mean_optimal_size\n";
                for (const auto& row : rows)
                    std::cout << row.mu_t_ratio << ',' << row.seconds << ','
                              << row.nonzero_label_nodes << ','
                              << row.total_optimal_sets << ','
                              << row.mean_optimal_size << '\n';
            } else {
                if (networks.empty() || methods.empty())
                    throw std::runtime_error("sweep needs --networks and --methods");
                std::vector<std::pair<std::string, Graph>> nets;
                for (const auto& spec : networks)
                    nets.emplace_back(spec, resolve_network(spec, seed));
                ModelParams model;
                const ModelParams* model_ptr = nullptr;
                if (!model_path.empty()) {
                    model = load_model(model_path);
                    model_ptr = &model;
                }
                EvalConfig cfg;
                cfg.target_fraction = target;
                cfg.runs = runs;
                cfg.rng_seed = seed;
                const auto records =
                    run_experiment(nets, methods, ratios, resolve_mu_c(mu_c_name),
                                   cfg, out_path, model_ptr);
                std::cout << records.size() << " records in " << out_path
                          << "/records.csv\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace imgnn
