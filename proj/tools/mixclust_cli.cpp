#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mixclust/bench.hpp"
#include "mixclust/io.hpp"
#include "mixclust/metrics.hpp"
#include "mixclust/mixing.hpp"
#include "mixclust/oracle.hpp"
#include "mixclust/rard.hpp"
#include "mixclust/similarity.hpp"
#include "mixclust/sweep.hpp"
#include "mixclust/synth.hpp"

namespace {

constexpr const char* kVersion = "mixclust 1.0.0";

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw mixclust::validation_error("cannot open output file: " + path);
  out.precision(17);
  return out;
}

mixclust::SimilarityMatrix load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mixclust::validation_error("cannot open graph file: " + path);
  return mixclust::load_edge_list(in);
}

std::string sibling_with_extension(const std::string& path, const std::string& ext) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + ext;
  return path.substr(0, dot) + ext;
}

struct GraphFlags {
  std::string kind = "pnn";
  double sigma = 1.0;
  double delta = 0.0;
  std::size_t p = 4;
  double epsilon = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--graph", kind, "similarity graph: gaussian|pnn|eps")
        ->check(CLI::IsMember({"gaussian", "pnn", "eps"}));
    cmd->add_option("--sigma", sigma, "gaussian kernel width");
    cmd->add_option("--delta", delta, "gaussian sparsification radius (0 = dense)");
    cmd->add_option("--p", p, "neighbors for the pnn graph");
    cmd->add_option("--epsilon", epsilon, "radius for the eps graph");
  }

  mixclust::GraphConfig to_config() const {
    mixclust::GraphConfig cfg;
    if (kind == "gaussian")
      cfg.kind = mixclust::GraphConfig::Kind::gaussian;
    else if (kind == "pnn")
      cfg.kind = mixclust::GraphConfig::Kind::p_nearest;
    else
      cfg.kind = mixclust::GraphConfig::Kind::epsilon;
    cfg.sigma = sigma;
    cfg.delta = delta;
    cfg.p = p;
    cfg.epsilon = epsilon;
    return cfg;
  }
};

struct RardFlags {
  mixclust::RardConfig cfg;

  void attach(CLI::App* cmd) {
    cmd->add_option("--eps0", cfg.eps0, "initial mixing tolerance");
    cmd->add_option("--eps-min", cfg.eps_min, "tolerance floor (0 = eps0/1024)");
    cmd->add_option("--t-max", cfg.t_max, "iteration cap per recursive call");
    cmd->add_option("--alpha", cfg.alpha, "walk laziness in (0, 1]");
    cmd->add_option("--b", cfg.b, "upper bound of the initial agent range");
    cmd->add_option("--seed", cfg.seed, "random seed");
  }
};

nlohmann::json tree_to_json(const mixclust::ClusterTree& tree, int node_id) {
  const auto& node = tree.nodes[node_id];
  nlohmann::json j;
  j["eps"] = node.eps;
  j["t"] = node.t;
  if (node.is_leaf()) {
    j["indices"] = node.indices;
  } else {
    j["gap"] = node.gap;
    j["children"] = nlohmann::json::array(
        {tree_to_json(tree, node.left), tree_to_json(tree, node.right)});
  }
  return j;
}

void cmd_generate(const std::string& dataset, const mixclust::SbmParams& sbm,
                  std::size_t n_points, std::uint64_t seed, const std::string& out_path) {
  if (dataset == "sbm") {
    auto [w, truth] = mixclust::generate_sbm(sbm);
    auto out = open_out(out_path);
    mixclust::save_edge_list(w, out);
    auto labels_out = open_out(sibling_with_extension(out_path, ".labels"));
    mixclust::save_labels(truth, labels_out);
    return;
  }

  mixclust::PointSet points = [&] {
    if (dataset == "gauss5")
      return mixclust::generate_gaussian_mixture(mixclust::GaussianMixtureSpec::defaults(seed));
    if (dataset == "crescents") return mixclust::generate_two_crescents(n_points, seed);
    if (dataset == "ellipses") return mixclust::generate_half_ellipses(n_points, seed);
    if (dataset == "rings") return mixclust::generate_two_rings(n_points, seed);
    throw mixclust::validation_error("unknown dataset: " + dataset);
  }();
  auto out = open_out(out_path);
  mixclust::save_points_csv(points, out, /*include_labels=*/false);
  auto labels_out = open_out(sibling_with_extension(out_path, ".labels"));
  mixclust::save_labels(mixclust::ClusterAssignment::from_labels(points.labels()),
                        labels_out);
}

int run(int argc, char** argv) {
  CLI::App app{"Eigenvector-free spectral clustering via mixing-process diffusion"};
  app.set_config("--config", "", "read options from a key = value file");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a synthetic dataset");
  std::string gen_dataset = "sbm";
  mixclust::SbmParams sbm;
  std::size_t gen_points = 384;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--dataset", gen_dataset, "sbm|gauss5|crescents|ellipses|rings")
      ->check(CLI::IsMember({"sbm", "gauss5", "crescents", "ellipses", "rings"}));
  gen->add_option("--n", sbm.n, "vertex count (sbm) ");
  gen->add_option("--k", sbm.k, "block count (sbm)");
  gen->add_option("--p", sbm.p, "in-block edge probability (sbm)");
  gen->add_option("--q", sbm.q, "cross-block edge probability (sbm)");
  gen->add_option("--points", gen_points, "point count (point datasets)");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "output path (.edges for sbm, .csv otherwise)")
      ->required();

  // cluster
  auto* cluster = app.add_subcommand("cluster", "cluster a graph or point set");
  std::string cl_input, cl_out, cl_tree, cl_trace;
  bool cl_label_col = false;
  GraphFlags cl_graph;
  RardFlags cl_rard;
  cluster->add_option("--input", cl_input, "edge list (.edges) or points csv")->required();
  cluster->add_flag("--label-col", cl_label_col, "points csv carries a final label column");
  cl_graph.attach(cluster);
  cl_rard.attach(cluster);
  cluster->add_option("--out", cl_out, "predicted labels output")->required();
  cluster->add_option("--tree", cl_tree, "write the recursion tree as JSON");

  // eval
  auto* eval = app.add_subcommand("eval", "score predicted labels against ground truth");
  std::string ev_pred, ev_truth, ev_graph;
  eval->add_option("--pred", ev_pred, "predicted labels file")->required();
  eval->add_option("--truth", ev_truth, "ground-truth labels file")->required();
  eval->add_option("--graph", ev_graph, "edge list for the NCut column");

  // verify
  auto* verify = app.add_subcommand("verify", "convergence-bound check on a graph");
  std::string vf_graph, vf_truth;
  double vf_alpha = 1.0;
  std::size_t vf_tmax = 30;
  std::uint64_t vf_seed = 0;
  bool vf_ideal = false;
  verify->add_option("--graph", vf_graph, "edge list")->required();
  verify->add_option("--truth", vf_truth, "block partition labels")->required();
  verify->add_option("--alpha", vf_alpha, "walk laziness");
  verify->add_option("--t-max", vf_tmax, "last step to check");
  verify->add_option("--seed", vf_seed, "seed for the random start vector");
  verify->add_flag("--ideal", vf_ideal,
                   "treat the graph as exactly block-diagonal (tighter bound)");

  // bench
  auto* bench = app.add_subcommand("bench", "experiment harnesses");
  bench->require_subcommand(1);
  auto* recov = bench->add_subcommand("recovery", "recovery-vs-parameters sweep");
  mixclust::ExperimentGrid grid;
  grid.n_values = {1500};
  grid.k_values = {5, 10};
  grid.q_values = {0.01};
  RardFlags rc_rard;
  std::string rc_out;
  recov->add_option("--n", grid.n_values, "vertex counts");
  recov->add_option("--k", grid.k_values, "block counts");
  recov->add_option("--q", grid.q_values, "cross-block probabilities");
  recov->add_option("--p", grid.p, "in-block probability");
  recov->add_option("--reps", grid.repetitions, "runs per grid cell");
  recov->add_option("--grid-seed", grid.seed, "base seed for the grid");
  rc_rard.attach(recov);
  recov->add_option("--out", rc_out, "CSV output path (default stdout)");

  auto* scaling = bench->add_subcommand("scaling", "runtime-vs-n at fixed expected degree");
  std::vector<std::size_t> sc_n = {750, 1500, 3000};
  std::size_t sc_k = 10, sc_reps = 5;
  double sc_p = 0.5, sc_q = 0.01;
  std::uint64_t sc_seed = 0;
  RardFlags sc_rard;
  std::string sc_out;
  scaling->add_option("--n", sc_n, "vertex counts (degrees pinned at the first)");
  scaling->add_option("--k", sc_k, "block count");
  scaling->add_option("--p", sc_p, "in-block probability at the first n");
  scaling->add_option("--q", sc_q, "cross-block probability at the first n");
  scaling->add_option("--reps", sc_reps, "repetitions per n");
  scaling->add_option("--bench-seed", sc_seed, "base seed");
  sc_rard.attach(scaling);
  scaling->add_option("--out", sc_out, "CSV output path (default stdout)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "eps0 ladder with a stability recommendation");
  std::string sw_input;
  std::vector<double> sw_ladder;
  double sw_top = 1e-1;
  std::size_t sw_rungs = 12;
  RardFlags sw_rard;
  std::string sw_out;
  sweep->add_option("--input", sw_input, "edge list")->required();
  sweep->add_option("--ladder", sw_ladder, "explicit decreasing eps0 values");
  sweep->add_option("--top", sw_top, "first rung of the default halving ladder");
  sweep->add_option("--rungs", sw_rungs, "rung count of the default ladder");
  sw_rard.attach(sweep);
  sweep->add_option("--out", sw_out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // normalize CLI11's varied parse-error codes to the documented usage code
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*gen) {
    sbm.seed = gen_seed;
    cmd_generate(gen_dataset, sbm, gen_points, gen_seed, gen_out);
    return 0;
  }

  if (*cluster) {
    const bool is_edges = cl_input.size() >= 6 &&
                          cl_input.compare(cl_input.size() - 6, 6, ".edges") == 0;
    mixclust::SimilarityMatrix w =
        is_edges ? load_graph_file(cl_input)
                 : mixclust::build_graph(
                       mixclust::load_points_file(cl_input, cl_label_col),
                       cl_graph.to_config());
    auto [tree, assignment] = mixclust::rard_cluster(w, cl_rard.cfg);
    auto out = open_out(cl_out);
    mixclust::save_labels(assignment, out);
    if (!cl_tree.empty()) {
      auto tree_out = open_out(cl_tree);
      tree_out << tree_to_json(tree, 0).dump(2) << '\n';
    }
    std::cout << "n,clusters,seed\n"
              << w.size() << ',' << assignment.k << ',' << cl_rard.cfg.seed << '\n';
    return 0;
  }

  if (*eval) {
    auto pred = mixclust::load_labels_file(ev_pred);
    auto truth = mixclust::load_labels_file(ev_truth);
    std::cout << "nmi_x100" << (ev_graph.empty() ? "" : ",ncut")
              << ",exact_recovery\n";
    // table-scale NMI (0-100)
    std::cout << 100.0 * mixclust::nmi(pred, truth);
    if (!ev_graph.empty())
      std::cout << ',' << mixclust::ncut(load_graph_file(ev_graph), pred);
    std::cout << ',' << (mixclust::exact_recovery(pred, truth) ? 1 : 0) << '\n';
    return 0;
  }

  if (*verify) {
    auto w = load_graph_file(vf_graph);
    auto truth = mixclust::load_labels_file(vf_truth);
    std::vector<double> x0(w.size());
    std::mt19937_64 rng(vf_seed);
    std::uniform_real_distribution<double> uni(0.1, 1.0);
    double total = 0.0;
    for (double& v : x0) total += (v = uni(rng));
    for (double& v : x0) v /= total;

    std::vector<mixclust::BoundCheck> checks;
    if (vf_ideal) {
      auto decomp = mixclust::ideal_split(w, truth);
      checks = mixclust::theorem1_bound_check(decomp.w_star, truth, x0, vf_alpha, 0,
                                              vf_tmax);
    } else {
      bool ok = true;
      checks = mixclust::theorem2_bound_check(w, truth, x0, vf_alpha, 0, vf_tmax, &ok);
      if (!ok) {
        std::cerr << "bound hypotheses fail: the partition's eigenvalue group is not "
                     "separated from the rest of the spectrum\n";
        return 2;
      }
    }
    std::cout << "t,lhs,rhs\n";
    std::cout.precision(12);
    for (const auto& c : checks)
      std::cout << c.t << ',' << c.lhs << ',' << c.rhs << '\n';
    return 0;
  }

  if (*recov) {
    auto rows = mixclust::run_recovery_sweep(grid, rc_rard.cfg);
    if (rc_out.empty()) {
      mixclust::write_recovery_csv(rows, std::cout);
    } else {
      auto out = open_out(rc_out);
      mixclust::write_recovery_csv(rows, out);
    }
    return 0;
  }

  if (*scaling) {
    auto result = mixclust::run_scaling_bench(sc_n, sc_k, sc_p, sc_q, sc_reps,
                                              sc_rard.cfg, sc_seed);
    if (sc_out.empty()) {
      mixclust::write_scaling_csv(result, std::cout);
    } else {
      auto out = open_out(sc_out);
      mixclust::write_scaling_csv(result, out);
    }
    return 0;
  }

  if (*sweep) {
    auto w = load_graph_file(sw_input);
    if (sw_ladder.empty()) sw_ladder = mixclust::default_eps0_ladder(sw_top, sw_rungs);
    auto result = mixclust::sweep_eps0(w, sw_ladder, sw_rard.cfg);
    if (sw_out.empty()) {
      mixclust::write_sweep_csv(result, std::cout);
    } else {
      auto out = open_out(sw_out);
      mixclust::write_sweep_csv(result, out);
    }
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const mixclust::guard_error& e) {
    std::cerr << "guard error: " << e.what() << '\n';
    return 3;
  } catch (const mixclust::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
