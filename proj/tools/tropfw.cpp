// tropfw: command-line front end.
// Exit codes: 0 ok, 1 runtime failure, 2 usage error or malformed input.

#include <omp.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tropfw/errors.hpp"
#include "tropfw/fw_solver.hpp"
#include "tropfw/io.hpp"
#include "tropfw/matroid.hpp"
#include "tropfw/msc.hpp"
#include "tropfw/phylo.hpp"
#include "tropfw/projection.hpp"

namespace {

using namespace tropfw;

struct UsageError : Error {
  using Error::Error;
};

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

std::string join(const TropicalPoint& x) { return join(x.coords()); }

// Writes to --output atomically when given, otherwise to stdout.
void emit(const std::string& output, const std::function<void(std::ostream&)>& writer) {
  if (output.empty()) {
    writer(std::cout);
    std::cout.flush();
  } else {
    write_atomically(output, writer);
  }
}

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_num_procs(); }

Matroid load_matroid(const std::optional<int>& graphic, const std::string& matroid_file) {
  if (graphic && !matroid_file.empty()) throw UsageError("--graphic and --matroid are mutually exclusive");
  if (graphic) return graphic_matroid(*graphic);
  if (matroid_file.empty()) throw UsageError("one of --graphic or --matroid is required");
  std::ifstream in(matroid_file, std::ios::binary);
  if (!in) throw Error("cannot open " + matroid_file);
  return read_matroid(in);
}

std::vector<TropicalPoint> to_points(const std::vector<std::vector<double>>& rows) {
  std::vector<TropicalPoint> points;
  points.reserve(rows.size());
  for (const auto& r : rows) points.emplace_back(r);
  return points;
}

struct FwArgs {
  std::string metric = "sym";
  std::string input;
  std::string output;
  std::optional<int> project;
  std::string matroid;
};

int cmd_fw(const FwArgs& a) {
  const Metric metric = parse_metric(a.metric);
  const auto samples = to_points(read_matrix_csv_file(a.input));
  if (a.project && !a.matroid.empty()) throw UsageError("--project and --matroid are mutually exclusive");
  const int q = static_cast<int>(samples.front().size());
  if (q < 2) throw ParseError("samples need at least 2 columns", 0);

  std::ostringstream text;
  if (a.project || !a.matroid.empty()) {
    const Matroid m = load_matroid(a.project, a.matroid);
    if (m.ground_size() != q) {
      throw UsageError("matroid has " + std::to_string(m.ground_size()) + " elements but samples have " +
                       std::to_string(q) + " columns");
    }
    const FwUltrametric r = fw_m_ultrametric(m, samples, metric);
    text << "metric: " << to_string(metric) << '\n';
    text << "point: " << join(r.raw.point) << '\n';
    text << "objective: " << format_number(r.raw.objective) << '\n';
    text << "projected: " << join(r.projected.point) << '\n';
    text << "projected_objective: " << format_number(r.projected.objective) << '\n';
    if (a.project) {
      const int p = *a.project;
      const auto u = translate_nonnegative(DissimilarityVector::from_point(default_labels(p), r.projected.point));
      text << "ultrametric: " << join(u.entries) << '\n';
      text << "newick: " << write_newick(tree_from_ultrametric(u)) << '\n';
    }
  } else {
    const FwSolution s = fermat_weber(samples, metric);
    text << "metric: " << to_string(metric) << '\n';
    text << "point: " << join(s.point) << '\n';
    text << "objective: " << format_number(s.objective) << '\n';
  }
  emit(a.output, [&](std::ostream& out) { out << text.str(); });
  return 0;
}

struct ProjectArgs {
  std::optional<int> graphic;
  std::string matroid;
  std::string vector;
  std::string input;
  std::string output;
  int threads = 0;
};

int cmd_project(const ProjectArgs& a) {
  if (a.vector.empty() == a.input.empty()) throw UsageError("give exactly one of --vector or --input");
  const Matroid m = load_matroid(a.graphic, a.matroid);
  std::vector<TropicalPoint> xs;
  if (!a.vector.empty()) {
    xs.emplace_back(parse_number_list(a.vector));
  } else {
    xs = to_points(read_matrix_csv_file(a.input));
  }
  for (const auto& x : xs) {
    if (static_cast<int>(x.size()) != m.ground_size()) {
      throw UsageError("vector has " + std::to_string(x.size()) + " entries, matroid has " +
                       std::to_string(m.ground_size()) + " elements");
    }
  }
  const auto ys = project_many_parallel(m, xs, resolve_threads(a.threads));
  emit(a.output, [&](std::ostream& out) {
    for (const auto& y : ys) out << join(y) << '\n';
  });
  return 0;
}

struct SimulateArgs {
  std::string input;
  std::string output;
  double Ne = 0.0;
  int count = 1;
  double sigma = 0.0;
  std::string format = "newick";
  std::uint64_t seed = 0;
};

int cmd_simulate(const SimulateArgs& a) {
  const auto trees = read_newick_file(a.input);
  if (trees.size() != 1) throw UsageError("--input must hold exactly one species tree");
  if (!(a.Ne > 0)) throw UsageError("--Ne must be positive");
  if (a.count < 1) throw UsageError("--count must be positive");
  if (!(a.sigma >= 0)) throw UsageError("--sigma must be nonnegative");
  if (a.format != "newick" && a.format != "csv") throw UsageError("--format must be newick or csv");
  if (a.sigma > 0 && a.format != "csv") throw UsageError("--sigma requires --format csv");

  const SpeciesModel model{trees.front(), a.Ne};
  const NoiseSpec noise{a.sigma, a.sigma > 0 ? min_internal_branch_length(model.species_tree) : 0.0};
  std::vector<PhyloTree> genes;
  std::vector<DissimilarityVector> vectors;
  for (int g = 0; g < a.count; ++g) {
    CounterRng rng(derive_seed(a.seed, {1, seed_coordinate(a.Ne), static_cast<std::uint64_t>(g)}));
    PhyloTree gene = simulate_gene_tree(model, rng);
    if (a.format == "csv") {
      DissimilarityVector v = cophenetic_vector(gene);
      if (a.sigma > 0) {
        CounterRng noise_rng(derive_seed(a.seed, {2, seed_coordinate(a.Ne), seed_coordinate(a.sigma),
                                                  static_cast<std::uint64_t>(g)}));
        v = perturb(v, noise, noise_rng);
      }
      vectors.push_back(std::move(v));
    } else {
      genes.push_back(std::move(gene));
    }
  }
  emit(a.output, [&](std::ostream& out) {
    if (a.format == "csv") {
      write_dissimilarity_csv(out, vectors);
    } else {
      for (const auto& t : genes) out << write_newick(t) << '\n';
    }
  });
  return 0;
}

struct ExperimentArgs {
  std::string config;
  std::string output;
  std::string summary;
  std::optional<std::uint64_t> seed;
  int threads = 0;
};

int cmd_experiment(const ExperimentArgs& a, bool safety) {
  ExperimentConfig config = load_experiment_config(a.config);
  if (a.seed) config.master_seed = *a.seed;
  const int threads = resolve_threads(a.threads);
  const bool as_safety = safety || config.species_copies;
  const auto records = as_safety ? safety_radius_demo(config, threads) : run_experiment_parallel(config, threads);
  emit(a.output, [&](std::ostream& out) { write_records_csv(out, records); });
  if (!a.summary.empty()) {
    if (!as_safety) throw UsageError("--summary applies to safety runs only");
    write_atomically(a.summary, [&](std::ostream& out) { write_safety_summary_csv(out, summarize_safety(records)); });
  }
  return 0;
}

struct HausdorffArgs {
  std::vector<int> n{2, 3, 4, 5, 6, 7};
  std::vector<int> q{2, 3, 4, 5, 6};
  int replicates = 2000;
  double noise_scale = 0.01;
  std::uint64_t seed = 0;
  std::string output;
  int threads = 0;
};

int cmd_hausdorff(const HausdorffArgs& a) {
  HausdorffConfig config;
  config.n = a.n;
  config.q = a.q;
  config.replicates = a.replicates;
  config.noise_scale = a.noise_scale;
  config.seed = a.seed;
  const auto records = hausdorff_experiment_parallel(config, resolve_threads(a.threads));
  emit(a.output, [&](std::ostream& out) { write_hausdorff_csv(out, records); });
  return 0;
}

struct MomentsArgs {
  int q = 2;
  long samples = 100000;
  std::uint64_t seed = 0;
  int threads = 0;
  std::optional<double> eta;
  std::optional<int> n;
  std::optional<double> w_min;
  std::string output;
};

int cmd_moments(const MomentsArgs& a) {
  const int given = (a.eta ? 1 : 0) + (a.n ? 1 : 0) + (a.w_min ? 1 : 0);
  if (given != 0 && given != 3) throw UsageError("--eta, --n and --w-min go together");
  const NormMoments m = estimate_norm_moments(a.q, a.samples, a.seed, resolve_threads(a.threads));
  std::ostringstream text;
  text << "q: " << m.q << '\n';
  text << "samples: " << m.samples << '\n';
  text << "mean: " << format_number(m.mean) << '\n';
  text << "mean_se: " << format_number(m.mean_se) << '\n';
  text << "variance: " << format_number(m.variance) << '\n';
  text << "variance_se: " << format_number(m.variance_se) << '\n';
  if (given == 3) {
    text << "safety_sigma: " << format_number(stochastic_safety_sigma(*a.eta, *a.n, *a.w_min, m)) << '\n';
  }
  emit(a.output, [&](std::ostream& out) { out << text.str(); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical Fermat-Weber points, Bergman-fan projections, and species-tree experiments"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "tropfw 0.1.0");

  FwArgs fw;
  auto* fw_cmd = app.add_subcommand("fw", "Fermat-Weber point of the rows of a CSV matrix");
  fw_cmd->add_option("--metric", fw.metric, "Distance: sym, min or max")
      ->check(CLI::IsMember({"sym", "min", "max"}))
      ->capture_default_str();
  fw_cmd->add_option("--input", fw.input, "CSV file, one sample per row")->required()->check(CLI::ExistingFile);
  fw_cmd->add_option("--project", fw.project, "Project onto ultrametrics on p leaves; also prints a Newick tree");
  fw_cmd->add_option("--matroid", fw.matroid, "Project onto the Bergman fan of this circuit file")
      ->check(CLI::ExistingFile);
  fw_cmd->add_option("--output", fw.output, "Write here instead of stdout");

  ProjectArgs pr;
  auto* pr_cmd = app.add_subcommand("project", "Subdominant M-ultrametric of vectors");
  pr_cmd->add_option("--graphic", pr.graphic, "Graphic matroid of the complete graph on p vertices");
  pr_cmd->add_option("--matroid", pr.matroid, "Circuit file")->check(CLI::ExistingFile);
  pr_cmd->add_option("--vector", pr.vector, "One comma-separated vector");
  pr_cmd->add_option("--input", pr.input, "CSV file, one vector per row")->check(CLI::ExistingFile);
  pr_cmd->add_option("--output", pr.output, "Write here instead of stdout");
  pr_cmd->add_option("--threads", pr.threads, "Worker threads (0 = logical cores)")->capture_default_str();

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Gene trees under the multispecies coalescent");
  sim_cmd->add_option("--input", sim.input, "Newick file with one ultrametric species tree")
      ->required()
      ->check(CLI::ExistingFile);
  sim_cmd->add_option("--Ne", sim.Ne, "Effective population size")->required();
  sim_cmd->add_option("--count", sim.count, "Number of gene trees")->capture_default_str();
  sim_cmd->add_option("--sigma", sim.sigma, "Noise level relative to the shortest internal branch (csv only)")
      ->capture_default_str();
  sim_cmd->add_option("--format", sim.format, "newick or csv (dissimilarity vectors)")
      ->check(CLI::IsMember({"newick", "csv"}))
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
  sim_cmd->add_option("--output", sim.output, "Write here instead of stdout");

  ExperimentArgs ex;
  auto* ex_cmd = app.add_subcommand("experiment", "Species-tree estimation experiment from a config file");
  ex_cmd->add_option("--config", ex.config, "Experiment config")->required()->check(CLI::ExistingFile);
  ex_cmd->add_option("--output", ex.output, "Records CSV (default stdout)");
  ex_cmd->add_option("--seed", ex.seed, "Override master_seed");
  ex_cmd->add_option("--threads", ex.threads, "Worker threads (0 = logical cores)")->capture_default_str();

  ExperimentArgs sd;
  auto* sd_cmd = app.add_subcommand("safety-demo", "Noisy copies of the species tree, no coalescent");
  sd_cmd->add_option("--config", sd.config, "Experiment config; Ne is ignored")->required()->check(CLI::ExistingFile);
  sd_cmd->add_option("--output", sd.output, "Records CSV (default stdout)");
  sd_cmd->add_option("--summary", sd.summary, "Per (method, sigma, n) summary CSV");
  sd_cmd->add_option("--seed", sd.seed, "Override master_seed");
  sd_cmd->add_option("--threads", sd.threads, "Worker threads (0 = logical cores)")->capture_default_str();

  HausdorffArgs ha;
  auto* ha_cmd = app.add_subcommand("hausdorff", "Scaled shift of the Fermat-Weber point under small noise");
  ha_cmd->add_option("--n", ha.n, "Sample sizes")->delimiter(',')->capture_default_str();
  ha_cmd->add_option("--q", ha.q, "Dimensions")->delimiter(',')->capture_default_str();
  ha_cmd->add_option("--replicates", ha.replicates, "Replicates per cell")->capture_default_str();
  ha_cmd->add_option("--noise-scale", ha.noise_scale, "Perturbation box size")->capture_default_str();
  ha_cmd->add_option("--seed", ha.seed, "Master seed")->capture_default_str();
  ha_cmd->add_option("--output", ha.output, "CSV (default stdout)");
  ha_cmd->add_option("--threads", ha.threads, "Worker threads (0 = logical cores)")->capture_default_str();

  MomentsArgs mo;
  auto* mo_cmd = app.add_subcommand("moments", "Monte-Carlo mean and variance of the tropical norm of N(0, I_q)");
  mo_cmd->add_option("--q", mo.q, "Dimension")->capture_default_str();
  mo_cmd->add_option("--samples", mo.samples, "Draws (at least 1000)")->capture_default_str();
  mo_cmd->add_option("--seed", mo.seed, "Master seed")->capture_default_str();
  mo_cmd->add_option("--threads", mo.threads, "Worker threads (0 = logical cores)")->capture_default_str();
  mo_cmd->add_option("--eta", mo.eta, "Failure probability for the safety bound");
  mo_cmd->add_option("--n", mo.n, "Sample size for the safety bound");
  mo_cmd->add_option("--w-min", mo.w_min, "w_min of the target for the safety bound");
  mo_cmd->add_option("--output", mo.output, "Write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*fw_cmd) return cmd_fw(fw);
    if (*pr_cmd) return cmd_project(pr);
    if (*sim_cmd) return cmd_simulate(sim);
    if (*ex_cmd) return cmd_experiment(ex, false);
    if (*sd_cmd) return cmd_experiment(sd, true);
    if (*ha_cmd) return cmd_hausdorff(ha);
    if (*mo_cmd) return cmd_moments(mo);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: config key '" << e.key() << "': " << e.message() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
