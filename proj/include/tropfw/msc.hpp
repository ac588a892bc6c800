#pragma once

// Multispecies-coalescent simulation, Gaussian noise, species-tree
// estimators, and the experiment runners built on them.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tropfw/phylo.hpp"
#include "tropfw/rng.hpp"
#include "tropfw/tropical.hpp"

namespace tropfw {

struct SpeciesModel {
  PhyloTree species_tree;  // ultrametric, lengths in generations
  double effective_population = 0.0;  // N_e, generations
};

// Node heights above the leaves of an ultrametric tree.
std::vector<double> node_heights(const PhyloTree& tree);

/// One gene tree under the multispecies coalescent with a single gene copy
/// per species. k lineages in a branch coalesce at rate k(k-1)/(2 N_e).
PhyloTree simulate_gene_tree(const SpeciesModel& model, CounterRng& rng);

struct NoiseSpec {
  double sigma = 0.0;
  double w_min_ref = 0.0;  // minimum internal branch length of the species tree
  double std_dev() const { return sigma * w_min_ref; }
};

/// Adds i.i.d. N(0, std_dev^2) to every entry; no clamping.
DissimilarityVector perturb(const DissimilarityVector& v, const NoiseSpec& spec, CounterRng& rng);

// Coordinatewise minimum (GLASS) or mean (STEAC), then single linkage.
PhyloTree glass_estimate(const std::vector<DissimilarityVector>& vectors);
PhyloTree steac_estimate(const std::vector<DissimilarityVector>& vectors);

/// Fermat-Weber point under `metric`, subdominant ultrametric, shift to
/// nonnegative entries, equidistant tree.
PhyloTree fw_estimate(const std::vector<DissimilarityVector>& vectors, Metric metric);

enum class Method { sym_fw, min_fw, max_fw, glass, steac };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);
inline const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods{Method::sym_fw, Method::min_fw, Method::max_fw, Method::glass, Method::steac};
  return methods;
}

PhyloTree estimate(Method method, const std::vector<DissimilarityVector>& vectors);

struct ExperimentRecord {
  Method method = Method::sym_fw;
  double Ne = 0.0;
  double sigma = 0.0;
  int n = 0;
  int trial = 0;
  int rf = 0;
  double tr_dist = 0.0;
  bool topology_match = false;
  std::uint64_t seed = 0;
  std::string topology;  // canonical Newick without lengths; not written to CSV
};

struct ExperimentConfig {
  PhyloTree species_tree;
  std::vector<double> Ne;
  std::vector<double> sigma;
  std::vector<int> n;
  int trials = 1;
  int pool_size = 1000;
  std::uint64_t master_seed = 0;
  std::vector<Method> methods = all_methods();
  // Safety-radius demonstration: the pool is copies of the species-tree
  // vector and Ne is ignored (recorded as 0).
  bool species_copies = false;
};

/// Reads the experiment schema (see README). Throws ConfigError with the key path.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Records ordered by (Ne, sigma, n, trial, method). The parallel runner
/// spreads gene trees, perturbations and trials over OpenMP threads and
/// returns exactly the serial result.
std::vector<ExperimentRecord> run_experiment_serial(const ExperimentConfig& config);
std::vector<ExperimentRecord> run_experiment_parallel(const ExperimentConfig& config, int threads = 0);

std::vector<ExperimentRecord> safety_radius_demo(ExperimentConfig config, int threads = 0);

void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

struct SafetySummary {
  Method method = Method::sym_fw;
  double sigma = 0.0;
  int n = 0;
  int trials = 0;
  int correct = 0;
  int distinct_topologies = 0;
  double proportion() const { return trials ? static_cast<double>(correct) / trials : 0.0; }
};

std::vector<SafetySummary> summarize_safety(const std::vector<ExperimentRecord>& records);
void write_safety_summary_csv(std::ostream& out, const std::vector<SafetySummary>& summaries);

struct HausdorffConfig {
  std::vector<int> n{2, 3, 4, 5, 6, 7};
  std::vector<int> q{2, 3, 4, 5, 6};
  int replicates = 2000;
  double noise_scale = 0.01;
  std::uint64_t seed = 0;
};

struct HausdorffRecord {
  int n = 0;
  int q = 0;
  int replicate = 0;
  double scaled_shift = 0.0;
};

/// Samples uniform on [0,1]^q, perturbations uniform on noise_scale*[0,1]^q.
std::vector<HausdorffRecord> hausdorff_experiment_serial(const HausdorffConfig& config);
std::vector<HausdorffRecord> hausdorff_experiment_parallel(const HausdorffConfig& config, int threads = 0);
void write_hausdorff_csv(std::ostream& out, const std::vector<HausdorffRecord>& records);

struct NormMoments {
  int q = 0;
  long samples = 0;
  double mean = 0.0;      // E(q) estimate
  double variance = 0.0;  // V(q) estimate
  double mean_se = 0.0;
  double variance_se = 0.0;
};

/// Monte-Carlo moments of ||Z||_tr for Z standard normal in R^q. Draws come
/// in fixed chunks with their own substreams, so the thread count does not
/// change the result.
NormMoments estimate_norm_moments(int q, long samples, std::uint64_t seed, int threads = 1);

/// Largest sigma allowed by the Chebyshev argument:
/// w / (2 (n E(q) + sqrt(n V(q) / eta))).
double stochastic_safety_sigma(double eta, int n, double w_min_tilde, const NormMoments& moments);

}  // namespace tropfw
