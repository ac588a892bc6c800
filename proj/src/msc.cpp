#include "tropfw/msc.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "tropfw/config.hpp"
#include "tropfw/fw_solver.hpp"
#include "tropfw/projection.hpp"

namespace tropfw {

std::vector<double> node_heights(const PhyloTree& tree) {
  const auto& nodes = tree.nodes();
  std::vector<double> height(nodes.size(), 0.0);
  std::vector<int> order{tree.root()};
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (int c : nodes[order[k]].children) order.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (int c : nodes[*it].children) height[*it] = std::max(height[*it], height[c] + nodes[c].length);
  }
  return height;
}

PhyloTree simulate_gene_tree(const SpeciesModel& model, CounterRng& rng) {
  if (!(model.effective_population > 0)) throw ArgumentError("simulate_gene_tree: N_e must be positive");
  const PhyloTree& species = model.species_tree;
  const auto& snodes = species.nodes();
  const std::vector<double> sheight = node_heights(species);

  std::vector<PhyloNode> gene;
  std::vector<double> gheight;
  std::vector<std::vector<int>> lineages(snodes.size());

  std::vector<int> order{species.root()};
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (int c : snodes[order[k]].children) order.push_back(c);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int s = *it;
    std::vector<int>& here = lineages[s];
    if (snodes[s].children.empty()) {
      gene.push_back(PhyloNode{snodes[s].label, 0.0, -1, {}});
      gheight.push_back(0.0);
      here.push_back(static_cast<int>(gene.size()) - 1);
    } else {
      for (int c : snodes[s].children) here.insert(here.end(), lineages[c].begin(), lineages[c].end());
    }
    const double top = s == species.root() ? std::numeric_limits<double>::infinity() : sheight[snodes[s].parent];
    double t = sheight[s];
    while (here.size() >= 2) {
      const double k = static_cast<double>(here.size());
      t += rng.exponential(k * (k - 1) / (2.0 * model.effective_population));
      if (t >= top) break;
      const std::size_t i = rng.below(here.size());
      std::size_t j = rng.below(here.size() - 1);
      if (j >= i) ++j;
      const int node = static_cast<int>(gene.size());
      gene.push_back(PhyloNode{"", 0.0, -1, {here[i], here[j]}});
      gheight.push_back(t);
      for (int c : gene[node].children) {
        gene[c].parent = node;
        gene[c].length = t - gheight[c];
      }
      here.erase(here.begin() + static_cast<long>(std::max(i, j)));
      here.erase(here.begin() + static_cast<long>(std::min(i, j)));
      here.push_back(node);
    }
  }
  return PhyloTree(std::move(gene), lineages[species.root()].front());
}

DissimilarityVector perturb(const DissimilarityVector& v, const NoiseSpec& spec, CounterRng& rng) {
  if (!(spec.sigma >= 0) || !(spec.w_min_ref >= 0)) throw ArgumentError("perturb: negative noise scale");
  DissimilarityVector out = v;
  const double sd = spec.std_dev();
  for (double& e : out.entries) e += sd * rng.normal();
  return out;
}

namespace {

void check_vectors(const std::vector<DissimilarityVector>& vectors) {
  if (vectors.empty()) throw ArgumentError("species-tree estimate of an empty sample");
  for (const auto& v : vectors) {
    if (v.labels != vectors.front().labels) throw ArgumentError("gene vectors have different labels");
  }
}

PhyloTree tree_of(const DissimilarityVector& d) {
  return tree_from_ultrametric(translate_nonnegative(single_linkage(d)));
}

}  // namespace

PhyloTree glass_estimate(const std::vector<DissimilarityVector>& vectors) {
  check_vectors(vectors);
  DissimilarityVector m = vectors.front();
  for (const auto& v : vectors) {
    for (std::size_t k = 0; k < m.entries.size(); ++k) m.entries[k] = std::min(m.entries[k], v.entries[k]);
  }
  return tree_of(m);
}

PhyloTree steac_estimate(const std::vector<DissimilarityVector>& vectors) {
  check_vectors(vectors);
  DissimilarityVector m = vectors.front();
  std::fill(m.entries.begin(), m.entries.end(), 0.0);
  for (const auto& v : vectors) {
    for (std::size_t k = 0; k < m.entries.size(); ++k) m.entries[k] += v.entries[k];
  }
  for (double& e : m.entries) e /= static_cast<double>(vectors.size());
  return tree_of(m);
}

PhyloTree fw_estimate(const std::vector<DissimilarityVector>& vectors, Metric metric) {
  check_vectors(vectors);
  std::vector<TropicalPoint> points;
  points.reserve(vectors.size());
  for (const auto& v : vectors) points.push_back(v.as_point());
  const FwSolution fw = fermat_weber(points, metric);
  return tree_of(DissimilarityVector::from_point(vectors.front().labels, fw.point));
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::sym_fw: return "sym_fw";
    case Method::min_fw: return "min_fw";
    case Method::max_fw: return "max_fw";
    case Method::glass: return "glass";
    case Method::steac: return "steac";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  for (Method m : all_methods()) {
    if (to_string(m) == text) return m;
  }
  throw ArgumentError("unknown method '" + std::string(text) + "'");
}

PhyloTree estimate(Method method, const std::vector<DissimilarityVector>& vectors) {
  switch (method) {
    case Method::sym_fw: return fw_estimate(vectors, Metric::symmetric);
    case Method::min_fw: return fw_estimate(vectors, Metric::min_plus);
    case Method::max_fw: return fw_estimate(vectors, Metric::max_plus);
    case Method::glass: return glass_estimate(vectors);
    case Method::steac: return steac_estimate(vectors);
  }
  throw ArgumentError("unknown method");
}

namespace {

// Runs body(i) for i in [0, count); the parallel branch rethrows the
// exception of the lowest failing index.
template <class Body>
void for_each_index(long count, bool parallel, int threads, Body&& body) {
  if (!parallel) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(team) schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string topology_key(const PhyloTree& tree) {
  std::string key;
  for (const Clade& c : topology_signature(tree)) {
    key.push_back('{');
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) key.push_back(',');
      key += c[k];
    }
    key.push_back('}');
  }
  return key;
}

void validate(const ExperimentConfig& c) {
  if (c.sigma.empty() || c.n.empty()) throw ArgumentError("experiment: sigma and n grids must be nonempty");
  if (!c.species_copies && c.Ne.empty()) throw ArgumentError("experiment: Ne grid must be nonempty");
  if (c.trials < 1 || c.pool_size < 1) throw ArgumentError("experiment: trials and pool_size must be positive");
  if (c.methods.empty()) throw ArgumentError("experiment: no methods selected");
  for (double ne : c.Ne) {
    if (!c.species_copies && !(ne > 0)) throw ArgumentError("experiment: Ne must be positive");
  }
  for (double s : c.sigma) {
    if (!(s >= 0)) throw ArgumentError("experiment: sigma must be nonnegative");
  }
  for (int n : c.n) {
    if (n < 1) throw ArgumentError("experiment: sample size must be positive");
    if (n > c.pool_size) throw ArgumentError("experiment: sample size " + std::to_string(n) + " exceeds pool size");
  }
}

std::vector<ExperimentRecord> run_experiment_impl(const ExperimentConfig& config, bool parallel, int threads) {
  validate(config);
  const DissimilarityVector truth = cophenetic_vector(config.species_tree);
  const TropicalPoint truth_point = truth.as_point();
  const NoiseSpec base_noise{0.0, min_internal_branch_length(config.species_tree)};
  const std::vector<double> ne_grid = config.species_copies ? std::vector<double>{0.0} : config.Ne;
  const long pool = config.pool_size;
  const std::size_t methods = config.methods.size();

  std::vector<ExperimentRecord> records;
  for (double ne : ne_grid) {
    std::vector<DissimilarityVector> genes(pool);
    const SpeciesModel model{config.species_tree, ne};
    for_each_index(pool, parallel, threads, [&](long g) {
      if (config.species_copies) {
        genes[g] = truth;
      } else {
        CounterRng rng(derive_seed(config.master_seed, {1, seed_coordinate(ne), static_cast<std::uint64_t>(g)}));
        genes[g] = cophenetic_vector(simulate_gene_tree(model, rng));
      }
    });

    for (double sigma : config.sigma) {
      NoiseSpec noise = base_noise;
      noise.sigma = sigma;
      std::vector<DissimilarityVector> noisy(pool);
      for_each_index(pool, parallel, threads, [&](long g) {
        CounterRng rng(derive_seed(config.master_seed,
                                   {2, seed_coordinate(ne), seed_coordinate(sigma), static_cast<std::uint64_t>(g)}));
        noisy[g] = perturb(genes[g], noise, rng);
      });

      const long tasks = static_cast<long>(config.n.size()) * config.trials;
      std::vector<ExperimentRecord> block(static_cast<std::size_t>(tasks) * methods);
      for_each_index(tasks, parallel, threads, [&](long task) {
        const int n = config.n[task / config.trials];
        const int trial = static_cast<int>(task % config.trials);
        const std::uint64_t seed =
            derive_seed(config.master_seed, {3, seed_coordinate(ne), seed_coordinate(sigma),
                                             static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)});
        CounterRng rng(seed);
        std::vector<long> index(pool);
        std::iota(index.begin(), index.end(), 0L);
        std::vector<DissimilarityVector> sample;
        sample.reserve(n);
        for (int k = 0; k < n; ++k) {
          const long pick = k + static_cast<long>(rng.below(static_cast<std::uint64_t>(pool - k)));
          std::swap(index[k], index[pick]);
          sample.push_back(noisy[index[k]]);
        }
        for (std::size_t m = 0; m < methods; ++m) {
          const PhyloTree tree = estimate(config.methods[m], sample);
          ExperimentRecord& r = block[static_cast<std::size_t>(task) * methods + m];
          r.method = config.methods[m];
          r.Ne = ne;
          r.sigma = sigma;
          r.n = n;
          r.trial = trial;
          r.rf = rf_distance(tree, config.species_tree);
          r.tr_dist = tropical_distance(cophenetic_vector(tree).as_point(), truth_point);
          r.topology_match = r.rf == 0;
          r.seed = seed;
          r.topology = topology_key(tree);
        }
      });
      records.insert(records.end(), std::make_move_iterator(block.begin()), std::make_move_iterator(block.end()));
    }
  }
  return records;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment_serial(const ExperimentConfig& config) {
  return run_experiment_impl(config, false, 1);
}

std::vector<ExperimentRecord> run_experiment_parallel(const ExperimentConfig& config, int threads) {
  return run_experiment_impl(config, true, threads);
}

std::vector<ExperimentRecord> safety_radius_demo(ExperimentConfig config, int threads) {
  config.species_copies = true;
  config.Ne.clear();
  return run_experiment_parallel(config, threads);
}

void write_records_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << "method,Ne,sigma,n,trial,rf,tr_dist,topology_match,seed\n";
  for (const auto& r : records) {
    out << to_string(r.method) << ',' << format_number(r.Ne) << ',' << format_number(r.sigma) << ',' << r.n << ','
        << r.trial << ',' << r.rf << ',' << format_number(r.tr_dist) << ',' << (r.topology_match ? 1 : 0) << ','
        << r.seed << '\n';
  }
}

std::vector<SafetySummary> summarize_safety(const std::vector<ExperimentRecord>& records) {
  std::vector<SafetySummary> out;
  std::vector<std::set<std::string>> topologies;
  for (const auto& r : records) {
    auto it = std::find_if(out.begin(), out.end(), [&](const SafetySummary& s) {
      return s.method == r.method && s.sigma == r.sigma && s.n == r.n;
    });
    if (it == out.end()) {
      out.push_back(SafetySummary{r.method, r.sigma, r.n, 0, 0, 0});
      topologies.emplace_back();
      it = out.end() - 1;
    }
    const std::size_t k = static_cast<std::size_t>(it - out.begin());
    ++it->trials;
    it->correct += r.topology_match ? 1 : 0;
    topologies[k].insert(r.topology);
    it->distinct_topologies = static_cast<int>(topologies[k].size());
  }
  return out;
}

void write_safety_summary_csv(std::ostream& out, const std::vector<SafetySummary>& summaries) {
  out << "method,sigma,n,trials,correct,proportion,distinct_topologies\n";
  for (const auto& s : summaries) {
    out << to_string(s.method) << ',' << format_number(s.sigma) << ',' << s.n << ',' << s.trials << ',' << s.correct
        << ',' << format_number(s.proportion()) << ',' << s.distinct_topologies << '\n';
  }
}

namespace {

std::vector<HausdorffRecord> hausdorff_impl(const HausdorffConfig& config, bool parallel, int threads) {
  if (config.replicates < 1) throw ArgumentError("hausdorff: replicates must be positive");
  if (!(config.noise_scale > 0)) throw ArgumentError("hausdorff: noise scale must be positive");
  for (int n : config.n) {
    if (n < 1) throw ArgumentError("hausdorff: sample sizes must be positive");
  }
  for (int q : config.q) {
    if (q < 2) throw ArgumentError("hausdorff: dimensions must be at least 2");
  }
  const long cells = static_cast<long>(config.n.size() * config.q.size());
  const long total = cells * config.replicates;
  std::vector<HausdorffRecord> out(static_cast<std::size_t>(total));
  for_each_index(total, parallel, threads, [&](long task) {
    const long cell = task / config.replicates;
    const int rep = static_cast<int>(task % config.replicates);
    const int n = config.n[cell / config.q.size()];
    const int q = config.q[cell % config.q.size()];
    CounterRng rng(derive_seed(config.seed, {4, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(q),
                                             static_cast<std::uint64_t>(rep)}));
    std::vector<TropicalPoint> samples;
    std::vector<std::vector<double>> eps(n, std::vector<double>(q));
    for (int i = 0; i < n; ++i) {
      std::vector<double> v(q);
      for (double& x : v) x = rng.uniform();
      samples.emplace_back(std::move(v));
    }
    for (auto& e : eps) {
      for (double& x : e) x = config.noise_scale * rng.uniform();
    }
    out[task] = HausdorffRecord{n, q, rep, hausdorff_shift(samples, eps)};
  });
  return out;
}

}  // namespace

std::vector<HausdorffRecord> hausdorff_experiment_serial(const HausdorffConfig& config) {
  return hausdorff_impl(config, false, 1);
}

std::vector<HausdorffRecord> hausdorff_experiment_parallel(const HausdorffConfig& config, int threads) {
  return hausdorff_impl(config, true, threads);
}

void write_hausdorff_csv(std::ostream& out, const std::vector<HausdorffRecord>& records) {
  out << "n,q,replicate,scaled_shift\n";
  for (const auto& r : records) out << r.n << ',' << r.q << ',' << r.replicate << ',' << format_number(r.scaled_shift) << '\n';
}

NormMoments estimate_norm_moments(int q, long samples, std::uint64_t seed, int threads) {
  if (q < 2) throw ArgumentError("estimate_norm_moments: q must be at least 2");
  if (samples < 1000) throw ArgumentError("estimate_norm_moments: at least 1000 samples required");
  constexpr long kChunk = 256;
  const long chunks = (samples + kChunk - 1) / kChunk;
  std::vector<double> norms(static_cast<std::size_t>(samples));
  for_each_index(chunks, threads != 1, threads, [&](long c) {
    CounterRng rng(derive_seed(seed, {5, static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(c)}));
    const long end = std::min(samples, (c + 1) * kChunk);
    for (long s = c * kChunk; s < end; ++s) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (int k = 0; k < q; ++k) {
        const double z = rng.normal();
        lo = std::min(lo, z);
        hi = std::max(hi, z);
      }
      norms[s] = hi - lo;
    }
  });

  NormMoments m;
  m.q = q;
  m.samples = samples;
  const double count = static_cast<double>(samples);
  m.mean = std::accumulate(norms.begin(), norms.end(), 0.0) / count;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : norms) {
    const double d = (x - m.mean) * (x - m.mean);
    m2 += d;
    m4 += d * d;
  }
  m.variance = m2 / (count - 1);
  m.mean_se = std::sqrt(m.variance / count);
  m.variance_se = std::sqrt(std::max(0.0, m4 / count - (m2 / count) * (m2 / count)) / count);
  return m;
}

double stochastic_safety_sigma(double eta, int n, double w_min_tilde, const NormMoments& moments) {
  if (!(eta > 0 && eta < 1)) throw ArgumentError("stochastic_safety_sigma: eta must lie in (0, 1)");
  if (n < 1) throw ArgumentError("stochastic_safety_sigma: n must be positive");
  if (!(w_min_tilde > 0)) throw ArgumentError("stochastic_safety_sigma: w_min must be positive");
  if (!(moments.mean > 0) || !(moments.variance > 0)) throw ArgumentError("stochastic_safety_sigma: moments must be positive");
  const double dn = static_cast<double>(n);
  return w_min_tilde / (2.0 * (dn * moments.mean + std::sqrt(dn * moments.variance / eta)));
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  const Config c = Config::load(path);
  c.reject_unknown({"species_tree", "species_newick", "Ne", "sigma", "n", "trials", "pool_size", "master_seed",
                    "methods", "mode"});
  ExperimentConfig out;
  if (c.has("species_tree") == c.has("species_newick")) {
    throw ConfigError("species_tree", "give exactly one of species_tree (file) or species_newick (inline)");
  }
  try {
    if (c.has("species_tree")) {
      std::filesystem::path tree_path = c.get_string("species_tree");
      if (tree_path.is_relative()) tree_path = c.base_directory() / tree_path;
      const auto trees = read_newick_file(tree_path);
      if (trees.size() != 1) throw ConfigError("species_tree", "file must hold exactly one tree");
      out.species_tree = trees.front();
    } else {
      out.species_tree = parse_newick(c.get_string("species_newick"));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(c.has("species_tree") ? "species_tree" : "species_newick", e.what());
  }
  if (!is_ultrametric(cophenetic_vector(out.species_tree), 1e-6)) {
    throw ConfigError(c.has("species_tree") ? "species_tree" : "species_newick", "species tree is not ultrametric");
  }

  const std::string mode = c.has("mode") ? c.get_string("mode") : "experiment";
  if (mode != "experiment" && mode != "safety") throw ConfigError("mode", "expected \"experiment\" or \"safety\"");
  out.species_copies = mode == "safety";
  if (!out.species_copies) out.Ne = c.get_double_array("Ne");
  else if (c.has("Ne")) throw ConfigError("Ne", "not used when mode = \"safety\"");
  out.sigma = c.get_double_array("sigma");
  for (std::int64_t n : c.get_int_array("n")) {
    if (n < 1 || n > std::numeric_limits<int>::max()) throw ConfigError("n", "sample sizes must be positive");
    out.n.push_back(static_cast<int>(n));
  }
  out.trials = static_cast<int>(c.get_int("trials"));
  out.pool_size = c.has("pool_size") ? static_cast<int>(c.get_int("pool_size")) : 1000;
  out.master_seed = c.get_u64("master_seed");
  if (c.has("methods")) {
    out.methods.clear();
    for (const std::string& m : c.get_string_array("methods")) {
      try {
        out.methods.push_back(parse_method(m));
      } catch (const ArgumentError& e) {
        throw ConfigError("methods", e.what());
      }
    }
  }
  if (out.trials < 1) throw ConfigError("trials", "must be positive");
  if (out.pool_size < 1) throw ConfigError("pool_size", "must be positive");
  for (double ne : out.Ne) {
    if (!(ne > 0)) throw ConfigError("Ne", "effective population sizes must be positive");
  }
  for (double s : out.sigma) {
    if (!(s >= 0)) throw ConfigError("sigma", "noise levels must be nonnegative");
  }
  for (int n : out.n) {
    if (n > out.pool_size) throw ConfigError("n", "sample size " + std::to_string(n) + " exceeds pool_size");
  }
  try {
    validate(out);
  } catch (const ArgumentError& e) {
    throw ConfigError("experiment", e.what());
  }
  return out;
}

}  // namespace tropfw
