// Acceptance criteria 1-12. One PASS/FAIL line per criterion; exit status 1
// if any criterion fails.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <unistd.h>

#include "../unit/support.hpp"
#include "tropfw/fw_solver.hpp"
#include "tropfw/msc.hpp"
#include "tropfw/phylo.hpp"

using namespace tropfw;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Settings {
  fs::path data;
  fs::path cli;
  std::uint64_t hausdorff_seed = 7;
  int threads = 0;
};

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Appends the runtime and folds a time limit into the verdict.
Outcome timed(Outcome o, const Stopwatch& clock, double limit) {
  const double s = clock.seconds();
  if (limit > 0 && s >= limit) {
    o.pass = false;
    o.detail += fmt("; runtime %.1f s exceeds %.0f s", s, limit);
  }
  return o;
}

PhyloTree load_tree(const Settings& s, const char* name) { return read_newick_file(s.data / name).front(); }

// Wilson score interval at 95%.
std::pair<double, double> wilson(int k, int n) {
  const double z = 1.959963984540054;
  const double p = static_cast<double>(k) / n;
  const double centre = (p + z * z / (2 * n)) / (1 + z * z / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4.0 * n * n)) / (1 + z * z / n);
  return {centre - half, centre + half};
}

Outcome distance_identity() {
  Stopwatch clock;
  std::mt19937_64 gen(101);
  double worst = 0;
  long pairs = 0;
  const int qs[] = {3, 10, 28};
  for (long i = 0; i < 100000; ++i) {
    const int q = qs[i % 3];
    const auto x = testing::random_point(gen, q);
    const auto y = testing::random_point(gen, q);
    const double err = std::abs(tropical_distance(x, y) - (min_plus_distance(x, y) + max_plus_distance(x, y)) / q);
    worst = std::max(worst, err);
    ++pairs;
  }
  return timed({worst <= 1e-12, fmt("max |d_tr - (d_min + d_max)/q| = %.2e over %ld pairs, q in {3,10,28}", worst, pairs)},
               clock, 5);
}

Outcome projection_routes() {
  Stopwatch clock;
  std::mt19937_64 gen(102);
  int mismatches = 0;
  int total = 0;
  for (int p : {3, 4, 5}) {
    const Matroid m = graphic_matroid(p);
    for (int t = 0; t < 200; ++t) {
      const auto x = testing::random_exact_point(gen, m.ground_size());
      const auto fast = project_ultrametric_fast(p, x);
      const auto flats = project_bergman(m, x, ProjectionRoute::flats);
      mismatches += fast == flats ? 0 : 1;
      ++total;
    }
  }
  return timed({mismatches == 0, fmt("%d mismatches in %d exact comparisons, p in {3,4,5}", mismatches, total)}, clock,
               30);
}

Outcome nonexpansive() {
  std::mt19937_64 gen(103);
  const Matroid m = graphic_matroid(4);
  int violations = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < 10000; ++t) {
    const auto x = testing::random_point(gen, 6);
    const auto y = testing::random_point(gen, 6);
    const double excess =
        tropical_distance(project_bergman(m, x), project_bergman(m, y)) - tropical_distance(x, y);
    worst = std::max(worst, excess);
    violations += excess <= 1e-12 ? 0 : 1;
  }
  return {violations == 0, fmt("%d violations in 10000 pairs, p = 4; max d(pi x, pi y) - d(x, y) = %.2e", violations, worst)};
}

Outcome projection_safety() {
  std::mt19937_64 gen(104);
  int failures = 0;
  int witness_failures = 0;
  int trials = 0;
  for (int p : {4, 5}) {
    const Matroid m = graphic_matroid(p);
    for (int t = 0; t < 1000; ++t) {
      const auto w = testing::random_generic_ultrametric(gen, p);
      const double gap = w_min(m, w);
      std::uniform_real_distribution<double> u(-0.499 * gap, 0.499 * gap);
      std::vector<double> x(w.coords());
      for (double& c : x) c += u(gen);
      const auto sw = cone_signature(m, w);
      failures += cone_signature(m, project_bergman(m, TropicalPoint(x))) == sw ? 0 : 1;

      const auto b = boundary_witness(m, w);
      const auto sb = cone_signature(m, b);
      const bool reached = std::abs(tropical_distance(w, b) - gap) <= 1e-9 * std::max(1.0, gap);
      const bool coarser = signature_leq(sb, sw) && !signature_leq(sw, sb);
      witness_failures += reached && coarser && is_m_ultrametric(m, b) ? 0 : 1;
      ++trials;
    }
  }
  return {failures == 0 && witness_failures == 0,
          fmt("%d cone changes and %d witness failures in %d trials, p in {4,5}", failures, witness_failures, trials)};
}

Outcome median_theorem() {
  std::mt19937_64 gen(105);
  const Matroid m = graphic_matroid(4);
  int failures = 0;
  int total = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int n : {3, 5, 7}) {
    for (int t = 0; t < 200; ++t) {
      std::vector<TropicalPoint> s;
      for (int i = 0; i < n; ++i) s.push_back(project_bergman(m, testing::random_point(gen, 6)));
      const auto r = fw_m_ultrametric(m, s, Metric::symmetric);
      const double gap = fermat_weber_objective(s, r.projected.point, Metric::symmetric) -
                         fermat_weber_objective(s, r.raw.point, Metric::symmetric);
      worst = std::max(worst, gap);
      failures += gap <= 1e-9 && is_m_ultrametric(m, r.projected.point) ? 0 : 1;
      ++total;
    }
  }
  return {failures == 0,
          fmt("%d failures in %d samples, p = 4, n in {3,5,7}; max f(pi x*) - f(x*) = %.2e", failures, total, worst)};
}

Outcome hausdorff(const Settings& settings) {
  Stopwatch clock;
  HausdorffConfig c;
  c.seed = settings.hausdorff_seed;
  const auto records = hausdorff_experiment_parallel(c, settings.threads);
  double worst = 0;
  std::map<std::pair<int, int>, std::pair<double, int>> sums;
  for (const auto& r : records) {
    worst = std::max(worst, r.scaled_shift);
    auto& cell = sums[{r.n, r.q}];
    cell.first += r.scaled_shift;
    cell.second += 1;
  }
  int decreasing = 0;
  int pairs = 0;
  std::string means;
  for (int n : c.n) {
    means += fmt(" n=%d:", n);
    for (std::size_t k = 0; k < c.q.size(); ++k) {
      const auto& cell = sums[{n, c.q[k]}];
      const double mean = cell.first / cell.second;
      means += fmt("%s%.3f", k ? "," : "", mean);
      if (k > 0) {
        const auto& prev = sums[{n, c.q[k - 1]}];
        decreasing += mean < prev.first / prev.second ? 1 : 0;
        ++pairs;
      }
    }
  }
  const double share = static_cast<double>(decreasing) / pairs;
  const bool pass = worst <= 2 + 1e-6 && share >= 0.8;
  return timed({pass, fmt("max scaled shift %.4f (bound 2); means decrease in q for %d/%d adjacent pairs (%.0f%%, need 80%%);",
                          worst, decreasing, pairs, 100 * share) +
                          " means by q=2..6:" + means},
               clock, 600);
}

Outcome reverse_lipschitz() {
  std::mt19937_64 gen(107);
  const double step = 0.02;
  int violations = 0;
  int probes = 0;
  double tightest = std::numeric_limits<double>::infinity();
  for (int n : {2, 3}) {
    for (int instance = 0; instance < 20; ++instance) {
      std::vector<TropicalPoint> s;
      for (int i = 0; i < n; ++i) s.push_back(testing::random_point(gen, 3, -2, 2));
      const auto oracle = fw_set_oracle(s, step);
      for (int k = 0; k < 100; ++k) {
        const auto x = testing::random_point(gen, 3, -4, 4);
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& p : oracle.points) dist = std::min(dist, tropical_distance(x, p));
        const double margin =
            fermat_weber_objective(s, x, Metric::symmetric) - oracle.lp_minimum + 2 * step - dist / n;
        tightest = std::min(tightest, margin);
        violations += margin >= -1e-12 ? 0 : 1;
        ++probes;
      }
    }
  }
  return {violations == 0, fmt("%d violations in %d probes, q = 3, n in {2,3}, grid step %.2f; smallest margin %.4f",
                               violations, probes, step, tightest)};
}

Outcome combinatorial_derivative() {
  std::mt19937_64 gen(108);
  int not_integral = 0;
  int fd_failures = 0;
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    const int q = 3 + t % 4;
    const int n = 1 + t % 6;
    std::vector<ExactPoint> s;
    for (int i = 0; i < n; ++i) s.push_back(testing::random_exact_point(gen, q, 12));
    const auto y = testing::random_exact_point(gen, q, 12);
    std::vector<int> u(q);
    do {
      for (int& b : u) b = static_cast<int>(gen() & 1U);
    } while (std::all_of(u.begin(), u.end(), [&](int b) { return b == u[0]; }));
    const Rational d = directional_derivative(s, y, u);
    const Rational scaled = d * n;
    not_integral += scaled.get_den() == 1 ? 0 : 1;

    std::vector<TropicalPoint> sd;
    for (const auto& v : s) sd.push_back(to_double_point(v));
    const auto yd = to_double_point(y);
    const double h = 1e-6;
    std::vector<double> moved(yd.coords());
    for (int a = 0; a < q; ++a) moved[a] += h * u[a];
    const double fd = (fermat_weber_objective(sd, TropicalPoint(moved), Metric::symmetric) -
                       fermat_weber_objective(sd, yd, Metric::symmetric)) /
                      h;
    const double err = std::abs(fd - d.get_d());
    worst = std::max(worst, err);
    fd_failures += err <= 1e-4 ? 0 : 1;
  }
  return {not_integral == 0 && fd_failures == 0,
          fmt("n * derivative non-integral in %d of 1000 cases; finite-difference failures %d (max error %.2e)",
              not_integral, fd_failures, worst)};
}

Outcome msc_oracles() {
  Stopwatch clock;
  const int reps = 10000;
  const double ne = 500;

  const double tau = 400;
  const SpeciesModel three{parse_newick("((A:600,B:600):400,C:1000);"), ne};
  const CladeSet species = topology_signature(three.species_tree);
  int discordant = 0;
  for (int i = 0; i < reps; ++i) {
    CounterRng rng(derive_seed(109, {0, static_cast<std::uint64_t>(i)}));
    discordant += topology_signature(simulate_gene_tree(three, rng)) == species ? 0 : 1;
  }
  const double p = 2.0 / 3.0 * std::exp(-tau / ne);
  const double p_hat = static_cast<double>(discordant) / reps;
  const double p_se = std::sqrt(p * (1 - p) / reps);
  const double z_discord = (p_hat - p) / p_se;

  const double d = 1000;
  const SpeciesModel two{parse_newick("(A:1000,B:1000);"), ne};
  double sum = 0;
  double sum2 = 0;
  for (int i = 0; i < reps; ++i) {
    CounterRng rng(derive_seed(109, {1, static_cast<std::uint64_t>(i)}));
    const double depth = cophenetic_vector(simulate_gene_tree(two, rng)).entries[0] / 2;
    sum += depth;
    sum2 += depth * depth;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum2 / reps - mean * mean) / reps);
  const double z_depth = (mean - (d + ne)) / se;

  return timed({std::abs(z_discord) <= 3 && std::abs(z_depth) <= 3,
                fmt("discordance %.4f vs %.4f (z = %.2f); mean depth %.1f vs %.1f (z = %.2f); 1e4 trees each", p_hat, p,
                    z_discord, mean, d + ne, z_depth)},
               clock, 60);
}

Outcome safety_demo(const Settings& settings) {
  const PhyloTree t1 = load_tree(settings, "t1.nwk");

  ExperimentConfig demo;
  demo.species_tree = t1;
  demo.sigma = {0.5};
  demo.n = {5, 25, 155};
  demo.trials = 30;
  demo.master_seed = 110;
  demo.species_copies = true;
  demo.methods = {Method::sym_fw};
  std::string counts;
  bool all_correct = true;
  for (const auto& s : summarize_safety(safety_radius_demo(demo, settings.threads))) {
    counts += fmt(" n=%d:%d/%d", s.n, s.correct, s.trials);
    all_correct = all_correct && s.correct == s.trials;
  }

  // Trend: correct-topology proportion at n = 155 not below n = 5 (Wilson intervals may overlap).
  ExperimentConfig trend;
  trend.species_tree = t1;
  trend.Ne = {30000};
  trend.sigma = {0, 1, 2};
  trend.n = {5, 155};
  trend.trials = 30;
  trend.master_seed = 111;
  const auto summary = summarize_safety(run_experiment_parallel(trend, settings.threads));
  std::map<std::tuple<Method, double, int>, std::pair<int, int>> cells;
  for (const auto& s : summary) cells[{s.method, s.sigma, s.n}] = {s.correct, s.trials};
  int trend_failures = 0;
  std::string worst;
  for (Method m : trend.methods) {
    for (double sigma : trend.sigma) {
      const auto [k5, n5] = cells[{m, sigma, 5}];
      const auto [k155, n155] = cells[{m, sigma, 155}];
      const bool up = k155 * n5 >= k5 * n155;
      const bool overlap = wilson(k155, n155).second >= wilson(k5, n5).first;
      if (!up && !overlap) {
        ++trend_failures;
        worst += fmt(" %s sigma=%g: %d/%d -> %d/%d", std::string(to_string(m)).c_str(), sigma, k5, n5, k155, n155);
      }
      if (!up && overlap) {
        worst += fmt(" (%s sigma=%g dips within CI: %d/%d -> %d/%d)", std::string(to_string(m)).c_str(), sigma, k5, n5,
                     k155, n155);
      }
    }
  }
  return {all_correct && trend_failures == 0,
          "sym FW at sigma 1/2 on T1, 30 trials:" + counts +
              fmt("; coalescent trend n=5 -> 155 at sigma in {0,1,2}, Ne = 30000: %d failures", trend_failures) + worst};
}

Outcome moments() {
  Stopwatch clock;
  const auto two = estimate_norm_moments(2, 100000, 112);
  const double target = 2 / std::sqrt(std::numbers::pi);
  const double z = (two.mean - target) / two.mean_se;
  const int q = 10000;
  const auto big = estimate_norm_moments(q, 10000, 113);
  const double ratio = big.mean / std::sqrt(std::log(static_cast<double>(q)));
  const double rel = std::abs(ratio / (2 * std::numbers::sqrt2) - 1);
  return timed({std::abs(z) <= 3 && rel <= 0.15 && two.variance > 0 && big.variance > 0,
                fmt("E(2) = %.4f vs %.4f (z = %.2f); E(1e4)/sqrt(log 1e4) = %.3f vs %.3f (%.1f%% off, limit 15%%)",
                    two.mean, target, z, ratio, 2 * std::numbers::sqrt2, 100 * rel)},
               clock, 60);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const Settings& settings) {
  if (settings.cli.empty()) return {false, "no --cli binary given"};
  const fs::path dir = fs::temp_directory_path() / ("tropfw_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::ofstream(dir / "config.toml") << "species_tree = \"" << (settings.data / "t1.nwk").string() << "\"\n"
                                     << "Ne = [30000, 90000]\nsigma = [0, 1]\nn = [5, 15]\ntrials = 3\n"
                                     << "pool_size = 60\nmaster_seed = 1\n";
  std::vector<std::string> outputs;
  std::string detail;
  bool ran = true;
  for (int threads : {1, 2, 4}) {
    const fs::path out = dir / ("records_" + std::to_string(threads) + ".csv");
    const std::string command = "\"" + settings.cli.string() + "\" experiment --config \"" +
                                (dir / "config.toml").string() + "\" --seed 12345 --threads " +
                                std::to_string(threads) + " --output \"" + out.string() + "\"";
    if (std::system(command.c_str()) != 0) {
      ran = false;
      detail = "command failed: " + command;
      break;
    }
    outputs.push_back(slurp(out));
  }
  fs::remove_all(dir);
  if (!ran) return {false, detail};
  const bool same = outputs[0] == outputs[1] && outputs[1] == outputs[2] && !outputs[0].empty();
  long lines = std::count(outputs[0].begin(), outputs[0].end(), '\n');
  return {same, fmt("CLI experiment with --seed 12345 at --threads 1, 2, 4: %s (%ld lines, %zu bytes)",
                    same ? "byte-identical" : "outputs differ", lines, outputs[0].size())};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  Settings settings;
  std::vector<int> only;
  app.add_option("--data", settings.data, "Directory holding t1.nwk")->required()->check(CLI::ExistingDirectory);
  app.add_option("--cli", settings.cli, "tropfw binary, for the determinism criterion")->check(CLI::ExistingFile);
  app.add_option("--only", only, "Run only these criteria");
  app.add_option("--hausdorff-seed", settings.hausdorff_seed, "Seed for the Hausdorff grid");
  app.add_option("--threads", settings.threads, "Worker threads (0 = logical cores)");
  CLI11_PARSE(app, argc, argv);
  settings.data = fs::absolute(settings.data);
  if (!settings.cli.empty()) settings.cli = fs::absolute(settings.cli);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"distance identity", distance_identity},
      {"projection routes agree", projection_routes},
      {"non-expansive projection", nonexpansive},
      {"projection safety radius", projection_safety},
      {"Fermat-Weber median theorem", median_theorem},
      {"scaled Fermat-Weber shift", [&] { return hausdorff(settings); }},
      {"reverse Lipschitz", reverse_lipschitz},
      {"combinatorial derivative", combinatorial_derivative},
      {"coalescent oracles", msc_oracles},
      {"safety-radius demonstration", [&] { return safety_demo(settings); }},
      {"norm moments", moments},
      {"determinism", [&] { return determinism(settings); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Stopwatch clock;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2d %s  %s: %s [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), clock.seconds());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
