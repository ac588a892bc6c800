#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <unistd.h>

#include "tropfw/config.hpp"
#include "tropfw/errors.hpp"
#include "tropfw/msc.hpp"

using namespace tropfw;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("tropfw_config_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }
};

std::string error_key(const TempDir& dir, const std::string& text) {
  try {
    load_experiment_config(dir.write("c.toml", text));
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<none>";
}

const std::string kTree = "species_newick = \"((A:1,B:1):1,C:2);\"\n";

}  // namespace

TEST_CASE("parse scalars, arrays, sections and comments") {
  const Config c = Config::parse(
      "# header\n"
      "name = \"a # not a comment\"  # trailing\n"
      "x = 1.5e3\n"
      "k = -7\n"
      "flag = true\n"
      "grid = [1, 2.5, 3]\n"
      "words = [\"a\", \"b\"]\n"
      "empty = []\n"
      "\n"
      "[run]\n"
      "seed = 18446744073709551615\n");
  CHECK(c.get_string("name") == "a # not a comment");
  CHECK(c.get_double("x") == 1500.0);
  CHECK(c.get_int("k") == -7);
  CHECK(c.get_double("k") == -7.0);
  CHECK(c.get_bool("flag"));
  CHECK(c.get_double_array("grid") == std::vector<double>{1, 2.5, 3});
  CHECK(c.get_string_array("words") == std::vector<std::string>{"a", "b"});
  CHECK(c.get_double_array("empty").empty());
  CHECK(c.get_u64("run.seed") == 18446744073709551615ULL);
  CHECK(c.has("run.seed"));
  CHECK_FALSE(c.has("seed"));
}

TEST_CASE("typed access errors name the key") {
  const Config c = Config::parse("s = \"x\"\nn = 2.5\na = [1, \"b\"]\n");
  auto key_of = [](auto&& f) {
    try {
      f();
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  CHECK(key_of([&] { c.get_double("s"); }) == "s");
  CHECK(key_of([&] { c.get_int("n"); }) == "n");
  CHECK(key_of([&] { c.get_string("n"); }) == "n");
  CHECK(key_of([&] { c.get_double_array("a"); }) == "a[1]");
  CHECK(key_of([&] { c.get_double("missing"); }) == "missing");
  CHECK(key_of([&] { c.get_double_array("n"); }) == "n");
  CHECK(key_of([&] { c.reject_unknown({"s", "n"}); }) == "a");
  CHECK_NOTHROW(c.reject_unknown({"s", "n", "a"}));
}

TEST_CASE("malformed text is a parse error with an offset") {
  auto offset_of = [](std::string_view text) {
    try {
      Config::parse(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::size_t{999};
  };
  CHECK(offset_of("a = 1\nb\n") == 6);
  CHECK(offset_of("a = 1\na = 2\n") == 6);
  CHECK(offset_of("[sec\n") == 0);
  CHECK(offset_of("a = [1, 2\n") == 0);
  CHECK(offset_of("a =\n") == 0);
  CHECK(offset_of("bad key = 1\n") == 0);
  CHECK(offset_of("a = \"open\n") == 0);
}

TEST_CASE("experiment schema") {
  TempDir dir;
  dir.write("tree.nwk", "((A:1,B:1):1,C:2);\n");
  const auto c = load_experiment_config(dir.write("ok.toml",
                                                  "species_tree = \"tree.nwk\"\n"
                                                  "Ne = [1, 2]\nsigma = [0, 0.5]\nn = [2, 3]\ntrials = 4\n"
                                                  "pool_size = 10\nmaster_seed = 9\nmethods = [\"sym_fw\", \"glass\"]\n"));
  CHECK(c.species_tree.leaf_count() == 3);
  CHECK(c.Ne == std::vector<double>{1, 2});
  CHECK(c.sigma == std::vector<double>{0, 0.5});
  CHECK(c.n == std::vector<int>{2, 3});
  CHECK(c.trials == 4);
  CHECK(c.pool_size == 10);
  CHECK(c.master_seed == 9);
  CHECK(c.methods == std::vector<Method>{Method::sym_fw, Method::glass});
  CHECK_FALSE(c.species_copies);

  const auto defaults = load_experiment_config(
      dir.write("d.toml", kTree + "Ne = [1]\nsigma = [0]\nn = [5]\ntrials = 1\nmaster_seed = 1\n"));
  CHECK(defaults.pool_size == 1000);
  CHECK(defaults.methods == all_methods());

  const auto safety = load_experiment_config(
      dir.write("s.toml", kTree + "mode = \"safety\"\nsigma = [0.5]\nn = [5]\ntrials = 1\nmaster_seed = 1\n"));
  CHECK(safety.species_copies);
  CHECK(safety.Ne.empty());

  const std::string base = "sigma = [0]\nn = [2]\ntrials = 1\nmaster_seed = 1\n";
  CHECK(error_key(dir, kTree + "Ne = [1]\n" + base + "typo = 3\n") == "typo");
  CHECK(error_key(dir, "Ne = [1]\n" + base) == "species_tree");
  CHECK(error_key(dir, kTree + base) == "Ne");
  CHECK(error_key(dir, kTree + "Ne = [0]\n" + base) == "Ne");
  CHECK(error_key(dir, kTree + "Ne = [1, \"x\"]\n" + base) == "Ne[1]");
  CHECK(error_key(dir, kTree + "Ne = [1]\nsigma = [-1]\nn = [2]\ntrials = 1\nmaster_seed = 1\n") == "sigma");
  CHECK(error_key(dir, kTree + "Ne = [1]\nsigma = [0]\nn = [2000]\ntrials = 1\nmaster_seed = 1\n") == "n");
  CHECK(error_key(dir, kTree + "Ne = [1]\nsigma = [0]\nn = [2]\ntrials = 0\nmaster_seed = 1\n") == "trials");
  CHECK(error_key(dir, kTree + "Ne = [1]\n" + base + "methods = [\"nj\"]\n") == "methods");
  CHECK(error_key(dir, kTree + "Ne = [1]\n" + base + "mode = \"other\"\n") == "mode");
  CHECK(error_key(dir, kTree + "mode = \"safety\"\nNe = [1]\n" + base) == "Ne");
  CHECK(error_key(dir, "species_newick = \"((A:1,B:2):1,C:2);\"\nNe = [1]\n" + base) == "species_newick");
  CHECK(error_key(dir, "species_tree = \"absent.nwk\"\nNe = [1]\n" + base) == "species_tree");
  CHECK(error_key(dir, kTree + "Ne = [1]\nsigma = [0]\nn = [2]\ntrials = 1\nmaster_seed = -1\n") == "master_seed");
}

TEST_CASE("shipped configs load") {
  const auto smoke = load_experiment_config(fs::path(TROPFW_DATA_DIR) / "smoke.toml");
  CHECK(smoke.species_tree.leaf_count() == 8);
  CHECK_FALSE(smoke.n.empty());
}
