#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "cogmap/dataset.hpp"
#include "cogmap/rng.hpp"
#include "cogmap/successor.hpp"

namespace cogmap::testing {

inline std::vector<double> random_vector(Rng& rng, std::size_t n, double scale = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = scale * rng.normal();
  return v;
}

inline std::vector<double> random_distribution(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  double sum = 0.0;
  for (double& x : v) sum += (x = rng.uniform(0.05, 1.0));
  for (double& x : v) x /= sum;
  return v;
}

inline TransitionMatrix random_chain(Rng& rng, std::size_t n) {
  TransitionMatrix t{Matrix(n, n), {}};
  for (std::size_t i = 0; i < n; ++i) {
    t.state_words.push_back("s" + std::to_string(i));
    auto row = random_distribution(rng, n);
    // Some exact zeros so the sampler sees sparse rows too.
    if (n > 2 && rng.bernoulli(0.3)) {
      const std::size_t z = static_cast<std::size_t>(rng.below(n));
      double keep = 1.0 - row[z];
      row[z] = 0.0;
      for (double& x : row) x /= keep;
    }
    for (std::size_t j = 0; j < n; ++j) t.values(i, j) = row[j];
  }
  return t;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("cogmap_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Three well-separated categories in 8-D: `train_per` training and
// `validation_per` validation words each. Writes toy.txt and toy.csv.
inline void write_toy_dataset(const std::filesystem::path& dir, int train_per, int validation_per,
                              std::uint64_t seed = 5) {
  Rng rng(seed);
  const std::vector<std::string> cats{"red", "green", "blue"};
  std::ofstream emb(dir / "toy.txt");
  std::ofstream lex(dir / "toy.csv");
  const int total = static_cast<int>(cats.size()) * (train_per + validation_per);
  emb << total << " 8\n";
  lex << "word,category,split\n";
  emb.precision(17);
  for (std::size_t c = 0; c < cats.size(); ++c) {
    for (int i = 0; i < train_per + validation_per; ++i) {
      const std::string word = cats[c] + std::to_string(i);
      emb << word;
      for (std::size_t d = 0; d < 8; ++d) emb << ' ' << (d % 3 == c ? 3.0 : 0.0) + 0.3 * rng.normal();
      emb << '\n';
      lex << word << ',' << cats[c] << ',' << (i < train_per ? "train" : "validation") << '\n';
    }
  }
}

}  // namespace cogmap::testing
