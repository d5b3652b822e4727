// Copyright 2026 The Voiceind Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VOICEIND_TESTS_TEST_UTIL_HPP_
#define VOICEIND_TESTS_TEST_UTIL_HPP_

#include <sys/wait.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "voiceind/metric.hpp"
#include "voiceind/rng.hpp"
#include "voiceind/voiceprint.hpp"

namespace testutil {

inline voiceind::Voiceprint vp(const std::string& id,
                               std::vector<double> coords) {
  return voiceind::Voiceprint(id, std::move(coords));
}

inline std::vector<double> random_coords(voiceind::SeededRng& rng,
                                         std::size_t dim) {
  std::vector<double> v(dim);
  for (double& c : v) c = rng.next_gaussian();
  return v;
}

// Independent oracle for the selection probabilities: plain
// exponent-then-normalize, no shifting, distances supplied by the caller.
inline std::vector<double> naive_selection_probabilities(
    double epsilon, const std::vector<double>& distances) {
  std::vector<double> probs(distances.size());
  double total = 0.0;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    probs[i] = std::exp(-epsilon * distances[i]);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

inline double chi_squared_p_value(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  const boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

// Two-sample homogeneity test over candidate bins.
inline double two_sample_chi2_p(const std::vector<long long>& a,
                                const std::vector<long long>& b) {
  double na = 0.0;
  double nb = 0.0;
  for (const long long v : a) na += static_cast<double>(v);
  for (const long long v : b) nb += static_cast<double>(v);
  double statistic = 0.0;
  int bins = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double row = static_cast<double>(a[i] + b[i]);
    if (row == 0.0) continue;
    ++bins;
    const double ea = na * row / (na + nb);
    const double eb = nb * row / (na + nb);
    statistic += (a[i] - ea) * (a[i] - ea) / ea;
    statistic += (b[i] - eb) * (b[i] - eb) / eb;
  }
  return chi_squared_p_value(statistic, bins - 1);
}

class TempDir {
 public:
  TempDir() {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "voiceind-test-XXXXXX")
            .string();
    char* created = mkdtemp(tmpl.data());
    if (created == nullptr) throw std::runtime_error("mkdtemp failed");
    path_ = created;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const {
    return (std::filesystem::path(path_) / name).string();
  }

 private:
  std::string path_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

// Runs a shell command, capturing combined output.
inline CommandResult run_command(const std::string& command,
                                 const std::string& capture_path) {
  const std::string full = command + " > " + capture_path + " 2>&1";
  const int status = std::system(full.c_str());
  CommandResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.output = read_file(capture_path);
  return result;
}

}  // namespace testutil

#endif  // VOICEIND_TESTS_TEST_UTIL_HPP_
