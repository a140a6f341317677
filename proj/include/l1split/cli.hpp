#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "l1split/asymptotics.hpp"
#include "l1split/splitting.hpp"

namespace l1split::cli {

// Flat key = value text with [section] headers. Keys are stored as "section.key";
// keys before the first header belong to section "job". '#' starts a comment.
class ConfigFile {
 public:
  static ConfigFile parse(const std::string& text);
  static ConfigFile load(const std::string& path);

  std::optional<std::string> get(const std::string& key) const;
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

enum class Command { equilibria, manifold, cp_scan, toy_scan, melnikov, singularity, fit, plotdata };

const char* command_name(Command c);
Command parse_command(const std::string& name);

struct JobConfig {
  Command command = Command::cp_scan;
  std::vector<std::string> K;  // strictly decreasing
  std::vector<int> a_list{0};
  std::vector<int> m_list{2};
  std::string family = "cp";   // equilibria and manifold: cp or toy
  PolicyOptions policy;
  int singularity_digits = 40;
  std::string out_dir = "l1split_out";
  bool resume = false;
  int workers = 1;
  size_t window = 50;
  int steps = 2;
  std::string table;           // fit: optional published extrapolation table
};

// Validates every field against the module preconditions; throws ConfigInvalid.
JobConfig job_from_config(const ConfigFile& file, Command command);
void validate(const JobConfig& job);

struct JobReport {
  int exit_code = 0;  // 0 success, 3 partial failure
  long computed = 0;
  long skipped = 0;
  std::vector<std::string> failures;  // "kind K a m: message"
  std::vector<std::string> files;     // written, relative to out_dir
};

JobReport run_job(const JobConfig& job);

// Result store: one CSV per sample kind, keyed by (kind, K, a, m).
struct StoredSample {
  SampleKind kind = SampleKind::dx_dot;
  std::string K;
  int a = 0;
  int m = 0;
  std::string eps;
  std::string omega;
  int digits = 0;
  int order = 0;
  std::string value;
  std::string x_offset;
  std::string wall_seconds;
};

std::string store_header();
std::string store_row(const SplitSample& s);
std::string store_path(const std::string& out_dir, SampleKind kind);
std::vector<StoredSample> load_store(const std::string& path);
// Rewrites the file ordered by (a, m, K descending) so reruns are byte-stable.
void normalize_store(const std::string& path);

// Fit groups built from stored samples: dx_dot, dp_resonant, z0_melnikov and one per toy (a, m).
struct SampleGroup {
  std::string name;
  SampleKind kind = SampleKind::dx_dot;
  int a = 0;
  int m = 0;
  std::vector<StoredSample> samples;  // K descending
};
std::vector<SampleGroup> stored_groups(const std::string& out_dir);
// Prefactor exponent and guessed exponent used for each kind.
Real group_prefactor(const SampleGroup& g);
Real group_r_guess(const SampleGroup& g);
FitResult fit_group(const SampleGroup& g, size_t window, int steps);

// Two-column files for one fit: Y, pairwise r, pairwise ln A.
std::vector<std::string> emit_plotdata(const FitResult& fit, const std::string& name, const std::string& out_dir);

}  // namespace l1split::cli
