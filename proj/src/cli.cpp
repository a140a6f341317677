#include "l1split/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "l1split/errors.hpp"
#include "l1split/singularity.hpp"

namespace fs = std::filesystem;

namespace l1split::cli {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::ConfigInvalid, msg); }

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) invalid(key + ": trailing characters in '" + v + "'");
    return d;
  } catch (const std::logic_error&) {
    invalid(key + ": not a number '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    int i = std::stoi(v, &pos);
    if (pos != v.size()) invalid(key + ": trailing characters in '" + v + "'");
    return i;
  } catch (const std::logic_error&) {
    invalid(key + ": not an integer '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  invalid(key + ": not a boolean '" + v + "'");
}

std::vector<int> to_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  for (const auto& item : split(v, ',')) out.push_back(to_int(key, item));
  if (out.empty()) invalid(key + ": empty list");
  return out;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "job.out",          "job.workers",       "job.resume",           "grid.K_list",
      "grid.K_max",       "grid.K_min",        "grid.per_decade",      "toy.a",
      "toy.m",            "model.family",      "precision.order_cap",  "precision.desk_floor",
      "precision.guard",  "precision.digits_override", "precision.override_floor",
      "singularity.digits", "fit.window",      "fit.steps",            "fit.table"};
  return keys;
}

// Values are parsed at a modest precision; the fits need far fewer digits than the samples carry.
const PrecisionContext kFitContext{40, 20};

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
  ConfigFile cf;
  std::string section = "job";
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') invalid("line " + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) invalid("line " + std::to_string(lineno) + ": empty section name");
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) invalid("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) invalid("line " + std::to_string(lineno) + ": empty key");
    cf.values_[section + "." + key] = trim(line.substr(eq + 1));
  }
  return cf;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::optional<std::string> ConfigFile::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

const char* command_name(Command c) {
  switch (c) {
    case Command::equilibria: return "equilibria";
    case Command::manifold: return "manifold";
    case Command::cp_scan: return "cp-scan";
    case Command::toy_scan: return "toy-scan";
    case Command::melnikov: return "melnikov";
    case Command::singularity: return "singularity";
    case Command::fit: return "fit";
    case Command::plotdata: return "plotdata";
  }
  return "?";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::equilibria, Command::manifold, Command::cp_scan, Command::toy_scan, Command::melnikov,
                    Command::singularity, Command::fit, Command::plotdata})
    if (name == command_name(c)) return c;
  invalid("unknown command '" + name + "'");
}

JobConfig job_from_config(const ConfigFile& file, Command command) {
  for (const auto& [k, v] : file.values())
    if (!known_keys().count(k)) invalid("unknown key '" + k + "'");
  JobConfig job;
  job.command = command;
  auto get = [&](const std::string& k) { return file.get(k); };

  if (auto v = get("job.out")) job.out_dir = *v;
  if (auto v = get("job.workers")) job.workers = to_int("job.workers", *v);
  if (auto v = get("job.resume")) job.resume = to_bool("job.resume", *v);

  if (auto v = get("grid.K_list")) {
    for (const auto& k : split(*v, ',')) {
      to_double("grid.K_list", k);
      job.K.push_back(k);
    }
  } else {
    double kmax = 1e-3, kmin = 1e-5;
    int per = 12;
    if (auto v = get("grid.K_max")) kmax = to_double("grid.K_max", *v);
    if (auto v = get("grid.K_min")) kmin = to_double("grid.K_min", *v);
    if (auto v = get("grid.per_decade")) per = to_int("grid.per_decade", *v);
    try {
      job.K = k_grid(kmax, kmin, per);
    } catch (const Error& e) {
      invalid(std::string("grid: ") + e.what());
    }
  }

  if (auto v = get("toy.a")) job.a_list = to_int_list("toy.a", *v);
  if (auto v = get("toy.m")) job.m_list = to_int_list("toy.m", *v);
  if (auto v = get("model.family")) job.family = *v;
  if (auto v = get("precision.order_cap")) job.policy.order_cap = to_int("precision.order_cap", *v);
  if (auto v = get("precision.desk_floor")) job.policy.desk_floor = to_double("precision.desk_floor", *v);
  if (auto v = get("precision.guard")) job.policy.guard = to_int("precision.guard", *v);
  if (auto v = get("precision.digits_override"))
    job.policy.digits_override = to_int("precision.digits_override", *v);
  if (auto v = get("precision.override_floor"))
    job.policy.override_floor = to_bool("precision.override_floor", *v);
  if (auto v = get("singularity.digits")) job.singularity_digits = to_int("singularity.digits", *v);
  if (auto v = get("fit.window")) job.window = static_cast<size_t>(to_int("fit.window", *v));
  if (auto v = get("fit.steps")) job.steps = to_int("fit.steps", *v);
  if (auto v = get("fit.table")) job.table = *v;
  return job;
}

void validate(const JobConfig& job) {
  if (job.out_dir.empty()) invalid("output directory is empty");
  if (job.workers < 1) invalid("workers must be >= 1");
  if (job.window < 3) invalid("fit window must be >= 3");
  if (job.steps < 0) invalid("fit steps must be >= 0");
  if (job.family != "cp" && job.family != "toy") invalid("model.family must be cp or toy");
  for (int a : job.a_list)
    if (a != 0 && a != 1) invalid("toy.a entries must be 0 or 1");
  for (int m : job.m_list)
    if (m < 1) invalid("toy.m entries must be >= 1");
  if (job.singularity_digits < 10) invalid("singularity.digits must be >= 10");
  if (job.policy.order_cap < 10) invalid("precision.order_cap must be >= 10");
  if (job.policy.guard < 0) invalid("precision.guard must be >= 0");
  if (job.command == Command::fit || job.command == Command::plotdata) return;
  if (job.K.empty()) invalid("K grid is empty");
  for (size_t i = 0; i < job.K.size(); ++i) {
    double K = to_double("K", job.K[i]);
    if (!(K > 0)) invalid("K must be positive");
    if (i > 0 && !(K < to_double("K", job.K[i - 1]))) invalid("K grid must be strictly decreasing");
  }
  if (job.command == Command::singularity || job.command == Command::equilibria) return;
  for (const auto& K : job.K) {
    try {
      precision_policy(K, job.policy);
    } catch (const Error& e) {
      invalid(e.what());
    }
  }
}

// ---------------------------------------------------------------- result store

std::string store_header() { return "kind,K,a,m,eps,omega,digits,N,value,x_offset,wall_seconds"; }

std::string store_row(const SplitSample& s) {
  std::ostringstream os;
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", s.wall_seconds);
  os << sample_kind_name(s.kind) << "," << s.K_text << "," << s.a << "," << s.m << "," << s.eps.str() << ","
     << s.omega.str() << "," << s.digits << "," << s.order << "," << s.value.str() << "," << s.x_offset.str() << ","
     << wall;
  return os.str();
}

std::string store_path(const std::string& out_dir, SampleKind kind) {
  return (fs::path(out_dir) / (std::string(sample_kind_name(kind)) + ".csv")).string();
}

std::vector<StoredSample> load_store(const std::string& path) {
  std::vector<StoredSample> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#' || line.rfind("kind,", 0) == 0) continue;
    auto f = split(line, ',');
    if (f.size() != 11) invalid(path + ":" + std::to_string(lineno) + ": expected 11 fields");
    StoredSample s;
    s.kind = parse_sample_kind(f[0]);
    s.K = f[1];
    s.a = to_int("a", f[2]);
    s.m = to_int("m", f[3]);
    s.eps = f[4];
    s.omega = f[5];
    s.digits = to_int("digits", f[6]);
    s.order = to_int("N", f[7]);
    s.value = f[8];
    s.x_offset = f[9];
    s.wall_seconds = f[10];
    out.push_back(s);
  }
  return out;
}

namespace {

std::string row_of(const StoredSample& s) {
  std::ostringstream os;
  os << sample_kind_name(s.kind) << "," << s.K << "," << s.a << "," << s.m << "," << s.eps << "," << s.omega << ","
     << s.digits << "," << s.order << "," << s.value << "," << s.x_offset << "," << s.wall_seconds;
  return os.str();
}

bool k_order(const StoredSample& x, const StoredSample& y) {
  if (x.a != y.a) return x.a < y.a;
  if (x.m != y.m) return x.m < y.m;
  return std::stod(x.K) > std::stod(y.K);
}

std::string key_of(SampleKind kind, const std::string& K, int a, int m) {
  return std::string(sample_kind_name(kind)) + "|" + K + "|" + std::to_string(a) + "|" + std::to_string(m);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ConfigInvalid, "cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace

void normalize_store(const std::string& path) {
  auto rows = load_store(path);
  if (rows.empty()) return;
  std::stable_sort(rows.begin(), rows.end(), k_order);
  // a recomputed key keeps its latest row
  std::vector<StoredSample> uniq;
  for (const auto& r : rows) {
    if (!uniq.empty() && uniq.back().K == r.K && uniq.back().a == r.a && uniq.back().m == r.m)
      uniq.back() = r;
    else
      uniq.push_back(r);
  }
  std::string text = store_header() + "\n";
  for (const auto& r : uniq) text += row_of(r) + "\n";
  write_file(path, text);
}

// ---------------------------------------------------------------- fits

std::vector<SampleGroup> stored_groups(const std::string& out_dir) {
  std::vector<SampleGroup> groups;
  for (SampleKind kind : {SampleKind::dx_dot, SampleKind::dp_resonant, SampleKind::z0_melnikov, SampleKind::dp_toy}) {
    auto rows = load_store(store_path(out_dir, kind));
    std::stable_sort(rows.begin(), rows.end(), k_order);
    for (const auto& r : rows) {
      std::string name = sample_kind_name(kind);
      if (kind == SampleKind::dp_toy) name += "_a" + std::to_string(r.a) + "_m" + std::to_string(r.m);
      if (groups.empty() || groups.back().name != name) {
        SampleGroup g;
        g.name = name;
        g.kind = kind;
        g.a = r.a;
        g.m = r.m;
        groups.push_back(g);
      }
      groups.back().samples.push_back(r);
    }
  }
  return groups;
}

Real group_prefactor(const SampleGroup& g) {
  switch (g.kind) {
    case SampleKind::dx_dot:
    case SampleKind::dp_resonant: return Real(1);
    case SampleKind::dp_toy: return Real(g.m);
    case SampleKind::z0_melnikov: return Real(0);
  }
  return Real(0);
}

Real group_r_guess(const SampleGroup& g) {
  switch (g.kind) {
    case SampleKind::dx_dot: return r_guess_synodic();
    case SampleKind::dp_toy: return g.a == 0 ? r_guess_toy_plain() : r_guess_resonant();
    default: return r_guess_resonant();
  }
}

FitResult fit_group(const SampleGroup& g, size_t window, int steps) {
  std::vector<Real> values, eps, omega;
  for (const auto& s : g.samples) {
    // the resonant chart gives Delta p the opposite sign; the fit uses |Delta p|
    values.push_back(abs(Real(s.value)));
    eps.push_back(Real(s.eps));
    omega.push_back(Real(s.omega));
  }
  return fit_samples(g.name, values, eps, omega, group_prefactor(g), group_r_guess(g), steps, window);
}

std::vector<std::string> emit_plotdata(const FitResult& fit, const std::string& name, const std::string& out_dir) {
  std::vector<std::string> files;
  auto emit = [&](const std::string& suffix, const std::string& text) {
    std::string file = "plot_" + name + "_" + suffix + ".dat";
    write_file(fs::path(out_dir) / file, text);
    files.push_back(file);
  };
  std::ostringstream y, r, a;
  for (const auto& p : fit.points) y << p.ln_omega.str(15) << " " << p.Y.str(15) << "\n";
  for (const auto& p : fit.pairs) {
    r << p.ln_omega.str(15) << " " << p.r.str(15) << "\n";
    a << p.ln_omega.str(15) << " " << p.lnA.str(15) << "\n";
  }
  emit("Y", y.str());
  emit("r", r.str());
  emit("lnA", a.str());
  return files;
}

// ---------------------------------------------------------------- jobs

namespace {

struct Task {
  std::string K;
  int a = 0;
  int m = 0;
};

struct Outcome {
  bool done = false;
  std::vector<SplitSample> samples;
  std::string error;
};

// Runs fn over all tasks on a bounded pool and hands finished outcomes to `commit`
// strictly in task order.
template <class Fn, class Commit>
void run_pool(const std::vector<Task>& tasks, int workers, Fn fn, Commit commit) {
  std::vector<Outcome> out(tasks.size());
  std::mutex mu;
  size_t next_commit = 0;
  std::atomic<size_t> next_task{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next_task.fetch_add(1);
      if (i >= tasks.size()) return;
      Outcome o;
      try {
        o.samples = fn(tasks[i]);
      } catch (const std::exception& e) {
        o.error = e.what();
      }
      o.done = true;
      std::lock_guard<std::mutex> lock(mu);
      out[i] = std::move(o);
      while (next_commit < out.size() && out[next_commit].done) {
        commit(tasks[next_commit], out[next_commit]);
        out[next_commit].samples.clear();
        ++next_commit;
      }
    }
  };
  int n = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

void run_scan(const JobConfig& job, JobReport& rep) {
  std::vector<SampleKind> kinds;
  std::vector<Task> all;
  if (job.command == Command::cp_scan) {
    kinds = {SampleKind::dx_dot, SampleKind::dp_resonant};
    for (const auto& K : job.K) all.push_back({K, 0, 0});
  } else if (job.command == Command::toy_scan) {
    kinds = {SampleKind::dp_toy};
    for (int a : job.a_list)
      for (int m : job.m_list)
        for (const auto& K : job.K) all.push_back({K, a, m});
  } else {
    kinds = {SampleKind::z0_melnikov};
    for (const auto& K : job.K) all.push_back({K, 1, 0});
  }

  std::set<std::string> stored;
  for (SampleKind k : kinds) {
    std::string path = store_path(job.out_dir, k);
    if (!job.resume) {
      // a fresh scan replaces only the rows it is about to recompute
      auto rows = load_store(path);
      std::set<std::string> mine;
      for (const auto& t : all) mine.insert(key_of(k, t.K, t.a, t.m));
      std::string text = store_header() + "\n";
      for (const auto& r : rows)
        if (!mine.count(key_of(k, r.K, r.a, r.m))) text += row_of(r) + "\n";
      write_file(path, text);
    }
    for (const auto& r : load_store(path)) stored.insert(key_of(r.kind, r.K, r.a, r.m));
  }

  std::vector<Task> todo;
  for (const auto& t : all) {
    bool have = std::all_of(kinds.begin(), kinds.end(),
                            [&](SampleKind k) { return stored.count(key_of(k, t.K, t.a, t.m)) > 0; });
    if (have)
      ++rep.skipped;
    else
      todo.push_back(t);
  }

  SplitOptions opt;
  opt.policy = job.policy;
  auto compute = [&](const Task& t) -> std::vector<SplitSample> {
    if (job.command == Command::cp_scan) {
      CPSplit r = cp_split(t.K, opt);
      return {r.synodic, r.resonant};
    }
    if (job.command == Command::toy_scan) return {toy_split(t.K, t.a, t.m, opt)};
    return {melnikov_sample(t.K, opt)};
  };
  std::map<SampleKind, std::ofstream> files;
  for (SampleKind k : kinds) {
    std::string path = store_path(job.out_dir, k);
    bool empty = !fs::exists(path) || fs::file_size(path) == 0;
    files[k].open(path, std::ios::app | std::ios::binary);
    if (empty) files[k] << store_header() << "\n";
  }
  auto commit = [&](const Task& t, const Outcome& o) {
    if (!o.error.empty()) {
      rep.failures.push_back(std::string(sample_kind_name(kinds[0])) + " " + t.K + " " + std::to_string(t.a) + " " +
                             std::to_string(t.m) + ": " + o.error);
      return;
    }
    for (const auto& s : o.samples) {
      auto& f = files[s.kind];
      f << store_row(s) << "\n";
      f.flush();
    }
    ++rep.computed;
  };
  run_pool(todo, job.workers, compute, commit);
  for (auto& [k, f] : files) f.close();
  for (SampleKind k : kinds) {
    normalize_store(store_path(job.out_dir, k));
    rep.files.push_back(std::string(sample_kind_name(k)) + ".csv");
  }
}

void run_equilibria(const JobConfig& job, JobReport& rep) {
  PrecisionScope scope(kFitContext);
  std::ostringstream os;
  os << "family,K,a,m,label,z0,z1,z2,z3,lambda,energy\n";
  for (const auto& Ktext : job.K) {
    Real K(Ktext);
    std::vector<std::pair<Model, std::string>> models;
    if (job.family == "cp") {
      models.push_back({Model::cp_synodic(K), "0,0"});
    } else {
      for (int a : job.a_list)
        for (int m : job.m_list)
          models.push_back({Model::toy(K, Real(a), Real(m)), std::to_string(a) + "," + std::to_string(m)});
    }
    for (const auto& [model, am] : models) {
      for (const auto& e : equilibria(model)) {
        os << family_name(model.family) << "," << Ktext << "," << am << "," << label_name(e.label);
        for (const auto& c : e.location.z) os << "," << c.str(30);
        os << "," << e.lambda.str(30) << "," << e.energy.str(30) << "\n";
      }
    }
    ++rep.computed;
  }
  write_file(fs::path(job.out_dir) / "equilibria.csv", os.str());
  rep.files.push_back("equilibria.csv");
}

void run_manifold(const JobConfig& job, JobReport& rep) {
  const std::string& Ktext = job.K.front();
  PrecisionPolicy pol = precision_policy(Ktext, job.policy);
  PrecisionScope scope(pol.ctx);
  Real K(Ktext);
  Real tol = pow10(-pol.ctx.digits);
  ManifoldExpansion W = job.family == "cp"
                            ? cp_external_manifold(K, pol.order, tol)
                            : toy_unstable_manifold(K, job.a_list.front(), job.m_list.front(), Branch::external,
                                                    pol.order, tol);
  std::string file = "manifold_" + job.family + "_" + Ktext + ".txt";
  write_file(fs::path(job.out_dir) / file, manifold_dump(W));
  rep.files.push_back(file);
  ++rep.computed;
}

void run_singularity(const JobConfig& job, JobReport& rep) {
  PrecisionScope scope(PrecisionContext{job.singularity_digits, 20});
  Real tol = pow10(-job.singularity_digits);
  std::ostringstream os;
  os << "K,eps,re_neg_s,im_neg_s,delta,route_gap\n";
  std::vector<Real> Ks, deltas;
  for (const auto& Ktext : job.K) {
    Real K(Ktext);
    Real eps = sqrt(sqrt(K / 3));
    try {
      SingularityResult r = s_star(eps, tol);
      os << Ktext << "," << eps.str(30) << "," << r.neg_s_re.str(30) << "," << r.neg_s_im.str(30) << ","
         << r.delta.str(30) << "," << r.route_gap.str(6) << "\n";
      Ks.push_back(K);
      deltas.push_back(r.delta);
      ++rep.computed;
    } catch (const std::exception& e) {
      rep.failures.push_back("singularity " + Ktext + ": " + e.what());
    }
  }
  write_file(fs::path(job.out_dir) / "singularity.csv", os.str());
  rep.files.push_back("singularity.csv");
  if (Ks.size() >= 2) {
    DeltaFit f = delta_fit_values(Ks, deltas);
    std::ostringstream fs_;
    fs_ << "kind delta_fit\nsamples " << Ks.size() << "\nrho " << f.rho.str(12) << "\nA " << f.A.str(12) << "\n";
    write_file(fs::path(job.out_dir) / "singularity_fit.txt", fs_.str());
    rep.files.push_back("singularity_fit.txt");
  }
}

void run_table_fit(const JobConfig& job, JobReport& rep) {
  ExtrapolationTable tab = read_extrapolation_table(job.table);
  std::vector<Real> eps;
  for (const auto& K : regularize_geometric(tab.K)) eps.push_back(sqrt(sqrt(K / 3)));
  std::vector<int> ex;
  for (int i = 1; i <= job.steps; ++i) ex.push_back(2 * i);
  struct Named {
    const char* name;
    const std::vector<Real>* Z;
  };
  std::ostringstream summary;
  for (Named n : {Named{"dx_dot", &tab.Z_dxdot}, Named{"dp_resonant", &tab.Z_dp}}) {
    Tableau t = extrapolate(eps, *n.Z, ex);
    std::string file = std::string("table_") + n.name + "_tableau.csv";
    write_file(fs::path(job.out_dir) / file, tableau_csv(t));
    rep.files.push_back(file);
    summary << "table_" << n.name << "_A " << t.A.str(15) << "\n";
  }
  write_file(fs::path(job.out_dir) / "table_fit.txt", summary.str());
  rep.files.push_back("table_fit.txt");
}

void run_fit(const JobConfig& job, JobReport& rep) {
  PrecisionScope scope(kFitContext);
  if (!job.table.empty()) run_table_fit(job, rep);
  std::ostringstream summary;
  std::map<std::string, FitResult> fits;
  for (const auto& g : stored_groups(job.out_dir)) {
    if (g.samples.size() < 3) {
      rep.failures.push_back("fit " + g.name + ": fewer than 3 samples");
      continue;
    }
    try {
      FitResult f = fit_group(g, job.window, job.steps);
      write_file(fs::path(job.out_dir) / ("fit_" + g.name + ".txt"), fit_report(f));
      write_file(fs::path(job.out_dir) / ("tableau_" + g.name + ".csv"), tableau_csv(f.tableau));
      rep.files.push_back("fit_" + g.name + ".txt");
      rep.files.push_back("tableau_" + g.name + ".csv");
      summary << g.name << " r " << f.line.r.str(8) << " lnA " << f.line.lnA.str(8) << " last_pair_r "
              << (f.pairs.empty() ? std::string("-") : f.pairs.back().r.str(8)) << " A_extrapolated "
              << f.A_extrapolated.str(12) << "\n";
      fits.emplace(g.name, f);
      ++rep.computed;
    } catch (const std::exception& e) {
      rep.failures.push_back("fit " + g.name + ": " + e.what());
    }
  }
  auto syn = fits.find("dx_dot");
  auto res = fits.find("dp_resonant");
  if (syn != fits.end() && res != fits.end() && !syn->second.pairs.empty() && !res->second.pairs.empty()) {
    Real dr = res->second.pairs.back().r - syn->second.pairs.back().r;
    Real ratio = res->second.A_extrapolated / (sqrt(Real(3)) * syn->second.A_extrapolated);
    summary << "rbar_minus_r " << dr.str(8) << "\n";
    summary << "Abar_over_sqrt3_A " << ratio.str(12) << "\n";
  }
  write_file(fs::path(job.out_dir) / "fit_summary.txt", summary.str());
  rep.files.push_back("fit_summary.txt");
}

// |r_other - r_resonant| at matching K, one row per pair present in both fits.
std::string difference_curve(const SampleGroup& other, const FitResult& fo, const SampleGroup& res,
                             const FitResult& fr) {
  auto pair_k = [](const SampleGroup& g, const FitResult& f) {
    std::map<std::string, size_t> idx;
    size_t offset = g.samples.size() - f.window;
    for (size_t j = 0; j < f.pairs.size(); ++j) idx[g.samples[offset + j + 1].K] = j;
    return idx;
  };
  auto ir = pair_k(res, fr);
  std::ostringstream os;
  size_t offset = other.samples.size() - fo.window;
  for (size_t j = 0; j < fo.pairs.size(); ++j) {
    const std::string& K = other.samples[offset + j + 1].K;
    auto it = ir.find(K);
    if (it == ir.end()) continue;
    os << fo.pairs[j].ln_omega.str(15) << " " << abs(fo.pairs[j].r - fr.pairs[it->second].r).str(15) << "\n";
  }
  return os.str();
}

void run_plotdata(const JobConfig& job, JobReport& rep) {
  PrecisionScope scope(kFitContext);
  auto groups = stored_groups(job.out_dir);
  std::map<std::string, std::pair<SampleGroup, FitResult>> fits;
  for (const auto& g : groups) {
    if (g.samples.size() < 3) continue;
    try {
      FitResult f = fit_group(g, g.samples.size(), job.steps);
      for (const auto& file : emit_plotdata(f, g.name, job.out_dir)) rep.files.push_back(file);
      fits.emplace(g.name, std::make_pair(g, f));
      ++rep.computed;
    } catch (const std::exception& e) {
      rep.failures.push_back("plotdata " + g.name + ": " + e.what());
    }
  }
  auto res = fits.find("dp_resonant");
  if (res == fits.end()) return;
  for (const auto& [name, gf] : fits) {
    bool toy_amended = gf.first.kind == SampleKind::dp_toy && gf.first.a == 1;
    if (!toy_amended && gf.first.kind != SampleKind::z0_melnikov) continue;
    std::string file = "plot_diff_r_" + name + "_vs_dp_resonant.dat";
    write_file(fs::path(job.out_dir) / file, difference_curve(gf.first, gf.second, res->second.first, res->second.second));
    rep.files.push_back(file);
  }
}

}  // namespace

JobReport run_job(const JobConfig& job) {
  validate(job);
  fs::create_directories(job.out_dir);
  JobReport rep;
  switch (job.command) {
    case Command::equilibria: run_equilibria(job, rep); break;
    case Command::manifold: run_manifold(job, rep); break;
    case Command::cp_scan:
    case Command::toy_scan:
    case Command::melnikov: run_scan(job, rep); break;
    case Command::singularity: run_singularity(job, rep); break;
    case Command::fit: run_fit(job, rep); break;
    case Command::plotdata: run_plotdata(job, rep); break;
  }
  if (!rep.failures.empty()) {
    std::ostringstream os;
    os << "failure\n";
    for (const auto& f : rep.failures) os << f << "\n";
    write_file(fs::path(job.out_dir) / (std::string("failures_") + command_name(job.command) + ".txt"), os.str());
    rep.exit_code = 3;
  }
  return rep;
}

}  // namespace l1split::cli
