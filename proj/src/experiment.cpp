#include "duscar/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "duscar/ergodicity.hpp"

namespace duscar {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kManifestName = "manifest.json";
// zgees on one core, measured: ~15.5 s at n = 2000.
constexpr double kSchurSecondsPerN3 = 1.9e-9;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw InvalidArgument(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw InvalidArgument("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::string method_name(SpectrumMethod m) { return m == SpectrumMethod::DENSE ? "dense" : "translation_sectors"; }

SpectrumMethod method_from_string(const std::string& s) {
  if (s == "dense") return SpectrumMethod::DENSE;
  if (s == "translation_sectors") return SpectrumMethod::TRANSLATION_SECTORS;
  throw InvalidArgument("unknown spectrum_method: " + s);
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e && r <= kDenseCap * 1000; ++i) r *= b;
  return r;
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) {
    out_ << "# manifest: " << kManifestName << '\n';
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string fmt(double x) { return format_double(x); }
std::string fmt(std::size_t x) { return std::to_string(x); }
std::string fmt(int x) { return std::to_string(x); }

BrickworkCircuit build_circuit(const ExperimentConfig& c, ScarModel& model) {
  model = make_scar_model(c.n_sites, c.d, c.spec, c.seed, c.phi, c.layer_mode);
  return circuit_from_model(model);
}

std::string run_spectrum(const ExperimentConfig& c, const ScarModel& model, const BrickworkCircuit& circuit,
                         json& summary) {
  const Subspace target = target_space(common_kernel(model.spec, c.n_sites), c.n_sites, c.d);
  EigTableOptions opt;
  opt.method = c.spectrum_method;
  opt.phi = c.phi;
  const auto records = eig_table(circuit, target, opt);
  Csv csv({"index", "eigenphase", "entropy", "sz_density", "scar_overlap", "is_scar"});
  std::size_t scars = 0;
  for (const auto& r : records) {
    scars += r.is_scar;
    csv.row({fmt(r.index), fmt(r.eigenphase), fmt(r.entropy), fmt(r.sz_density), fmt(r.scar_overlap),
             r.is_scar ? "1" : "0"});
  }
  summary["spectrum"] = {{"target_dim", target.dim()}, {"scar_count", scars}, {"records", records.size()}};
  return csv.str();
}

std::string run_dynamics(const ExperimentConfig& c, const BrickworkCircuit& circuit) {
  Csv csv({"state_tag", "t", "entropy", "fidelity", "sz_density", "entropy_p5", "entropy_p50", "entropy_p95"});
  for (NamedState tag : c.dynamics.initial_states) {
    const auto traj = evolve_trajectory(named_state(tag, c.n_sites, c.d), circuit, c.dynamics.t_max);
    for (const auto& r : trajectory_records(traj))
      csv.row({to_string(tag), fmt(r.t), fmt(r.entropy), fmt(r.fidelity), fmt(r.sz_density), "", "", ""});
  }
  const auto n_rand = static_cast<std::size_t>(c.dynamics.n_random_states);
  if (n_rand == 0) return csv.str();
  // States are drawn serially so the ensemble does not depend on the thread count.
  Rng rng = Rng(c.seed).split(1);
  std::vector<StateVec> initial;
  for (std::size_t i = 0; i < n_rand; ++i) initial.push_back(random_product_state(c.n_sites, c.d, rng));
  std::vector<std::vector<TrajectoryRecord>> recs(n_rand);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < n_rand; ++i) recs[i] = trajectory_records(evolve_trajectory(initial[i], circuit, c.dynamics.t_max));
  for (int t = 0; t <= c.dynamics.t_max; ++t) {
    std::vector<double> s;
    double f = 0.0, z = 0.0;
    for (const auto& r : recs) {
      const auto& x = r[static_cast<std::size_t>(t)];
      s.push_back(x.entropy);
      f += x.fidelity;
      z += x.sz_density;
    }
    double mean = 0.0;
    for (double v : s) mean += v;
    const double n = static_cast<double>(n_rand);
    csv.row({"RANDOM", fmt(t), fmt(mean / n), fmt(f / n), fmt(z / n), fmt(percentile(s, 5)), fmt(percentile(s, 50)),
             fmt(percentile(s, 95))});
  }
  return csv.str();
}

std::string run_mmap(const BrickworkCircuit& circuit, json& summary) {
  Csv csv({"direction", "re_lambda", "im_lambda"});
  const auto plus = full_channel(circuit.gate_even, circuit.gate_odd, Direction::PLUS);
  const auto minus = full_channel(circuit.gate_even, circuit.gate_odd, Direction::MINUS);
  for (const auto* ch : {&plus, &minus})
    for (auto z : ch->eigenvalues()) csv.row({to_string(ch->direction), fmt(z.real()), fmt(z.imag())});
  const auto rep = classify(plus, minus);
  summary["mmap"] = {{"classification", to_string(rep.verdict)},
                     {"unit_modulus_count_plus", rep.unit_modulus_count_plus},
                     {"unit_modulus_count_minus", rep.unit_modulus_count_minus},
                     {"second_modulus_plus", rep.second_modulus_plus},
                     {"second_modulus_minus", rep.second_modulus_minus}};
  return csv.str();
}

std::string run_dual(const ExperimentConfig& c, const BrickworkCircuit& circuit) {
  EigTableOptions opt;
  opt.method = c.spectrum_method;
  Csv csv({"index", "eigenphase", "entropy"});
  for (const auto& r : dual_eig_table(circuit, c.tau, opt)) csv.row({fmt(r.index), fmt(r.eigenphase), fmt(r.entropy)});
  return csv.str();
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::SPECTRUM: return "SPECTRUM";
    case Experiment::DYNAMICS: return "DYNAMICS";
    case Experiment::MMAP: return "MMAP";
    case Experiment::DUAL_SPECTRUM: return "DUAL_SPECTRUM";
  }
  return "?";
}

Experiment experiment_from_string(const std::string& s) {
  for (auto e : {Experiment::SPECTRUM, Experiment::DYNAMICS, Experiment::MMAP, Experiment::DUAL_SPECTRUM})
    if (to_string(e) == s) return e;
  throw InvalidArgument("unknown experiment: " + s);
}

bool ExperimentConfig::wants(Experiment e) const {
  return std::find(experiments.begin(), experiments.end(), e) != experiments.end();
}

ExperimentConfig config_from_json(const json& root) {
  const json& j = root.contains("config") && root.contains("conventions") ? root.at("config") : root;
  check_keys(j, {"model", "experiments", "dynamics", "tau", "spectrum_method", "output_dir"}, "config");
  ExperimentConfig c;
  if (j.contains("model")) {
    const json& m = j.at("model");
    check_keys(m, {"n_sites", "d", "spec", "seed", "phi", "layer_mode"}, "model");
    read(m, "n_sites", c.n_sites);
    read(m, "d", c.d);
    read(m, "spec", c.spec);
    if (m.contains("seed") && !m.at("seed").is_number_unsigned()) throw InvalidArgument("seed must be a non-negative integer");
    read(m, "seed", c.seed);
    read(m, "phi", c.phi);
    std::string mode = to_string(c.layer_mode);
    read(m, "layer_mode", mode);
    c.layer_mode = layer_mode_from_string(mode);
  }
  if (j.contains("experiments")) {
    std::vector<std::string> names;
    read(j, "experiments", names);
    c.experiments.clear();
    for (const auto& n : names) c.experiments.push_back(experiment_from_string(n));
  }
  if (j.contains("dynamics")) {
    const json& dy = j.at("dynamics");
    check_keys(dy, {"t_max", "n_random_states", "initial_states"}, "dynamics");
    read(dy, "t_max", c.dynamics.t_max);
    read(dy, "n_random_states", c.dynamics.n_random_states);
    if (dy.contains("initial_states")) {
      std::vector<std::string> names;
      read(dy, "initial_states", names);
      c.dynamics.initial_states.clear();
      for (const auto& n : names) c.dynamics.initial_states.push_back(named_state_from_string(n));
    }
  }
  read(j, "tau", c.tau);
  std::string method = method_name(c.spectrum_method);
  read(j, "spectrum_method", method);
  c.spectrum_method = method_from_string(method);
  read(j, "output_dir", c.output_dir);
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json exps = json::array(), states = json::array();
  for (auto e : c.experiments) exps.push_back(to_string(e));
  for (auto s : c.dynamics.initial_states) states.push_back(to_string(s));
  return {{"model",
           {{"n_sites", c.n_sites},
            {"d", c.d},
            {"spec", c.spec},
            {"seed", c.seed},
            {"phi", c.phi},
            {"layer_mode", to_string(c.layer_mode)}}},
          {"experiments", exps},
          {"dynamics", {{"t_max", c.dynamics.t_max}, {"n_random_states", c.dynamics.n_random_states}, {"initial_states", states}}},
          {"tau", c.tau},
          {"spectrum_method", method_name(c.spectrum_method)},
          {"output_dir", c.output_dir}};
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("config is not valid JSON: " + std::string(e.what()));
  }
  return config_from_json(j);
}

ExperimentConfig default_config(const std::string& spec_name) {
  ProjectorSpec::named(spec_name, 3);
  ExperimentConfig c;
  c.spec = spec_name;
  if (spec_name == "two_scar") c.phi = 0.01;
  c.output_dir = "out_" + spec_name;
  return c;
}

json ValidationReport::to_json() const {
  return {{"ok", ok()},
          {"failures", failures},
          {"checks", checks},
          {"memory_mb", memory_mb},
          {"runtime_estimate_s", runtime_estimate_s}};
}

ValidationReport validate_config(const ExperimentConfig& c) {
  ValidationReport r;
  auto check = [&r](bool good, const std::string& what) { (good ? r.checks : r.failures).push_back(what); };
  const bool lattice_ok = c.n_sites >= 2 && c.n_sites % 2 == 0 && c.d >= 2;
  check(lattice_ok, "N even and >= 2, d >= 2");
  bool spec_ok = true;
  try {
    ProjectorSpec::named(c.spec, std::max(c.d, 2));
  } catch (const InvalidArgument&) {
    spec_ok = false;
  }
  check(spec_ok, "projector spec '" + c.spec + "' is known");
  check(!c.experiments.empty(), "at least one experiment requested");
  if (!lattice_ok) return r;

  const std::size_t dim = ipow(static_cast<std::size_t>(c.d), c.n_sites);
  const double dimf = static_cast<double>(dim);
  r.memory_mb = 3.0 * dimf * 16.0 / 1e6;
  if (c.wants(Experiment::SPECTRUM)) {
    check(dim <= kDenseCap, "SPECTRUM: d^N = " + std::to_string(dim) + " <= " + std::to_string(kDenseCap));
    const double blocks = c.spectrum_method == SpectrumMethod::DENSE ? 1.0 : c.n_sites / 2.0;
    const double n = dimf / blocks;
    r.memory_mb = std::max(r.memory_mb, (3.0 * blocks * n * n + dimf * 256.0) * 16.0 / 1e6);
    r.runtime_estimate_s += blocks * kSchurSecondsPerN3 * n * n * n * 1.3;
  }
  if (c.wants(Experiment::DUAL_SPECTRUM)) {
    const std::size_t ddim = c.tau >= 1 ? ipow(static_cast<std::size_t>(c.d), 2 * c.tau) : 0;
    check(c.tau >= 1, "DUAL_SPECTRUM: tau >= 1");
    check(ddim <= kDenseCap, "DUAL_SPECTRUM: d^(2 tau) = " + std::to_string(ddim) + " <= " + std::to_string(kDenseCap));
    const double blocks = c.spectrum_method == SpectrumMethod::DENSE ? 1.0 : std::max(c.tau, 1);
    const double n = static_cast<double>(ddim) / blocks;
    r.runtime_estimate_s += blocks * kSchurSecondsPerN3 * n * n * n * 1.3;
  }
  if (c.wants(Experiment::DYNAMICS)) {
    check(c.dynamics.t_max >= 0, "DYNAMICS: t_max >= 0");
    check(c.dynamics.n_random_states >= 0, "DYNAMICS: n_random_states >= 0");
    const bool psi2 = std::find(c.dynamics.initial_states.begin(), c.dynamics.initial_states.end(), NamedState::PSI2) !=
                      c.dynamics.initial_states.end();
    if (psi2) check(c.n_sites % 4 == 0, "DYNAMICS: PSI2 requires N divisible by 4");
    const double states = c.dynamics.n_random_states + static_cast<double>(c.dynamics.initial_states.size());
    r.memory_mb = std::max(r.memory_mb, states * (c.dynamics.t_max + 1.0) * dimf * 16.0 / 1e6);
    r.runtime_estimate_s += states * (c.dynamics.t_max + 1.0) * dimf * c.n_sites * c.d * c.d * 2e-9;
  }
  if (spec_ok && c.d >= 2) {
    try {
      const ScarModel m = make_scar_model(c.n_sites, c.d, c.spec, c.seed, c.phi, c.layer_mode);
      check(verify_conditions(m.gens_even, m.spec) && verify_conditions(m.gens_odd, m.spec),
            "embedding conditions hold for the seeded generators");
    } catch (const std::exception& e) {
      check(false, std::string("embedding conditions: ") + e.what());
    }
  }
  return r;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw InvalidArgument("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

void run_experiments(const ExperimentConfig& c) {
  const ValidationReport report = validate_config(c);
  if (!report.ok()) throw InvalidArgument("config validation failed: " + report.failures.front());

  const fs::path dir(c.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InvalidArgument("cannot create output_dir '" + c.output_dir + "'");

  ScarModel model;
  const BrickworkCircuit circuit = build_circuit(c, model);
  json summary = json::object();
  std::vector<std::pair<std::string, std::string>> files;
  if (c.wants(Experiment::SPECTRUM)) files.emplace_back("eigs.csv", run_spectrum(c, model, circuit, summary));
  if (c.wants(Experiment::DYNAMICS)) files.emplace_back("dynamics.csv", run_dynamics(c, circuit));
  if (c.wants(Experiment::MMAP)) files.emplace_back("mmap.csv", run_mmap(circuit, summary));
  if (c.wants(Experiment::DUAL_SPECTRUM)) files.emplace_back("dual_eigs.csv", run_dual(c, circuit));

  json curve = json::array();
  for (int t = 0; t <= c.dynamics.t_max; ++t) curve.push_back(reference_growth_curve(t, c.n_sites, c.d));
  json names = json::array();
  for (const auto& f : files) names.push_back(f.first);
  const json manifest = {
      {"version", kVersion},
      {"config", config_to_json(c)},
      {"seed", c.seed},
      {"rng", Rng::algorithm},
      {"tolerances",
       {{"construction", tol::construction},
        {"spectral_residual", tol::spectral_residual},
        {"entropy_floor", tol::entropy_floor},
        {"unitary_input", tol::unitary_input},
        {"unit_circle", kUnitCircleTol},
        {"cluster_gap", EigTableOptions{}.cluster_gap}}},
      {"conventions",
       {{"endianness", "site 0 is the most significant digit of the basis index"},
        {"gate_factor_order", "first tensor factor acts on site n of bond (n, n+1 mod N)"},
        {"vectorization", "row-major: vec(o)[a*d+b] = o(a,b)"},
        {"entropy_units", "nats"},
        {"breaker_order", "U = B U_odd U_even (breaker applied after both layers)"},
        {"sz_local", "(2i-(d-1))/(d-1)"},
        {"random_generators", "m + m^dagger, m_jk = alpha + i beta, alpha, beta ~ U[0,1)"}}},
      {"S_page", page_entropy(c.n_sites, c.d)},
      {"S_max", max_entropy(c.n_sites, c.d)},
      {"reference_curve", curve},
      {"files", names},
      {"summary", summary}};
  for (const auto& [name, content] : files) write_file_atomic(dir / name, content);
  write_file_atomic(dir / kManifestName, manifest.dump(2) + "\n");
}

}  // namespace duscar
