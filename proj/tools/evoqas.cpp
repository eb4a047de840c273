// Command-line front end: evolutionary circuit search plus the analyses
// around it (effective-dimension sweeps, Fisher spectra, search-space size,
// genotype decoding). Exit codes: 0 ok, 2 configuration error, 1 runtime
// failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evoqas/analysis.hpp"
#include "evoqas/architecture.hpp"
#include "evoqas/evolution.hpp"
#include "evoqas/mlp.hpp"
#include "evoqas/model.hpp"
#include "evoqas/run_io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace evoqas;
namespace fs = std::filesystem;

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

fs::path output_root() {
  if (const char* env = std::getenv("EVOQAS_OUT")) return fs::path(env);
  return fs::path("runs");
}

fs::path resolve_out(const std::string& explicit_out, const std::string& config_out,
                     const std::string& default_name) {
  if (!explicit_out.empty()) return fs::path(explicit_out);
  if (!config_out.empty()) return fs::path(config_out);
  return output_root() / default_name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Genotype load_genotype(const std::string& path) {
  try {
    return genotype_from_json(slurp(path));
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error("genotype file " + path + ": " + e.what());
  }
}

// Model source for the analysis commands: either a genotype (read out by
// argmax) or an explicit one-hot architecture such as a run directory's
// best_architecture.json.
ArchitectureSpec load_model_arch(const std::string& genotype_path,
                                 const std::string& architecture_path) {
  if (genotype_path.empty() == architecture_path.empty())
    throw config_error("pass exactly one of --genotype and --architecture");
  if (!architecture_path.empty()) {
    try {
      return architecture_from_json(slurp(architecture_path));
    } catch (const config_error&) {
      throw;
    } catch (const std::exception& e) {
      throw config_error("architecture file " + architecture_path + ": " + e.what());
    }
  }
  return argmax_architecture(load_genotype(genotype_path));
}

OutputMap parse_readout(const std::string& name) {
  if (name == "parity") return OutputMap::ParityAllQubits;
  if (name == "qubit0") return OutputMap::Qubit0Marginal;
  throw config_error("--readout must be 'parity' or 'qubit0'");
}

struct EvolveArgs {
  std::string config_path;
  std::string out;
  std::int64_t seed = -1;
  int threads = 0;
};

int cmd_evolve(const EvolveArgs& args) {
  RunConfig cfg = load_run_config(args.config_path);
  if (args.seed >= 0) cfg.evo.master_seed = static_cast<std::uint64_t>(args.seed);
  const fs::path out_dir =
      resolve_out(args.out, cfg.out_dir,
                  "evolve-seed" + std::to_string(cfg.evo.master_seed));
  cfg.out_dir = out_dir.string();
  apply_threads(args.threads);

  const EvolutionRecord record = evolve(cfg.evo);
  write_run_directory(out_dir, cfg, record);

  for (const GenerationStats& s : record.history)
    std::cout << "generation " << s.generation << " best " << format_double(s.best) << " mean "
              << format_double(s.mean) << "\n";
  std::cout << "run directory: " << out_dir.string() << std::endl;
  return 0;
}

struct SweepArgs {
  std::string genotype_path;
  std::string architecture_path;
  std::string readout = "parity";
  int qubits = 4;
  std::vector<int> n_list;
  double gamma = 1.0;
  int theta_samples = 100;
  int fisher_samples = 100;
  bool with_baselines = false;
  std::uint64_t seed = 0;
  std::string out;
  int threads = 0;
};

int cmd_ed_sweep(const SweepArgs& args) {
  const ArchitectureSpec arch = load_model_arch(args.genotype_path, args.architecture_path);
  const QuantumModel qnn(decode(arch, args.qubits), parse_readout(args.readout));
  apply_threads(args.threads);

  for (int n : args.n_list)
    if (n <= 1 || kappa_for(args.gamma, n) <= 1.0)
      std::cerr << "skipping n = " << n << ": kappa <= 1" << std::endl;

  std::vector<std::pair<std::string, std::vector<EdSweepRow>>> rows;
  rows.emplace_back("qnn", ed_sweep(qnn, args.n_list, args.gamma, args.theta_samples,
                                    args.fisher_samples, args.seed));
  if (args.with_baselines) {
    const std::vector<int> sizes = mlp_match_param_count(qnn.param_count(), args.qubits);
    const MlpModel relu(sizes, Activation::ReLU);
    const MlpModel identity(sizes, Activation::Identity);
    rows.emplace_back("mlp_relu", ed_sweep(relu, args.n_list, args.gamma, args.theta_samples,
                                           args.fisher_samples, args.seed));
    rows.emplace_back("mlp_identity", ed_sweep(identity, args.n_list, args.gamma,
                                               args.theta_samples, args.fisher_samples,
                                               args.seed));
  }

  const fs::path out_dir = resolve_out(args.out, "", "ed-sweep-seed" + std::to_string(args.seed));
  fs::create_directories(out_dir);
  const std::string csv = ed_sweep_csv(rows, args.with_baselines);
  write_file(out_dir / "ed_sweep.csv", csv);
  std::cout << csv;
  std::cout << "wrote " << (out_dir / "ed_sweep.csv").string() << std::endl;
  return 0;
}

struct SpectrumArgs {
  std::string genotype_path;
  std::string architecture_path;
  std::string readout = "parity";
  std::vector<int> qubit_list{4, 5, 6, 7};
  int theta_samples = 100;
  int fisher_samples = 100;
  std::uint64_t seed = 0;
  std::string out;
  int threads = 0;
};

int cmd_spectrum(const SpectrumArgs& args) {
  const ArchitectureSpec arch = load_model_arch(args.genotype_path, args.architecture_path);
  const OutputMap readout = parse_readout(args.readout);
  apply_threads(args.threads);

  std::vector<SpectrumResult> results;
  for (int q : args.qubit_list) {
    const QuantumModel qnn(decode(arch, q), readout);
    results.push_back(fisher_spectrum("qnn", q, qnn, args.theta_samples, args.fisher_samples,
                                      derive_seed(args.seed, q)));
    if (qnn.param_count() >= q + 2) {
      const std::vector<int> sizes = mlp_match_param_count(qnn.param_count(), q);
      results.push_back(fisher_spectrum("mlp_relu", q, MlpModel(sizes, Activation::ReLU),
                                        args.theta_samples, args.fisher_samples,
                                        derive_seed(args.seed, q)));
      results.push_back(fisher_spectrum("mlp_identity", q, MlpModel(sizes, Activation::Identity),
                                        args.theta_samples, args.fisher_samples,
                                        derive_seed(args.seed, q)));
    }
  }

  const fs::path out_dir = resolve_out(args.out, "", "spectrum-seed" + std::to_string(args.seed));
  fs::create_directories(out_dir);
  write_file(out_dir / "spectrum.csv", spectrum_csv(results));
  const std::string summary = spectrum_summary_csv(results);
  write_file(out_dir / "spectrum_summary.csv", summary);
  std::cout << summary;
  std::cout << "wrote " << (out_dir / "spectrum.csv").string() << std::endl;
  return 0;
}

struct SampleArgs {
  std::string genotype_path;
  std::string architecture_path;
  int qubits = 4;
  int layers = 2;
  bool sample = false;  // default: deterministic argmax readout
  std::uint64_t seed = 0;
  std::string save_genotype;
};

int cmd_sample_circuit(const SampleArgs& args) {
  if (!args.architecture_path.empty()) {
    if (!args.genotype_path.empty())
      throw config_error("pass at most one of --genotype and --architecture");
    const ArchitectureSpec arch = load_model_arch("", args.architecture_path);
    std::cout << decode(arch, args.qubits).to_text();
    return 0;
  }

  Genotype genotype;
  if (!args.genotype_path.empty()) {
    genotype = load_genotype(args.genotype_path);
  } else {
    Rng rng(derive_seed(args.seed, 0));
    genotype = init_genotype(args.layers, rng);
  }
  if (!args.save_genotype.empty())
    write_file(args.save_genotype, genotype_to_json(genotype) + "\n");

  ArchitectureSpec arch;
  if (args.sample) {
    Rng rng(derive_seed(args.seed, 1));
    arch = sample_architecture(genotype, rng);
  } else {
    arch = argmax_architecture(genotype);
  }
  std::cout << decode(arch, args.qubits).to_text();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evolutionary search for variational quantum circuits with "
               "effective-dimension fitness"};
  app.require_subcommand(1);

  EvolveArgs evolve_args;
  CLI::App* evolve_cmd = app.add_subcommand("evolve", "run the evolutionary search");
  evolve_cmd->add_option("--config", evolve_args.config_path, "run configuration (json)")
      ->required();
  evolve_cmd->add_option("--seed", evolve_args.seed, "override master_seed");
  evolve_cmd->add_option("--out", evolve_args.out, "run directory");
  evolve_cmd->add_option("--threads", evolve_args.threads, "worker thread cap");

  SweepArgs sweep_args;
  CLI::App* sweep_cmd =
      app.add_subcommand("ed-sweep", "effective dimension across dataset sizes");
  sweep_cmd->add_option("--genotype", sweep_args.genotype_path, "genotype json (argmax decode)");
  sweep_cmd->add_option("--architecture", sweep_args.architecture_path, "one-hot architecture json");
  sweep_cmd->add_option("--readout", sweep_args.readout, "parity or qubit0");
  sweep_cmd->add_option("--qubits", sweep_args.qubits, "qubit count");
  sweep_cmd->add_option("--n", sweep_args.n_list, "dataset sizes")->delimiter(',');
  sweep_cmd->add_option("--gamma", sweep_args.gamma, "effective-dimension gamma");
  sweep_cmd->add_option("--theta-samples", sweep_args.theta_samples, "theta samples");
  sweep_cmd->add_option("--fisher-samples", sweep_args.fisher_samples, "data points per fisher");
  sweep_cmd->add_flag("--with-baselines", sweep_args.with_baselines,
                      "add parameter-matched classical nets");
  sweep_cmd->add_option("--seed", sweep_args.seed, "sampling seed");
  sweep_cmd->add_option("--out", sweep_args.out, "output directory");
  sweep_cmd->add_option("--threads", sweep_args.threads, "worker thread cap");

  SpectrumArgs spectrum_args;
  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "fisher eigenvalue spectra across qubit counts");
  spectrum_cmd->add_option("--genotype", spectrum_args.genotype_path, "genotype json");
  spectrum_cmd->add_option("--architecture", spectrum_args.architecture_path,
                           "one-hot architecture json");
  spectrum_cmd->add_option("--readout", spectrum_args.readout, "parity or qubit0");
  spectrum_cmd->add_option("--qubits", spectrum_args.qubit_list, "qubit counts")->delimiter(',');
  spectrum_cmd->add_option("--theta-samples", spectrum_args.theta_samples, "theta samples");
  spectrum_cmd->add_option("--fisher-samples", spectrum_args.fisher_samples,
                           "data points per fisher");
  spectrum_cmd->add_option("--seed", spectrum_args.seed, "sampling seed");
  spectrum_cmd->add_option("--out", spectrum_args.out, "output directory");
  spectrum_cmd->add_option("--threads", spectrum_args.threads, "worker thread cap");

  int enumerate_layers = 1;
  CLI::App* enumerate_cmd =
      app.add_subcommand("enumerate", "count the architecture search space");
  enumerate_cmd->add_option("--layers", enumerate_layers, "variational layer count");

  SampleArgs sample_args;
  CLI::App* sample_cmd =
      app.add_subcommand("sample-circuit", "decode a genotype or architecture into a circuit listing");
  sample_cmd->add_option("--genotype", sample_args.genotype_path,
                         "genotype json (omit to draw a fresh one)");
  sample_cmd->add_option("--architecture", sample_args.architecture_path,
                         "one-hot architecture json");
  sample_cmd->add_option("--qubits", sample_args.qubits, "qubit count");
  sample_cmd->add_option("--layers", sample_args.layers, "layers for a fresh genotype");
  sample_cmd->add_flag("--sample", sample_args.sample, "softmax-sample instead of argmax");
  sample_cmd->add_option("--seed", sample_args.seed, "sampling seed");
  sample_cmd->add_option("--save-genotype", sample_args.save_genotype,
                         "also write the genotype json here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (evolve_cmd->parsed()) return cmd_evolve(evolve_args);
    if (sweep_cmd->parsed()) return cmd_ed_sweep(sweep_args);
    if (spectrum_cmd->parsed()) return cmd_spectrum(spectrum_args);
    if (enumerate_cmd->parsed()) {
      std::cout << enumerate_search_space(enumerate_layers) << std::endl;
      return 0;
    }
    if (sample_cmd->parsed()) return cmd_sample_circuit(sample_args);
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
