// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. argv[1] must point at the evoqas CLI binary (the determinism
// harness reruns it with different thread counts).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "evoqas/analysis.hpp"
#include "evoqas/architecture.hpp"
#include "evoqas/effective_dimension.hpp"
#include "evoqas/evolution.hpp"
#include "evoqas/mlp.hpp"
#include "evoqas/model.hpp"
#include "evoqas/run_io.hpp"
#include "oracles.hpp"

using namespace evoqas;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

void report(int index, const std::string& name, bool pass, double seconds,
            const std::string& detail) {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << index << ". " << name << " (" << seconds
            << " s)" << (detail.empty() ? "" : " — " + detail) << std::endl;
  if (!pass) ++g_failures;
}

void run_criterion(int index, const std::string& name,
                   const std::function<bool(std::string&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(index, name, pass, seconds, detail);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& cli, const std::string& args,
            const std::filesystem::path& stdout_file) {
  const std::string cmd = "\"" + cli + "\" " + args + " > \"" + stdout_file.string() + "\" 2>&1";
  return std::system(cmd.c_str());
}

QuantumModel random_qnn(int n_qubits, int layers, std::uint64_t seed) {
  Rng rng(seed);
  const Genotype g = init_genotype(layers, rng);
  return QuantumModel(decode(sample_architecture(g, rng), n_qubits));
}

EvolutionConfig desk_scale_config() {
  EvolutionConfig cfg;
  cfg.population_size = 20;
  cfg.num_parents = 5;
  cfg.sigma = 0.02;
  cfg.num_generations = 30;
  cfg.n_qubits = 4;
  cfg.num_var_layers = 2;
  cfg.ed.gamma = 1.0;
  cfg.ed.n = 1000;
  cfg.ed.num_theta_samples = 100;
  cfg.ed.fisher_samples = 100;
  cfg.master_seed = 20240801;
  return cfg;
}

// shared across criteria 5-7
EvolutionRecord g_desk_record;
bool g_desk_ready = false;

bool criterion_search_space(std::string& detail, const std::string& cli,
                            const std::filesystem::path& scratch) {
  if (enumerate_search_space(1) != 36) {
    detail = "closed form != 36";
    return false;
  }

  std::set<std::string> circuits;
  for (int h = 0; h < 2; ++h)
    for (int enc = 0; enc < 3; ++enc)
      for (int ent = 0; ent < 2; ++ent)
        for (int rot = 0; rot < 3; ++rot) {
          const ArchitectureSpec a{static_cast<HChoice>(h), static_cast<RotationAxis>(enc),
                                   {{static_cast<Entangler>(ent), static_cast<RotationAxis>(rot)}}};
          circuits.insert(decode(a, 4).to_text());
        }
  if (circuits.size() != 36) {
    detail = "exhaustive decode found " + std::to_string(circuits.size()) + " distinct circuits";
    return false;
  }

  const auto out = scratch / "enumerate.txt";
  if (run_cli(cli, "enumerate --layers 1", out) != 0) {
    detail = "cli enumerate failed";
    return false;
  }
  if (slurp(out) != "36\n") {
    detail = "cli printed '" + slurp(out) + "'";
    return false;
  }
  detail = "36 configurations, closed form == exhaustive decode == cli";
  return true;
}

bool criterion_gradients(std::string& detail) {
  double worst = 0.0;
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 20; ++seed) {
    const QuantumModel m = random_qnn(4, 2, 1000 + seed);
    Rng rng(2000 + seed);
    std::vector<double> x(m.input_count()), theta(m.param_count());
    for (double& v : x) v = rng.normal();
    for (double& v : theta) v = rng.uniform(0.0, 2.0 * kPi);
    bool used = false;
    for (int y = 0; y < 2; ++y) {
      if (m.forward(x, theta)[y] < 1e-3) continue;  // keep the FD oracle conditioned
      const auto shift = m.log_prob_gradient(x, y, theta);
      const auto fd = oracle::fd_log_prob_gradient(m, x, y, theta, 1e-5);
      for (int j = 0; j < m.param_count(); ++j)
        worst = std::max(worst, std::abs(shift[j] - fd[j]));
      used = true;
    }
    if (used) ++checked;
  }
  detail = "max |shift - fd| = " + format_double(worst) + " over 20 circuits";
  return worst < 1e-6;
}

bool criterion_fisher_validity(std::string& detail) {
  double worst_asym = 0.0, worst_eig = 0.0, worst_trace_gap = 0.0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const QuantumModel m = random_qnn(4, 2, 3000 + seed);
    const int d = m.param_count();
    std::vector<FisherSample> samples(30);
    for (int s = 0; s < 30; ++s) {
      Rng rng(derive_seed(4000 + seed, s));
      std::vector<double> theta(d);
      for (double& t : theta) t = rng.uniform(0.0, 2.0 * kPi);
      samples[s] = empirical_fisher(m, theta, 25, rng);
      worst_asym = std::max(worst_asym, samples[s].matrix.max_abs_asymmetry());
      const auto eigs = eigenspectrum(samples[s].matrix);
      worst_eig = std::min(worst_eig, eigs.front());
    }
    const auto normalized = normalize_fisher(samples, d);
    double mean_trace = 0.0;
    for (const Matrix& nm : normalized) mean_trace += nm.trace();
    mean_trace /= static_cast<double>(normalized.size());
    worst_trace_gap = std::max(worst_trace_gap, std::abs(mean_trace - d));
  }
  detail = "asymmetry " + format_double(worst_asym) + ", min eig " + format_double(worst_eig) +
           ", |mean trace - d| " + format_double(worst_trace_gap);
  return worst_asym < 1e-12 && worst_eig > -1e-9 && worst_trace_gap < 1e-9;
}

bool criterion_ed_oracles(std::string& detail) {
  // (a) identity-Fisher stub against the closed form
  double worst_closed = 0.0;
  for (int d : {1, 2, 4, 8, 16, 24}) {
    for (double gamma : {0.25, 0.5, 1.0}) {
      for (int n : {100, 500, 1000, 5000, 10000}) {
        if (kappa_for(gamma, n) <= 1.0) continue;
        FisherSample s;
        s.matrix = Matrix::identity(d);
        s.trace = static_cast<double>(d);
        const double got = effective_dimension_from_samples(std::vector<FisherSample>(5, s),
                                                            gamma, n, d);
        const double kappa = kappa_for(gamma, n);
        const double want = d * std::log1p(kappa) / std::log(kappa);
        worst_closed = std::max(worst_closed, std::abs(got - want));
      }
    }
  }
  if (worst_closed >= 1e-9) {
    detail = "identity stub off the closed form by " + format_double(worst_closed);
    return false;
  }

  // (b) d = 2 quantum model: Monte Carlo against dense grid quadrature
  const ArchitectureSpec a{HChoice::WithH, RotationAxis::RY,
                           {{Entangler::Ring, RotationAxis::RX}}};
  const QuantumModel model(decode(a, 2));
  const double mc = effective_dimension(model, 1.0, 1000, 1000, 1000, 555).value;
  const double grid = oracle::grid_quadrature_ed_2d(model, 1.0, 1000, 32, 1000, 556);
  const double rel = std::abs(mc - grid) / grid;
  detail = "identity stub within " + format_double(worst_closed) + "; mc " + format_double(mc) +
           " vs grid " + format_double(grid) + " (rel " + format_double(rel) + ")";
  return rel < 0.02;
}

bool criterion_desk_evolution(std::string& detail) {
  const EvolutionConfig cfg = desk_scale_config();
  g_desk_record = evolve(cfg);
  g_desk_ready = true;
  const EvolutionRecord& rec = g_desk_record;

  for (std::size_t i = 1; i < rec.history.size(); ++i)
    if (rec.history[i].best < rec.history[i - 1].best) {
      detail = "best fitness decreased at generation " + std::to_string(i);
      return false;
    }
  const double final_best = rec.history.back().best;
  const double initial_mean = rec.history.front().mean;
  if (!(final_best > initial_mean)) {
    detail = "final best " + format_double(final_best) + " does not exceed initial mean " +
             format_double(initial_mean);
    return false;
  }

  const EvolutionRecord rerun = evolve(cfg);
  if (history_csv(rec) != history_csv(rerun) ||
      genotype_to_json(rec.history.back().best_genotype) !=
          genotype_to_json(rerun.history.back().best_genotype)) {
    detail = "rerun with the same seed differed";
    return false;
  }
  detail = "initial mean " + format_double(initial_mean) + " -> best " +
           format_double(final_best) + ", monotone, rerun identical";
  return true;
}

bool criterion_ed_vs_n(std::string& detail) {
  if (!g_desk_ready) {
    detail = "depends on criterion 5";
    return false;
  }
  const QuantumModel model(decode(g_desk_record.history.back().best_arch, 4));
  const std::vector<int> n_list{500, 1000, 2000, 5000, 10000};
  const auto rows = ed_sweep(model, n_list, 1.0, 100, 100, 777);
  std::string values;
  double previous = 0.0;
  bool ok = true;
  for (const EdSweepRow& row : rows) {
    if (!row.ok) {
      detail = "kappa <= 1 for n = " + std::to_string(row.n);
      return false;
    }
    values += (values.empty() ? "" : ", ") + std::to_string(row.n) + ": " +
              format_double(row.effective_dim);
    if (row.effective_dim < previous * 0.98) ok = false;
    previous = row.effective_dim;
  }
  detail = "ed(n) = {" + values + "}";
  return ok;
}

bool criterion_spectrum(std::string& detail) {
  if (!g_desk_ready) {
    detail = "depends on criterion 5";
    return false;
  }
  const ArchitectureSpec best = g_desk_record.history.back().best_arch;
  bool pass = true;
  std::string lines;
  for (int q = 4; q <= 7; ++q) {
    const QuantumModel qnn(decode(best, q));
    const MlpModel mlp(mlp_match_param_count(qnn.param_count(), q), Activation::Identity);
    const auto qnn_spec = fisher_spectrum("qnn", q, qnn, 100, 100, 888 + q);
    const auto mlp_spec = fisher_spectrum("mlp_identity", q, mlp, 100, 100, 888 + q);
    lines += (lines.empty() ? "" : "; ") + std::to_string(q) + "q: qnn " +
             format_double(qnn_spec.frac_below) + " vs mlp " + format_double(mlp_spec.frac_below);
    if (q == 4 && !(qnn_spec.frac_below < mlp_spec.frac_below)) pass = false;
  }
  detail = "frac_below(1e-2 lambda_max): " + lines;
  return pass;
}

bool criterion_determinism(std::string& detail, const std::string& cli,
                           const std::filesystem::path& scratch) {
  const auto dir = scratch / "det";
  std::filesystem::create_directories(dir);

  RunConfig rc;
  rc.evo.population_size = 6;
  rc.evo.num_parents = 2;
  rc.evo.sigma = 0.02;
  rc.evo.num_generations = 2;
  rc.evo.n_qubits = 3;
  rc.evo.num_var_layers = 1;
  rc.evo.ed.num_theta_samples = 20;
  rc.evo.ed.fisher_samples = 20;
  rc.evo.master_seed = 7;
  rc.out_dir = (dir / "run").string();
  write_file(dir / "config.json", run_config_to_json(rc));

  Rng rng(12);
  write_file(dir / "genotype.json", genotype_to_json(init_genotype(2, rng)) + "\n");

  struct Step {
    std::string args;
    std::vector<std::string> files;
  };
  const std::string cfg_path = (dir / "config.json").string();
  const std::string gen_path = (dir / "genotype.json").string();
  const std::vector<Step> steps{
      {"evolve --config \"" + cfg_path + "\" --out \"" + (dir / "run").string() + "\"",
       {"run/config.json", "run/history.csv", "run/best_genotype.json",
        "run/best_architecture.json", "run/best_circuit.txt"}},
      {"ed-sweep --genotype \"" + gen_path + "\" --qubits 3 --n 500,1000 --with-baselines"
       " --theta-samples 20 --fisher-samples 20 --seed 5 --out \"" + (dir / "sweep").string() + "\"",
       {"sweep/ed_sweep.csv"}},
      {"spectrum --genotype \"" + gen_path + "\" --qubits 3,4 --theta-samples 15"
       " --fisher-samples 15 --seed 6 --out \"" + (dir / "spec").string() + "\"",
       {"spec/spectrum.csv", "spec/spectrum_summary.csv"}},
  };

  for (const Step& step : steps) {
    if (run_cli(cli, step.args + " --threads 1", dir / "stdout1.txt") != 0) {
      detail = "cli failed: " + step.args + " — " + slurp(dir / "stdout1.txt");
      return false;
    }
    std::vector<std::string> first;
    for (const std::string& f : step.files) first.push_back(slurp(dir / f));

    if (run_cli(cli, step.args + " --threads 2", dir / "stdout2.txt") != 0) {
      detail = "cli rerun failed: " + step.args;
      return false;
    }
    for (std::size_t i = 0; i < step.files.size(); ++i) {
      if (slurp(dir / step.files[i]) != first[i]) {
        detail = "file differs across thread counts: " + step.files[i];
        return false;
      }
    }
  }
  detail = "evolve, ed-sweep and spectrum outputs byte-identical at --threads 1 and 2";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-evoqas-cli>" << std::endl;
    return 64;
  }
  const std::string cli = argv[1];
  const std::filesystem::path scratch = std::filesystem::current_path() / "acceptance_scratch";
  std::filesystem::remove_all(scratch);
  std::filesystem::create_directories(scratch);

  run_criterion(1, "search-space count",
                [&](std::string& d) { return criterion_search_space(d, cli, scratch); });
  run_criterion(2, "parameter-shift gradients match finite differences", criterion_gradients);
  run_criterion(3, "fisher samples valid and trace-normalized", criterion_fisher_validity);
  run_criterion(4, "effective-dimension oracles (closed form + grid quadrature)",
                criterion_ed_oracles);
  run_criterion(5, "desk-scale evolution (monotone, improving, reproducible)",
                criterion_desk_evolution);
  run_criterion(6, "effective dimension non-decreasing in n for the best circuit",
                criterion_ed_vs_n);
  run_criterion(7, "qnn fisher spectrum less degenerate than linear baseline",
                criterion_spectrum);
  run_criterion(8, "outputs byte-identical across thread counts",
                [&](std::string& d) { return criterion_determinism(d, cli, scratch); });

  std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) + " criteria failed")
            << std::endl;
  return g_failures;
}
