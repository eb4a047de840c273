#include "evoqas/run_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace evoqas {

namespace {

using nlohmann::json;

const char* const kConfigKeys[] = {
    "population_size", "num_parents",   "sigma",          "num_generations",
    "n_qubits",        "num_var_layers", "gamma",         "ed_n",
    "theta_samples",   "fisher_samples", "master_seed",   "elitism",
    "readout",         "out_dir",
};

OutputMap readout_from_name(const std::string& name) {
  if (name == "parity") return OutputMap::ParityAllQubits;
  if (name == "qubit0") return OutputMap::Qubit0Marginal;
  throw config_error("config: readout must be 'parity' or 'qubit0'");
}

const char* readout_name(OutputMap m) {
  return m == OutputMap::ParityAllQubits ? "parity" : "qubit0";
}

template <class T>
void read_key(const json& j, const char* key, T& out) {
  if (const auto it = j.find(key); it != j.end()) {
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      throw config_error(std::string("config: bad value for key '") + key + "'");
    }
  }
}

}  // namespace

RunConfig run_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw config_error(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kConfigKeys) known = known || key == k;
    if (!known) throw config_error("config: unknown key '" + key + "'");
  }

  RunConfig cfg;
  read_key(j, "population_size", cfg.evo.population_size);
  read_key(j, "num_parents", cfg.evo.num_parents);
  read_key(j, "sigma", cfg.evo.sigma);
  read_key(j, "num_generations", cfg.evo.num_generations);
  read_key(j, "n_qubits", cfg.evo.n_qubits);
  read_key(j, "num_var_layers", cfg.evo.num_var_layers);
  read_key(j, "gamma", cfg.evo.ed.gamma);
  read_key(j, "ed_n", cfg.evo.ed.n);
  read_key(j, "theta_samples", cfg.evo.ed.num_theta_samples);
  read_key(j, "fisher_samples", cfg.evo.ed.fisher_samples);
  read_key(j, "master_seed", cfg.evo.master_seed);
  read_key(j, "elitism", cfg.evo.elitism);
  std::string readout = readout_name(cfg.evo.readout);
  read_key(j, "readout", readout);
  cfg.evo.readout = readout_from_name(readout);
  read_key(j, "out_dir", cfg.out_dir);

  try {
    cfg.evo.validate();
  } catch (const std::exception& e) {
    throw config_error(std::string("config: ") + e.what());
  }
  return cfg;
}

std::string run_config_to_json(const RunConfig& cfg) {
  json j;
  j["population_size"] = cfg.evo.population_size;
  j["num_parents"] = cfg.evo.num_parents;
  j["sigma"] = cfg.evo.sigma;
  j["num_generations"] = cfg.evo.num_generations;
  j["n_qubits"] = cfg.evo.n_qubits;
  j["num_var_layers"] = cfg.evo.num_var_layers;
  j["gamma"] = cfg.evo.ed.gamma;
  j["ed_n"] = cfg.evo.ed.n;
  j["theta_samples"] = cfg.evo.ed.num_theta_samples;
  j["fisher_samples"] = cfg.evo.ed.fisher_samples;
  j["master_seed"] = cfg.evo.master_seed;
  j["elitism"] = cfg.evo.elitism;
  j["readout"] = readout_name(cfg.evo.readout);
  j["out_dir"] = cfg.out_dir;
  return j.dump(2) + "\n";
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return run_config_from_json(buf.str());
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string history_csv(const EvolutionRecord& record) {
  std::string out = "generation,best_ed,mean_ed,p25,p75\n";
  for (const GenerationStats& s : record.history) {
    out += std::to_string(s.generation);
    out += ',';
    out += format_double(s.best);
    out += ',';
    out += format_double(s.mean);
    out += ',';
    out += format_double(s.p25);
    out += ',';
    out += format_double(s.p75);
    out += '\n';
  }
  return out;
}

std::string ed_sweep_csv(const std::vector<std::pair<std::string, std::vector<EdSweepRow>>>& rows,
                         bool with_model_id) {
  std::string out = with_model_id ? "model_id,n,effective_dimension,normalized_ed\n"
                                  : "n,effective_dimension,normalized_ed\n";
  for (const auto& [model_id, model_rows] : rows) {
    for (const EdSweepRow& r : model_rows) {
      if (!r.ok) continue;
      if (with_model_id) {
        out += model_id;
        out += ',';
      }
      out += std::to_string(r.n);
      out += ',';
      out += format_double(r.effective_dim);
      out += ',';
      out += format_double(r.normalized);
      out += '\n';
    }
  }
  return out;
}

std::string spectrum_csv(const std::vector<SpectrumResult>& results) {
  std::string out = "model_id,n_qubits,d,eigenvalue\n";
  for (const SpectrumResult& r : results) {
    for (double v : r.eigenvalues) {
      out += r.model_id;
      out += ',';
      out += std::to_string(r.size);
      out += ',';
      out += std::to_string(r.d);
      out += ',';
      out += format_double(v);
      out += '\n';
    }
  }
  return out;
}

std::string spectrum_summary_csv(const std::vector<SpectrumResult>& results) {
  std::string out = "model_id,n_qubits,d,frac_below_1e-2\n";
  for (const SpectrumResult& r : results) {
    out += r.model_id;
    out += ',';
    out += std::to_string(r.size);
    out += ',';
    out += std::to_string(r.d);
    out += ',';
    out += format_double(r.frac_below);
    out += '\n';
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_run_directory(const std::filesystem::path& dir, const RunConfig& cfg,
                         const EvolutionRecord& record) {
  std::filesystem::create_directories(dir);
  write_file(dir / "config.json", run_config_to_json(cfg));
  write_file(dir / "history.csv", history_csv(record));
  const GenerationStats& last = record.history.back();
  write_file(dir / "best_genotype.json", genotype_to_json(last.best_genotype) + "\n");
  write_file(dir / "best_architecture.json", architecture_to_json(last.best_arch) + "\n");
  write_file(dir / "best_circuit.txt", decode(last.best_arch, cfg.evo.n_qubits).to_text());
}

}  // namespace evoqas
