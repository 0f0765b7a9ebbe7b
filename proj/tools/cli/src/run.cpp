// Copyright 2026 The fermisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fermisim_cli/run.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fermisim/fq_hubbard.hpp"
#include "fermisim/oracle.hpp"
#include "fermisim/validation.hpp"

namespace fermisim::cli {

namespace {

using nlohmann::json;

json config_json(const RunConfig& c) {
  json j;
  j["formalism"] = c.formalism == Formalism::kFirst ? "first" : "second";
  j["lattice"] = {{"sites", c.sites}, {"boundary", c.boundary}};
  j["params"] = {{"v0", c.params.v0}, {"t0", c.params.t0}};
  if (!c.labels.empty()) {
    j["particles"] = {{"labels", c.labels}};
  } else {
    json occ = json::array();
    for (const Orbital& o : c.occupied) {
      occ.push_back(json::array({o.site, o.spin == Spin::kUp ? "up" : "down"}));
    }
    j["particles"] = {{"occupied", occ}};
  }
  j["plan"] = {{"time", c.plan.time}, {"steps", c.plan.steps}};
  json obs = json::array();
  for (Observable o : c.observables) obs.push_back(to_string(o));
  j["observables"] = obs;
  j["sampling"] = {
      {"trials", c.sampling.trials}, {"seed", c.sampling.seed}, {"epsilon", c.sampling.epsilon}};
  j["backend"] = std::string(fermisim::to_string(c.backend));
  j["mode"] = c.mode == Statistics::kFermi ? "fermi" : "bose";
  return j;
}

Model make_model(const RunConfig& c) {
  if (c.formalism == Formalism::kFirst) {
    return Model::first_quantized(c.sites, c.particles(), c.params);
  }
  return Model::second_quantized(LatticeSpec::open_chain(c.sites), c.params);
}

QuantumState initial_state(const RunConfig& c, const Model& model) {
  const std::vector<Orbital> orbitals = c.initial_orbitals();
  if (c.formalism == Formalism::kFirst) {
    return prepare_first_quantized(model.fq_layout(), orbitals, c.mode, c.backend);
  }
  const ModeLayout modes(c.sites);
  return QuantumState::basis(modes.register_layout(), encode_occupation(modes, orbitals),
                             c.backend);
}

std::string format_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

struct Recorder {
  json observables = json::object();
  std::vector<TableRow> table;
};

void record_site_series(Recorder& rec, const std::string& name, const std::vector<double>& exact,
                        const std::vector<Estimate>* sampled) {
  json entry;
  entry["exact"] = exact;
  if (sampled != nullptr) {
    json values = json::array();
    json errors = json::array();
    for (const Estimate& e : *sampled) {
      values.push_back(e.value);
      errors.push_back(e.std_error);
    }
    entry["sampled"] = values;
    entry["stderr"] = errors;
  }
  rec.observables[name] = entry;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    TableRow row{name, static_cast<int>(i) + 1, exact[i], std::nullopt, std::nullopt};
    if (sampled != nullptr) {
      row.sampled = (*sampled)[i].value;
      row.std_error = (*sampled)[i].std_error;
    }
    rec.table.push_back(row);
  }
}

double symmetric_fidelity(const QuantumState& particles, int width, std::vector<int> labels) {
  std::sort(labels.begin(), labels.end());
  double count = 0.0;
  Amplitude overlap{0.0, 0.0};
  do {
    Bits basis = 0;
    for (std::size_t k = 0; k < labels.size(); ++k) {
      basis = write_field(basis, static_cast<int>(k) * width, width,
                          static_cast<Bits>(labels[k] - 1));
    }
    overlap += particles.amplitude(basis);
    count += 1.0;
  } while (std::next_permutation(labels.begin(), labels.end()));
  return std::norm(overlap) / count;
}

double slater_fidelity(const QuantumState& particles, int width, const std::vector<int>& labels) {
  Amplitude overlap{0.0, 0.0};
  for (const auto& [tuple, coeff] : oracle::slater_antisymmetrize(labels)) {
    Bits basis = 0;
    for (std::size_t k = 0; k < tuple.size(); ++k) {
      basis = write_field(basis, static_cast<int>(k) * width, width,
                          static_cast<Bits>(tuple[k] - 1));
    }
    overlap += coeff * particles.amplitude(basis);
  }
  return std::norm(overlap);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write output file '" + path + "'");
  out << text;
  if (!out) throw InvalidInput("failed while writing '" + path + "'");
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text(path, text);
  }
}

std::vector<int> parse_label_list(const std::string& text) {
  std::vector<int> labels;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw InvalidInput("empty entry in label list '" + text + "'");
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw InvalidInput("label '" + item + "' is not an integer");
    labels.push_back(v);
  }
  return labels;
}

void apply_thread_env() {
  const char* env = std::getenv("FERMISIM_NUM_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) {
    throw InvalidInput(std::string("FERMISIM_NUM_THREADS must be a positive integer, got '") +
                       env + "'");
  }
  set_num_threads(static_cast<int>(n));
}

}  // namespace

RunConfig apply_overrides(RunConfig config, const EvolveOverrides& overrides) {
  if (overrides.backend) config.backend = *overrides.backend;
  if (overrides.seed) config.sampling.seed = *overrides.seed;
  return config;
}

EvolveResult run_evolve(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const Model model = make_model(config);
  QuantumState state = initial_state(config, model);

  OpTally tally;
  if (config.formalism == Formalism::kFirst) {
    const FirstQuantizedLayout layout = model.fq_layout();
    trotter_evolve_fq(state, layout, config.params, config.plan, config.mode);
    tally = op_count_fq(layout, config.plan);
  } else {
    trotter_evolve(state, model.lattice, config.params, config.plan);
    tally = op_count(model.lattice, config.plan);
  }

  const bool sampling = config.sampling.trials > 0;
  SamplingPlan plan;
  plan.trials = std::max<std::uint64_t>(config.sampling.trials, 1);
  plan.seed = RngSeed{config.sampling.seed};
  plan.epsilon = config.sampling.epsilon;

  Recorder rec;
  for (Observable o : config.observables) {
    switch (o) {
      case Observable::kDensity: {
        const auto exact = charge_density_exact(state, model);
        std::vector<Estimate> sampled;
        if (sampling) sampled = charge_density_sampled(state, model, plan);
        record_site_series(rec, "density", exact, sampling ? &sampled : nullptr);
        break;
      }
      case Observable::kDoubleOccupancy: {
        std::vector<double> exact;
        std::vector<Estimate> sampled;
        for (int s = 0; s < model.sites(); ++s) {
          exact.push_back(pair_correlation_exact(state, model, 2 * s, 2 * s + 1));
          if (sampling) sampled.push_back(pair_correlation_sampled(state, model, 2 * s, 2 * s + 1, plan));
        }
        record_site_series(rec, "double_occupancy", exact, sampling ? &sampled : nullptr);
        break;
      }
      case Observable::kEnergy: {
        const EnergyReport e = expected_energy(state, model);
        rec.observables["energy"] = {
            {"total", e.total}, {"potential", e.potential}, {"kinetic", e.kinetic}};
        rec.table.push_back({"energy_total", 0, e.total, std::nullopt, std::nullopt});
        rec.table.push_back({"energy_potential", 0, e.potential, std::nullopt, std::nullopt});
        rec.table.push_back({"energy_kinetic", 0, e.kinetic, std::nullopt, std::nullopt});
        break;
      }
      case Observable::kMomentum: {
        const auto exact = momentum_distribution_exact(state, model, 0);
        json entry;
        entry["particle"] = 0;
        entry["exact"] = exact;
        std::vector<Estimate> sampled;
        if (sampling) {
          const Histogram h = momentum_distribution_sampled(state, model, 0, plan);
          const double n = static_cast<double>(h.trials);
          for (std::size_t k = 0; k < exact.size(); ++k) {
            const auto it = h.counts.find(k);
            const double p = it == h.counts.end() ? 0.0 : static_cast<double>(it->second) / n;
            sampled.push_back({p, std::sqrt(p * (1.0 - p) / n)});
          }
          json values = json::array();
          json errors = json::array();
          for (const Estimate& e : sampled) {
            values.push_back(e.value);
            errors.push_back(e.std_error);
          }
          entry["sampled"] = values;
          entry["stderr"] = errors;
        }
        rec.observables["momentum"] = entry;
        for (std::size_t k = 0; k < exact.size(); ++k) {
          TableRow row{"momentum", static_cast<int>(k), exact[k], std::nullopt, std::nullopt};
          if (sampling) {
            row.sampled = sampled[k].value;
            row.std_error = sampled[k].std_error;
          }
          rec.table.push_back(row);
        }
        break;
      }
    }
  }

  json counts = json::object();
  for (const auto& [kind, count] : tally.by_kind) counts[kind] = count;
  counts["total"] = tally.total();

  json doc;
  doc["fermisim_version"] = version();
  doc["config"] = config_json(config);
  doc["config_yaml"] = serialize_config(config);
  doc["seed"] = config.sampling.seed;
  doc["qubits"] = state.num_qubits();
  doc["final_norm"] = state.norm();
  doc["op_counts"] = counts;
  doc["observables"] = rec.observables;
  doc["wall_time_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return EvolveResult{doc, rec.table};
}

json result_payload(const json& document) {
  json copy = document;
  copy.erase("wall_time_seconds");
  return copy;
}

std::string render_csv(const std::vector<TableRow>& rows) {
  std::string out = "observable,index,exact,sampled,stderr\n";
  auto cell = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const TableRow& r : rows) {
    out += r.observable + "," + std::to_string(r.index) + "," + cell(r.exact) + "," +
           cell(r.sampled) + "," + cell(r.std_error) + "\n";
  }
  return out;
}

json run_antisym(const AntisymRequest& request) {
  const auto& labels = request.labels;
  if (labels.empty()) throw InvalidInput("at least one label is required");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 1) throw InvalidInput("labels start at 1");
    if (i > 0 && labels[i] <= labels[i - 1]) {
      throw InvalidInput("labels must be strictly increasing");
    }
  }
  int bits = request.bits;
  if (bits == 0) bits = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(labels.back() - 1))));
  const QuWordLayout words{bits, static_cast<int>(labels.size()), false};
  words.validate();
  const RegisterBank bank(words, request.sort);

  QuantumState state = prepare_ordered_input(bank, OrderedConfiguration{labels});
  antisymmetrize(state, bank, request.mode);
  bool clear = true;
  state.for_each_entry([&](Bits b, Amplitude) { clear = clear && bank.ancillas_clear(b); });
  if (!clear) throw InvariantViolation("ancilla registers are not clear after antisymmetrization");
  const QuantumState particles = extract_particles(state, bank);

  const int w = words.word_width();
  json amplitudes = json::array();
  particles.for_each_entry([&](Bits b, Amplitude a) {
    if (std::abs(a) <= 1e-14) return;
    std::vector<int> tuple;
    for (int k = 0; k < words.particles; ++k) tuple.push_back(static_cast<int>(read_field(b, k * w, w)) + 1);
    amplitudes.push_back({{"labels", tuple}, {"re", a.real()}, {"im", a.imag()}});
  });

  const bool fermi = request.mode == Statistics::kFermi;
  json doc;
  doc["fermisim_version"] = version();
  doc["labels"] = labels;
  doc["n"] = labels.size();
  doc["mode"] = fermi ? "fermi" : "bose";
  doc["bits"] = bits;
  doc["sort"] = request.sort == SortAlgorithm::kHeap ? "heap" : "odd-even";
  doc["qubits"] = bank.layout().num_qubits();
  doc["amplitudes"] = amplitudes;
  doc["norm"] = particles.norm();
  doc["ancillas_clear"] = clear;
  doc["fidelity"] = fermi ? slater_fidelity(particles, w, labels)
                          : symmetric_fidelity(particles, w, labels);
  return doc;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"fermisim: fermionic Hubbard-chain simulation on a qubit register simulator"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;
  std::string csv_path;
  std::string backend_text;
  std::optional<std::uint64_t> seed;
  bool validation_flag = false;
  CLI::App* evolve = app.add_subcommand("evolve", "Run a Trotterized evolution from a config");
  evolve->add_option("--config", config_path, "YAML run configuration")->required();
  evolve->add_option("--output", output_path, "Result document path (default: stdout)");
  evolve->add_option("--csv", csv_path, "Also write the observable table as CSV");
  evolve->add_option("--backend", backend_text, "Override the backend (dense|sparse)");
  evolve->add_option("--seed", seed, "Override the sampling seed");
  evolve->add_flag("--validation-mode", validation_flag, "Enable exhaustive invariant checks");

  std::string labels_text;
  int n = 0;
  std::string mode_text = "fermi";
  std::string sort_text = "heap";
  int bits = 0;
  std::string antisym_output;
  bool antisym_validation = false;
  CLI::App* antisym = app.add_subcommand("antisym", "Antisymmetrize one ordered label tuple");
  antisym->add_option("--labels", labels_text, "Comma-separated increasing labels, e.g. 1,3");
  antisym->add_option("--n", n, "Particle count (labels default to 1..n)");
  antisym->add_option("--mode", mode_text, "fermi or bose");
  antisym->add_option("--bits", bits, "Label bits per word (default: smallest that fits)");
  antisym->add_option("--sort", sort_text, "heap or odd-even");
  antisym->add_option("--output", antisym_output, "Output document path (default: stdout)");
  antisym->add_flag("--validation-mode", antisym_validation, "Enable exhaustive invariant checks");

  std::string suite;
  CLI::App* validate = app.add_subcommand("validate", "Run an oracle-equivalence suite");
  validate->add_option("suite", suite, "antisym | trotter-sq | trotter-fq | crossform | scaling")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    apply_thread_env();
    if (evolve->parsed()) {
      EvolveOverrides overrides;
      if (!backend_text.empty()) overrides.backend = parse_backend(backend_text);
      overrides.seed = seed;
      const RunConfig config = apply_overrides(load_config(config_path), overrides);
      const ValidationModeScope scope(validation_flag);
      const EvolveResult result = run_evolve(config);
      emit(output_path, result.document.dump(2) + "\n", out);
      if (!csv_path.empty()) emit(csv_path, render_csv(result.table), out);
      return kExitOk;
    }
    if (antisym->parsed()) {
      AntisymRequest request;
      if (!labels_text.empty()) request.labels = parse_label_list(labels_text);
      if (antisym->count("--n") > 0) {
        if (n < 1) throw InvalidInput("--n must be positive");
        if (request.labels.empty()) {
          request.labels.resize(static_cast<std::size_t>(n));
          std::iota(request.labels.begin(), request.labels.end(), 1);
        } else if (static_cast<int>(request.labels.size()) != n) {
          throw InvalidInput("--n does not match the number of labels");
        }
      }
      if (mode_text == "fermi") {
        request.mode = Statistics::kFermi;
      } else if (mode_text == "bose") {
        request.mode = Statistics::kBose;
      } else {
        throw InvalidInput("--mode must be fermi or bose");
      }
      if (sort_text == "heap") {
        request.sort = SortAlgorithm::kHeap;
      } else if (sort_text == "odd-even") {
        request.sort = SortAlgorithm::kOddEven;
      } else {
        throw InvalidInput("--sort must be heap or odd-even");
      }
      if (antisym->count("--bits") > 0 && bits < 1) throw InvalidInput("--bits must be positive");
      request.bits = bits;
      const ValidationModeScope scope(antisym_validation);
      emit(antisym_output, run_antisym(request).dump(2) + "\n", out);
      return kExitOk;
    }
    const validation::SuiteReport report = validation::run_suite(suite);
    out << validation::format_report(report);
    return report.passed() ? kExitOk : kExitInvariant;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvariantViolation& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
}

}  // namespace fermisim::cli
