#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "purfit/ingest.hpp"
#include "purfit/ipf.hpp"
#include "purfit/sampling.hpp"

namespace purfit {

enum class Pipeline { adult, paygap };

Pipeline pipeline_from_string(const std::string& text);
std::string to_string(Pipeline pipeline);

// De-biasing methods compared by the experiment pipelines, in emission order.
enum class Method { raw, p, pu, pur, pur_uniform };
inline constexpr Method kAllMethods[] = {Method::raw, Method::p, Method::pu,
                                         Method::pur, Method::pur_uniform};
std::string to_string(Method method);

struct ExperimentConfig {
  Pipeline pipeline = Pipeline::adult;
  // (dataset label, csv path); adult uses a single entry, paygap one per year.
  std::vector<std::pair<std::string, std::string>> inputs;
  IngestConfig ingest;
  std::uint32_t replicates = 100;
  std::uint64_t seed = 0;
  double test_fraction = 0.5;
  double lambda = 1e-4;
  SupportMode support_mode = SupportMode::observed_predictors_all_labels;
  SolverOptions solver;
  std::uint64_t synthetic_samples = 0;  // 0: use the dataset size
  std::vector<std::string> reference_profile;  // s0, protected categories in order
  std::string positive_outcome;                // response category for ratios
  FallbackPolicy fallback = FallbackPolicy::response_marginal;
  unsigned threads = 0;  // 0: hardware concurrency

  nlohmann::json parameters_json() const;  // manifest payload
};

struct ResultRow {
  std::string dataset;
  std::string method;
  std::uint32_t replicate = 0;
  std::string metric;
  std::string y;
  std::string s_profile;
  double value = 0.0;
  bool defined = true;  // undefined entries keep their row with an empty value
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<std::pair<std::string, std::uint64_t>> dataset_sizes;
};

// Runs the configured pipeline; replicates execute on a worker pool and rows
// come back in deterministic (dataset, replicate, method) order.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Fixed header: dataset,method,replicate,metric,y,s_profile,value.
void write_result_csv(const std::filesystem::path& path,
                      const std::vector<ResultRow>& rows);

}  // namespace purfit
