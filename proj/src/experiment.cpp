#include "purfit/experiment.hpp"

#include <atomic>
#include <mutex>
#include <cstdio>
#include <fstream>
#include <thread>

#include "purfit/csv.hpp"
#include "purfit/errors.hpp"
#include "purfit/metrics.hpp"
#include "purfit/rng.hpp"

namespace purfit {

Pipeline pipeline_from_string(const std::string& text) {
  if (text == "adult") return Pipeline::adult;
  if (text == "paygap") return Pipeline::paygap;
  throw ArgumentError("unknown pipeline: " + text);
}

std::string to_string(Pipeline pipeline) {
  return pipeline == Pipeline::adult ? "adult" : "paygap";
}

std::string to_string(Method method) {
  switch (method) {
    case Method::raw: return "raw";
    case Method::p: return "p";
    case Method::pu: return "pu";
    case Method::pur: return "pur";
    case Method::pur_uniform: return "pur_uniform";
  }
  return "?";
}

nlohmann::json ExperimentConfig::parameters_json() const {
  nlohmann::json inputs_json = nlohmann::json::array();
  for (const auto& [label, path] : inputs)
    inputs_json.push_back({{"dataset", label}, {"csv", path}});
  return {{"pipeline", to_string(pipeline)},
          {"inputs", inputs_json},
          {"ingest", ingest.to_json()},
          {"replicates", replicates},
          {"seed", seed},
          {"test_fraction", test_fraction},
          {"lambda", lambda},
          {"support_mode", to_string(support_mode)},
          {"solver",
           {{"tolerance", solver.tolerance}, {"max_cycles", solver.max_cycles}}},
          {"synthetic_samples", synthetic_samples},
          {"reference_profile", reference_profile},
          {"positive_outcome", positive_outcome},
          {"fallback", fallback == FallbackPolicy::response_marginal
                           ? "response-marginal"
                           : "uniform"}};
}

namespace {

// Seed-derivation tags: each (dataset, replicate, purpose) owns a substream.
constexpr std::uint64_t kSplitTag = 1;
constexpr std::uint64_t kTrainTag = 2;
constexpr std::uint64_t kTestTag = 3;
constexpr std::uint64_t kSyntheticTagBase = 16;  // + method index

struct DatasetContext {
  std::string label;
  CountTable counts;
  JointTable empirical;
  std::size_t s0 = 0;
  std::size_t y_pos = 0;
};

std::string sensitive_profile_name(const MarginalLayout& layout, std::size_t s) {
  auto profile = layout.profile_of(s);
  std::string out;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i) out.push_back('|');
    out += profile[i];
  }
  return out;
}

void append_disparity_rows(std::vector<ResultRow>& rows, const DatasetContext& ds,
                           std::uint32_t replicate, Method method,
                           const JointTable& table,
                           const std::string& metric_prefix) {
  const auto& schema = *table.schema();
  MarginalLayout s_layout(table.schema(), table.schema()->protected_subset());

  DisparityReport diff = attributable_disparity(table, ds.s0);
  for (std::size_t y = 0; y < diff.response_cells; ++y)
    for (std::size_t s = 0; s < diff.sensitive_cells; ++s)
      rows.push_back({ds.label, to_string(method), replicate,
                      metric_prefix + "attributable_disparity",
                      schema.feature(0).categories[y],
                      sensitive_profile_name(s_layout, s),
                      diff.defined[s] ? diff.difference_at(y, s) : 0.0,
                      diff.defined[s] != 0});

  DisparityReport ratio = disparity_ratio(table, ds.y_pos, ds.s0);
  for (std::size_t s = 0; s < ratio.sensitive_cells; ++s)
    rows.push_back({ds.label, to_string(method), replicate,
                    metric_prefix + "disparity_ratio",
                    schema.feature(0).categories[ds.y_pos],
                    sensitive_profile_name(s_layout, s),
                    ratio.defined[s] ? ratio.ratio[s] : 0.0, ratio.defined[s] != 0});
}

std::vector<ResultRow> run_replicate(const ExperimentConfig& cfg,
                                     const DatasetContext& ds, std::size_t ds_index,
                                     std::uint32_t replicate) {
  std::vector<ResultRow> rows;

  CountTable train = ds.counts;  // replaced below
  JointTable f_test = ds.empirical;
  if (cfg.pipeline == Pipeline::adult) {
    auto [tr, te] = train_test_split(
        ds.counts, cfg.test_fraction,
        derive_seed(cfg.seed, ds_index, replicate, kSplitTag));
    train = std::move(tr);
    f_test = normalize(te);
  } else {
    const std::uint64_t n = ds.counts.total();
    train = std::move(sample_counts(
        ds.empirical, {n, derive_seed(cfg.seed, ds_index, replicate, kTrainTag), 1})[0]);
    f_test = normalize(sample_counts(
        ds.empirical, {n, derive_seed(cfg.seed, ds_index, replicate, kTestTag), 1})[0]);
  }

  const JointTable f_train = normalize(train);
  const SupportMask mask = SupportMask::from_empirical(f_train, cfg.support_mode);
  const JointTable f_reg =
      pseudo_count_regularize(f_train, train.total(), cfg.lambda, mask);
  const ConstraintSet pur_set = reduce(build_constraints(f_reg, ConstraintMode::pur), mask);

  for (Method method : kAllMethods) {
    JointTable q = f_reg;
    switch (method) {
      case Method::raw:
        break;
      case Method::p:
        q = project(f_reg, reduce(build_constraints(f_reg, ConstraintMode::p), mask),
                    cfg.solver)
                .table;
        break;
      case Method::pu:
        q = project(f_reg, reduce(build_constraints(f_reg, ConstraintMode::pu), mask),
                    cfg.solver)
                .table;
        break;
      case Method::pur:
        q = project(f_reg, pur_set, cfg.solver).table;
        break;
      case Method::pur_uniform:
        q = project(uniform_reference(f_reg.schema(), mask), pur_set, cfg.solver).table;
        break;
    }

    Prediction pred = natural_prediction(q, f_test, cfg.fallback);
    rows.push_back({ds.label, to_string(method), replicate, "parity_residual", "", "",
                    parity_residual(pred.table), true});
    rows.push_back({ds.label, to_string(method), replicate, "utility_error", "", "",
                    utility_error(f_test, pred.table), true});
    rows.push_back({ds.label, to_string(method), replicate, "prediction_fallback_profiles",
                    "", "", static_cast<double>(pred.fallback_profiles), true});
    append_disparity_rows(rows, ds, replicate, method, pred.table, "");

    if (cfg.pipeline == Pipeline::adult) {
      const std::uint64_t n =
          cfg.synthetic_samples ? cfg.synthetic_samples : ds.counts.total();
      CountTable synthetic = std::move(sample_counts(
          q, {n,
              derive_seed(cfg.seed, ds_index, replicate,
                          kSyntheticTagBase + static_cast<std::uint64_t>(method)),
              1})[0]);
      append_disparity_rows(rows, ds, replicate, method, normalize(synthetic),
                            "synthetic_");
    }
  }
  return rows;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.inputs.empty()) throw ArgumentError("experiment needs at least one input");
  if (config.replicates == 0) throw ArgumentError("replicates must be at least 1");
  if (config.reference_profile.empty())
    throw ArgumentError("experiment needs a reference sensitive profile");
  if (config.positive_outcome.empty())
    throw ArgumentError("experiment needs a positive outcome category");

  std::vector<DatasetContext> datasets;
  ExperimentResult result;
  for (const auto& [label, path] : config.inputs) {
    IngestResult ingested = ingest_csv(path, config.ingest);
    const auto& schema = ingested.counts.schema();
    MarginalLayout s_layout(schema, schema->protected_subset());
    DatasetContext ds{label, ingested.counts, normalize(ingested.counts),
                      s_layout.index_of(config.reference_profile),
                      schema->category_index(0, config.positive_outcome)};
    result.dataset_sizes.emplace_back(label, ingested.counts.total());
    datasets.push_back(std::move(ds));
  }

  const std::size_t tasks = datasets.size() * config.replicates;
  std::vector<std::vector<ResultRow>> buckets(tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= tasks) return;
      const std::size_t ds_index = task / config.replicates;
      const std::uint32_t replicate =
          static_cast<std::uint32_t>(task % config.replicates);
      try {
        buckets[task] =
            run_replicate(config, datasets[ds_index], ds_index, replicate);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  unsigned thread_count = config.threads ? config.threads
                                         : std::max(1u, std::thread::hardware_concurrency());
  thread_count = static_cast<unsigned>(
      std::min<std::size_t>(thread_count, tasks));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  for (auto& bucket : buckets)
    result.rows.insert(result.rows.end(), std::make_move_iterator(bucket.begin()),
                       std::make_move_iterator(bucket.end()));
  return result;
}

void write_result_csv(const std::filesystem::path& path,
                      const std::vector<ResultRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  std::string line = "dataset,method,replicate,metric,y,s_profile,value\n";
  out << line;
  char value_buf[40];
  for (const auto& row : rows) {
    line.clear();
    write_csv_field(line, row.dataset);
    line.push_back(',');
    write_csv_field(line, row.method);
    line.push_back(',');
    line += std::to_string(row.replicate);
    line.push_back(',');
    write_csv_field(line, row.metric);
    line.push_back(',');
    write_csv_field(line, row.y);
    line.push_back(',');
    write_csv_field(line, row.s_profile);
    line.push_back(',');
    if (row.defined) {
      std::snprintf(value_buf, sizeof(value_buf), "%.17g", row.value);
      line += value_buf;
    }
    line.push_back('\n');
    out << line;
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace purfit
