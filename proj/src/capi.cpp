// Copyright 2026 The Covernet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "covernet/covernet.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "covernet/datasets.hpp"
#include "covernet/error.hpp"
#include "covernet/eval.hpp"
#include "covernet/matrix.hpp"
#include "covernet/pipeline.hpp"
#include "covernet/prototype.hpp"

struct covernet_settings {
  covernet::RunSettings value;
};

struct covernet_dataset {
  covernet::Dataset value;
};

struct covernet_partition {
  covernet::Partition value;
};

namespace {

thread_local std::string last_error;

covernet_status to_status(covernet::ErrorCode code) {
  switch (code) {
    case covernet::ErrorCode::kInvalidInput: return COVERNET_ERR_INVALID_INPUT;
    case covernet::ErrorCode::kIo: return COVERNET_ERR_IO;
    case covernet::ErrorCode::kParse: return COVERNET_ERR_PARSE;
    case covernet::ErrorCode::kInsufficientData: return COVERNET_ERR_INSUFFICIENT_DATA;
  }
  return COVERNET_ERR_INTERNAL;
}

template <typename F>
covernet_status guarded(F&& body) {
  try {
    body();
    return COVERNET_OK;
  } catch (const covernet::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return COVERNET_ERR_INTERNAL;
}

void require_arg(bool ok, const char* what) {
  if (!ok) covernet::fail(covernet::ErrorCode::kInvalidInput, what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* covernet_version(void) { return "1.0.0"; }

const char* covernet_last_error(void) { return last_error.c_str(); }

void covernet_string_free(char* s) { std::free(s); }

covernet_status covernet_settings_new(covernet_settings** out) {
  return guarded([&] {
    require_arg(out != nullptr, "null output handle");
    *out = new covernet_settings();
  });
}

void covernet_settings_free(covernet_settings* s) { delete s; }

covernet_status covernet_settings_set(covernet_settings* s, const char* key,
                                      const char* value) {
  return guarded([&] {
    require_arg(s && key && value, "null argument");
    covernet::apply_setting(s->value, key, value);
  });
}

covernet_status covernet_settings_load_config(covernet_settings* s,
                                              const char* path) {
  return guarded([&] {
    require_arg(s && path, "null argument");
    covernet::apply_config_text(s->value, covernet::read_file(path));
  });
}

covernet_status covernet_settings_load_grid_best(covernet_settings* s,
                                                 const char* path,
                                                 covernet_objective objective) {
  return guarded([&] {
    require_arg(s && path, "null argument");
    covernet::apply_grid_best(s->value, covernet::read_file(path),
                              objective == COVERNET_OBJECTIVE_MAP
                                  ? covernet::Objective::kMap
                                  : covernet::Objective::kF);
  });
}

covernet_status covernet_dataset_create(size_t n, const double* weights,
                                        const double* durations,
                                        const int* group_of,
                                        const unsigned char* is_original,
                                        covernet_dataset** out) {
  return guarded([&] {
    require_arg(out && weights && durations, "null argument");
    covernet::Collection c;
    c.durations.assign(durations, durations + n);
    for (size_t i = 0; i < n; ++i) {
      c.group_of.push_back(group_of ? group_of[i] : static_cast<int>(i));
      c.is_original.push_back(is_original ? (is_original[i] != 0) : 0);
    }
    for (int g : c.group_of) require_arg(g >= 0, "group ids must be non-negative");
    c.validate();
    c.group_of = covernet::Partition::from_labels(c.group_of).assignment();
    covernet::DissimilarityMatrix m(static_cast<int>(n),
                                    std::vector<double>(weights, weights + n * n),
                                    c.durations);
    *out = new covernet_dataset{{std::move(c), std::move(m)}};
  });
}

covernet_status covernet_dataset_from_qmax(size_t n, const double* qmax,
                                           const double* durations,
                                           covernet_dataset** out) {
  return guarded([&] {
    require_arg(out && qmax && durations, "null argument");
    covernet::SimilarityInput input{static_cast<int>(n),
                                    std::vector<double>(qmax, qmax + n * n),
                                    std::vector<double>(durations, durations + n)};
    covernet::DissimilarityMatrix m = covernet::from_qmax(input);
    covernet::Collection c;
    c.durations = input.durations;
    c.is_original.assign(n, 0);
    for (size_t i = 0; i < n; ++i) c.group_of.push_back(static_cast<int>(i));
    *out = new covernet_dataset{{std::move(c), std::move(m)}};
  });
}

covernet_status covernet_dataset_generate(const covernet_settings* s,
                                          int n_groups, uint64_t seed,
                                          covernet_dataset** out) {
  return guarded([&] {
    require_arg(s && out, "null argument");
    *out = new covernet_dataset{
        covernet::generate_collection(s->value.generator, n_groups, seed)};
  });
}

covernet_status covernet_dataset_load(const char* matrix_path,
                                      const char* durations_path,
                                      const char* labels_path,
                                      covernet_dataset** out) {
  return guarded([&] {
    require_arg(matrix_path && durations_path && labels_path && out, "null argument");
    *out = new covernet_dataset{
        covernet::load_collection(matrix_path, durations_path, labels_path)};
  });
}

covernet_status covernet_dataset_save(const covernet_dataset* d,
                                      const char* matrix_path,
                                      const char* durations_path,
                                      const char* labels_path) {
  return guarded([&] {
    require_arg(d && matrix_path && durations_path && labels_path, "null argument");
    covernet::save_collection(d->value, matrix_path, durations_path, labels_path);
  });
}

covernet_status covernet_dataset_sample(const covernet_dataset* d,
                                        const char* setup, uint64_t seed,
                                        int trial, covernet_dataset** out) {
  return guarded([&] {
    require_arg(d && setup && out, "null argument");
    covernet::SetupSpec spec = covernet::setup_preset(setup);
    spec.seed = seed;
    require_arg(trial >= 0, "trial must be non-negative");
    *out = new covernet_dataset{covernet::sample_setup(d->value, spec, trial)};
  });
}

void covernet_dataset_free(covernet_dataset* d) { delete d; }

size_t covernet_dataset_size(const covernet_dataset* d) {
  return d ? static_cast<size_t>(d->value.matrix.size()) : 0;
}

covernet_status covernet_dataset_weight(const covernet_dataset* d, size_t i,
                                        size_t j, double* out) {
  return guarded([&] {
    require_arg(d && out, "null argument");
    const size_t n = static_cast<size_t>(d->value.matrix.size());
    require_arg(i < n && j < n, "index out of range");
    *out = d->value.matrix(static_cast<int>(i), static_cast<int>(j));
  });
}

covernet_status covernet_dataset_truth(const covernet_dataset* d,
                                       covernet_partition** out) {
  return guarded([&] {
    require_arg(d && out, "null argument");
    *out = new covernet_partition{d->value.collection.truth()};
  });
}

covernet_status covernet_detect(const covernet_dataset* d,
                                const covernet_settings* s,
                                const char* algorithm,
                                covernet_partition** out) {
  return guarded([&] {
    require_arg(d && s && algorithm && out, "null argument");
    const covernet::Algorithm a = covernet::parse_algorithm(algorithm);
    covernet::DetectorConfig cfg = s->value.config_for(a);
    cfg.community.seed = s->value.seed;
    *out = new covernet_partition{
        covernet::detect(a, covernet::symmetrize(d->value.matrix), cfg)};
  });
}

void covernet_partition_free(covernet_partition* p) { delete p; }

size_t covernet_partition_size(const covernet_partition* p) {
  return p ? static_cast<size_t>(p->value.size()) : 0;
}

size_t covernet_partition_group_count(const covernet_partition* p) {
  return p ? static_cast<size_t>(p->value.group_count()) : 0;
}

covernet_status covernet_partition_assignment(const covernet_partition* p,
                                              int* out, size_t capacity) {
  return guarded([&] {
    require_arg(p && out, "null argument");
    const auto& a = p->value.assignment();
    require_arg(capacity >= a.size(), "output buffer too small");
    std::copy(a.begin(), a.end(), out);
  });
}

covernet_status covernet_evaluate(const covernet_dataset* d,
                                  const covernet_partition* p, double c,
                                  covernet_eval_result* out) {
  return guarded([&] {
    require_arg(d && p && out, "null argument");
    const auto sym = covernet::symmetrize(d->value.matrix);
    const auto truth = d->value.collection.truth();
    const covernet::EvalReport r = covernet::evaluate(sym, p->value, truth, c);
    out->mean_precision = r.mean_precision;
    out->mean_recall = r.mean_recall;
    out->f = r.f;
    out->map = r.map;
    out->original_map = covernet::map_score(sym, truth);
    out->delta = r.delta;
  });
}

covernet_status covernet_prototype(const covernet_dataset* d, const int* members,
                                   size_t count, covernet_prototype_method method,
                                   int* out) {
  return guarded([&] {
    require_arg(d && members && out, "null argument");
    const auto subnet = covernet::make_subnet(
        d->value.matrix, std::vector<int>(members, members + count));
    *out = method == COVERNET_PROTOTYPE_MST ? covernet::mst_prototype(subnet)
                                            : covernet::closeness_prototype(subnet);
  });
}

covernet_status covernet_run_sweep(const covernet_settings* s, char** csv) {
  return guarded([&] {
    require_arg(s && csv, "null argument");
    const auto universe = covernet::load_universe(
        s->value, covernet::groups_needed(s->value.setups));
    *csv = copy_string(covernet::run_sweep(universe, s->value));
  });
}

covernet_status covernet_run_detect_eval(const covernet_settings* s, char** csv,
                                         char** timing) {
  return guarded([&] {
    require_arg(s && csv, "null argument");
    const auto setups = s->value.setups.empty()
                            ? covernet::detect_eval_default_setups()
                            : s->value.setups;
    const auto universe =
        covernet::load_universe(s->value, covernet::groups_needed(setups));
    const auto rows = covernet::run_detect_eval(universe, s->value);
    std::string text = covernet::detect_eval_to_csv(rows);
    std::string report = covernet::timing_report(rows);
    *csv = copy_string(text);
    if (timing) *timing = copy_string(report);
  });
}

covernet_status covernet_run_grid(const covernet_settings* s, char** grid_csv,
                                  char** best_csv) {
  return guarded([&] {
    require_arg(s && grid_csv && best_csv, "null argument");
    const auto setups = s->value.setups.empty() ? covernet::grid_default_setups()
                                                : s->value.setups;
    const auto universe =
        covernet::load_universe(s->value, covernet::groups_needed(setups));
    const auto result = covernet::run_grid(universe, s->value);
    *grid_csv = copy_string(covernet::grid_to_csv(result.points));
    *best_csv = copy_string(covernet::grid_best_to_csv(result));
  });
}

covernet_status covernet_run_prototype(const covernet_settings* s, char** csv) {
  return guarded([&] {
    require_arg(s && csv, "null argument");
    const auto universe = covernet::load_universe(s->value, 0);
    *csv = copy_string(covernet::run_prototype(universe, s->value));
  });
}

covernet_status covernet_run_generate(const covernet_settings* s,
                                      const char* out_dir) {
  return guarded([&] {
    require_arg(s && out_dir, "null argument");
    // Without named setups, size the collection for every preset.
    const auto setups =
        s->value.setups.empty() ? covernet::setup_names() : s->value.setups;
    const auto universe =
        covernet::load_universe(s->value, covernet::groups_needed(setups));
    const std::string dir(out_dir);
    covernet::save_collection(universe, dir + "/matrix.txt", dir + "/durations.txt",
                              dir + "/labels.txt");
  });
}

}  // extern "C"
