// pipeline/run.h

// Copyright 2026  zrsw authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef ZRSW_PIPELINE_RUN_H_
#define ZRSW_PIPELINE_RUN_H_

#include <filesystem>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "zrsw/pipeline/config.h"

namespace zrsw {

// Stages run in a fixed order: corpus, mfcc, vtln, model, eval. Each writes
// its artifacts under config.output:
//
//   corpus.tsv            manifest of the corpus actually used
//   features/<set>/       one .zrsf file per evaluation utterance
//   vtln.gmm, warps.txt   when vtln.enabled
//   model.zrsn            when model.type != none
//   report.json           evaluation results, stamped with hash and seed
//   pipeline.log          one line per stage with its wall-clock time
//
// A failing stage throws Error naming the stage; artifacts of the stages
// before it stay on disk.
struct PipelineResult {
  std::string config_hash;
  nlohmann::json report;
  std::map<std::string, double> stage_seconds;
};

PipelineResult RunPipeline(const ExperimentConfig &config);

}  // namespace zrsw

#endif  // ZRSW_PIPELINE_RUN_H_
