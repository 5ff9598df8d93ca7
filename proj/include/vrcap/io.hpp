#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vrcap/grpo.hpp"
#include "vrcap/policy.hpp"
#include "vrcap/retrieval.hpp"
#include "vrcap/taskgen.hpp"

namespace vrcap {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dataset: one JSON object per line, see FORMATS.md.
std::string record_to_json(const TaskRecord& r);
TaskRecord record_from_json(const std::string& line);
void write_dataset(const std::string& path, const std::vector<TaskRecord>& records);
std::vector<TaskRecord> read_dataset(const std::string& path);

struct ArtifactStamp {
  std::string config_hash;
  std::uint64_t seed = 0;
};

void write_manifest(const std::string& path, const DatasetManifest& m, const ArtifactStamp& stamp,
                    std::uint64_t vocab_hash, const std::vector<std::string>& files);
std::string read_manifest_config_hash(const std::string& path);

// Checkpoint: one JSON header line, then V*F little-endian float64 values.
struct CheckpointHeader {
  int vocab_size = 0;
  int feature_dim = 0;
  std::uint64_t vocab_hash = 0;
  std::string config_hash;
  std::uint64_t seed = 0;
  int step = 0;
};
void write_checkpoint(const std::string& path, const PolicyParams& p, const CheckpointHeader& h);
PolicyParams read_checkpoint(const std::string& path, CheckpointHeader* header = nullptr);
/// Fingerprint of the parameter bytes.
std::string params_hash(const PolicyParams& p);

/// Column order documented in FORMATS.md.
std::string trainlog_header();
std::string trainlog_row(const TrainLogRow& row);
void write_trainlog(std::ostream& os, const TrainLog& log, const ArtifactStamp& stamp);

void write_database(const std::string& path, const std::vector<ConceptRecord>& records);
std::vector<ConceptRecord> read_database(const std::string& path);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace vrcap
